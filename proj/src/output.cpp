#include "trichokinetics/output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "trichokinetics/analysis.hpp"

namespace tricho {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string num10(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string num6(double v) {
    if (std::isnan(v)) return "-";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string sanitize_filename(const std::string& name) {
    std::string out = name;
    for (char& c : out) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
        if (!ok) c = '_';
    }
    return out;
}

ordered_json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

ordered_json summary_to_json(const RunSummary& s) {
    ordered_json j;
    j["name"] = s.name;
    j["s_star"] = finite_or_null(s.s_star);
    j["p_star"] = finite_or_null(s.p_star);
    j["x_final"] = finite_or_null(s.x_final);
    j["b_final"] = finite_or_null(s.b_final);
    j["b_max"] = finite_or_null(s.b_max);
    j["s_max"] = finite_or_null(s.s_max);
    j["t_converged"] = finite_or_null(s.t_converged);
    j["steady_state_reached"] = s.steady_state_reached;
    j["lambda"] = finite_or_null(s.lambda);
    j["s_star_upper_bound"] =
        s.s_star_upper_bound ? finite_or_null(*s.s_star_upper_bound)
                             : ordered_json(nullptr);
    j["p_star_predicted"] = finite_or_null(s.p_star_predicted);
    j["closure_rel"] = finite_or_null(s.closure_rel);
    j["int_B_predicted"] = finite_or_null(s.int_B_predicted);
    j["int_B_observed"] = finite_or_null(s.int_B_observed);
    j["int_muB_predicted"] = finite_or_null(s.int_muB_predicted);
    j["int_muB_observed"] = finite_or_null(s.int_muB_observed);
    j["bound_ok"] = s.bound_ok;
    j["membership_ok"] = s.membership_ok;
    j["closure_ok"] = s.closure_ok;
    j["integrals_ok"] = s.integrals_ok;
    j["hypothesis_warnings"] = s.hypothesis_warnings;
    j["error"] = s.error ? ordered_json(*s.error) : ordered_json(nullptr);
    return j;
}

std::string csv_quote(const std::string& text) {
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string verdict_cell(const RunSummary& s) {
    if (s.error) return "error";
    std::string bad;
    auto mark = [&bad](bool ok, const char* label) {
        if (!ok) {
            if (!bad.empty()) bad += ",";
            bad += label;
        }
    };
    mark(s.bound_ok, "bound");
    mark(s.membership_ok, "membership");
    mark(s.closure_ok, "closure");
    mark(s.integrals_ok, "integrals");
    return bad.empty() ? "ok" : bad;
}

} // namespace

SummaryFormat parse_summary_format(const std::string& text) {
    if (text == "table") return SummaryFormat::table;
    if (text == "json") return SummaryFormat::json;
    if (text == "csv") return SummaryFormat::csv;
    throw std::invalid_argument("unknown summary format '" + text +
                                "' (expected table, json or csv)");
}

void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory,
                          const ModelParams& params, bool with_z) {
    os << "t,X,B,s,P";
    if (with_z) os << ",Z";
    os << "\n";
    for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
        const State& y = trajectory.states[i];
        os << num10(trajectory.times[i]) << ',' << num10(y.X) << ',' << num10(y.B)
           << ',' << num10(y.s) << ',' << num10(y.P);
        if (with_z) os << ',' << num10(lyapunov_Z(y, params));
        os << "\n";
    }
}

std::string summary_json(const std::vector<RunResult>& results) {
    if (results.size() == 1)
        return summary_to_json(results.front().summary).dump(2) + "\n";
    ordered_json j;
    for (const RunResult& r : results)
        j[r.summary.name] = summary_to_json(r.summary);
    return j.dump(2) + "\n";
}

std::string summary_csv(const std::vector<RunResult>& results) {
    std::ostringstream os;
    os << "name,s_star,p_star,x_final,b_final,b_max,s_max,t_converged,"
          "steady_state_reached,lambda,s_star_upper_bound,p_star_predicted,"
          "closure_rel,int_B_predicted,int_B_observed,int_muB_predicted,"
          "int_muB_observed,bound_ok,membership_ok,closure_ok,integrals_ok,"
          "hypothesis_warnings,error\n";
    for (const RunResult& r : results) {
        const RunSummary& s = r.summary;
        std::string warnings;
        for (const auto& w : s.hypothesis_warnings) {
            if (!warnings.empty()) warnings += "; ";
            warnings += w;
        }
        os << csv_quote(s.name) << ',' << num10(s.s_star) << ',' << num10(s.p_star)
           << ',' << num10(s.x_final) << ',' << num10(s.b_final) << ','
           << num10(s.b_max) << ',' << num10(s.s_max) << ',' << num10(s.t_converged)
           << ',' << (s.steady_state_reached ? "true" : "false") << ','
           << num10(s.lambda) << ','
           << (s.s_star_upper_bound ? num10(*s.s_star_upper_bound) : "") << ','
           << num10(s.p_star_predicted) << ',' << num10(s.closure_rel) << ','
           << num10(s.int_B_predicted) << ',' << num10(s.int_B_observed) << ','
           << num10(s.int_muB_predicted) << ',' << num10(s.int_muB_observed) << ','
           << (s.bound_ok ? "true" : "false") << ','
           << (s.membership_ok ? "true" : "false") << ','
           << (s.closure_ok ? "true" : "false") << ','
           << (s.integrals_ok ? "true" : "false") << ',' << csv_quote(warnings)
           << ',' << (s.error ? csv_quote(*s.error) : "") << "\n";
    }
    return os.str();
}

std::string summary_table(const std::vector<RunResult>& results) {
    constexpr int name_w = 22;
    const char* headers[] = {"s*",    "P*",    "P* pred", "closure", "B_max",
                             "s_max", "t_conv", "steady",  "checks"};

    std::ostringstream os;
    os << std::left << std::setw(name_w) << "scenario";
    for (const char* h : headers) os << ' ' << std::right << std::setw(11) << h;
    os << "\n";

    for (const RunResult& r : results) {
        const RunSummary& s = r.summary;
        std::string name = s.name;
        if (name.size() > name_w - 2) name = name.substr(0, name_w - 5) + "...";
        os << std::left << std::setw(name_w) << name << std::right;
        for (const std::string& cell :
             {num6(s.s_star), num6(s.p_star), num6(s.p_star_predicted),
              num6(s.closure_rel), num6(s.b_max), num6(s.s_max),
              num6(s.t_converged),
              std::string(s.steady_state_reached ? "yes" : "no"),
              verdict_cell(s)})
            os << ' ' << std::setw(11) << cell;
        os << "\n";
    }

    for (const RunResult& r : results) {
        for (const auto& w : r.summary.hypothesis_warnings)
            os << "warning (" << r.summary.name << "): " << w << "\n";
        if (r.summary.error)
            os << "error (" << r.summary.name << "): " << *r.summary.error << "\n";
    }
    return os.str();
}

std::vector<std::string> emit_outputs(const std::vector<RunResult>& results,
                                      const std::string& collection_name,
                                      const EmitOptions& options,
                                      std::ostream& os) {
    if (results.empty())
        throw std::invalid_argument("emit_outputs: no results to emit");

    switch (options.format) {
        case SummaryFormat::table: os << summary_table(results); break;
        case SummaryFormat::json: os << summary_json(results); break;
        case SummaryFormat::csv: os << summary_csv(results); break;
    }

    std::vector<std::string> written;
    if (options.out_dir.empty()) return written;

    const fs::path dir(options.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create output directory: " + dir.string());

    for (const RunResult& r : results) {
        if (r.summary.error || !r.scenario || r.trajectory.states.empty()) continue;
        const fs::path csv_path =
            dir / (sanitize_filename(r.summary.name) + ".csv");
        std::ofstream csv(csv_path);
        if (!csv)
            throw IoError("cannot write file: " + csv_path.string());
        write_trajectory_csv(csv, r.trajectory, r.scenario->params, options.with_z);
        if (!csv.good())
            throw IoError("cannot write file: " + csv_path.string());
        written.push_back(csv_path.string());
    }

    const fs::path json_path =
        dir / (sanitize_filename(collection_name) + ".summary.json");
    std::ofstream js(json_path);
    if (!js)
        throw IoError("cannot write file: " + json_path.string());
    js << summary_json(results);
    if (!js.good())
        throw IoError("cannot write file: " + json_path.string());
    written.push_back(json_path.string());
    return written;
}

} // namespace tricho
