#include "trichokinetics/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "json.hpp"

#include "trichokinetics/output.hpp"

namespace tricho {

namespace {

using nlohmann::json;

constexpr double kClosureTol = 5e-3;
constexpr double kIntegralTol = 1e-2;
constexpr double kVerdictSlack = 1e-12;

Scenario make_validation_1() {
    ModelParams params(0.176, 0.2, 0.048, 1.19, 0.2, 0.0047, 0.002,
                       GrowthLaw::monod(0.096, 11.27));
    Scenario sc{"validation-1", params, State{45.0, 15.0, 50.0, 0.0},
                SimulationConfig{}};
    return sc;
}

Scenario make_validation_2() {
    ModelParams params(0.176, 0.2, 0.048, 1.19, 0.2, 0.0047, 0.002,
                       GrowthLaw::monod(0.2, 35.55));
    Scenario sc{"validation-2", params, State{17.0, 5.0, 9.5, 1.5},
                SimulationConfig{}};
    return sc;
}

double json_number(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw std::invalid_argument("scenario: missing or non-numeric key '" + where +
                                    "." + key + "'");
    return j.at(key).get<double>();
}

Scenario scenario_from_json(const json& j, const std::string& fallback_name) {
    if (!j.is_object())
        throw std::invalid_argument("scenario: top-level value must be an object");
    if (!j.contains("params") || !j.at("params").is_object())
        throw std::invalid_argument("scenario: missing object key 'params'");
    if (!j.contains("initial") || !j.at("initial").is_object())
        throw std::invalid_argument("scenario: missing object key 'initial'");

    const json& pj = j.at("params");
    ModelParams params(json_number(pj, "params", "K_H"),
                       json_number(pj, "params", "alpha"),
                       json_number(pj, "params", "k_d"),
                       json_number(pj, "params", "Y_Bs"),
                       json_number(pj, "params", "inv_Y_Ps"),
                       json_number(pj, "params", "m_s"),
                       json_number(pj, "params", "m_P"),
                       GrowthLaw::monod(json_number(pj, "params", "mu_max"),
                                        json_number(pj, "params", "k_s")));

    const json& ij = j.at("initial");
    State initial{json_number(ij, "initial", "X"), json_number(ij, "initial", "B"),
                  json_number(ij, "initial", "s"), json_number(ij, "initial", "P")};

    SimulationConfig config;
    if (j.contains("config")) {
        const json& cj = j.at("config");
        if (!cj.is_object())
            throw std::invalid_argument("scenario: key 'config' must be an object");
        if (cj.contains("step")) config.step = json_number(cj, "config", "step");
        if (cj.contains("t_end")) config.t_end = json_number(cj, "config", "t_end");
        if (cj.contains("record_stride"))
            config.record_stride =
                static_cast<int>(json_number(cj, "config", "record_stride"));
        if (cj.contains("steady_tol"))
            config.steady_tol = json_number(cj, "config", "steady_tol");
        if (cj.contains("biomass_floor"))
            config.biomass_floor = json_number(cj, "config", "biomass_floor");
        if (cj.contains("clamp_eps"))
            config.clamp_eps = json_number(cj, "config", "clamp_eps");
    }

    std::string name = fallback_name;
    if (j.contains("name")) {
        if (!j.at("name").is_string())
            throw std::invalid_argument("scenario: key 'name' must be a string");
        name = j.at("name").get<std::string>();
    }
    if (name.empty())
        throw std::invalid_argument("scenario: name must not be empty");

    return Scenario{std::move(name), params, initial, config};
}

json parse_json_text(const std::string& text, const char* what) {
    try {
        return json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string(what) + ": " + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw IoError("cannot read file: " + path);
    return buf.str();
}

std::string file_stem(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& f) {
    double sum = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i)
        sum += 0.5 * (t[i] - t[i - 1]) * (f[i] + f[i - 1]);
    return sum;
}

double rel_diff(double value, double reference) {
    return std::fabs(value - reference) / std::max(std::fabs(reference), 1e-12);
}

} // namespace

std::vector<Scenario> builtin_scenarios() {
    return {make_validation_1(), make_validation_2()};
}

std::vector<SweepSpec> builtin_sweeps() {
    SweepSpec x0{"x0-sweep", make_validation_1(), "initial.X",
                 {45.0, 90.0, 180.0, 360.0}, {}};

    Scenario kd_base = make_validation_1();
    kd_base.name = "kd-sweep-base";
    apply_parameter(kd_base, "params.mu_max", 0.2);
    SweepSpec kd{"kd-sweep", kd_base, "params.k_d", {0.03, 0.09, 0.12, 0.18}, {}};

    return {std::move(x0), std::move(kd)};
}

std::optional<Scenario> find_builtin_scenario(const std::string& name) {
    for (auto& sc : builtin_scenarios())
        if (sc.name == name) return sc;
    return std::nullopt;
}

std::optional<SweepSpec> find_builtin_sweep(const std::string& name) {
    for (auto& sw : builtin_sweeps())
        if (sw.name == name) return sw;
    return std::nullopt;
}

Scenario parse_scenario(const std::string& text, const std::string& fallback_name) {
    return scenario_from_json(parse_json_text(text, "scenario"), fallback_name);
}

SweepSpec parse_sweep(const std::string& text, const std::string& fallback_name) {
    const json j = parse_json_text(text, "sweep");
    if (!j.is_object())
        throw std::invalid_argument("sweep: top-level value must be an object");

    std::string name = fallback_name;
    if (j.contains("name")) {
        if (!j.at("name").is_string())
            throw std::invalid_argument("sweep: key 'name' must be a string");
        name = j.at("name").get<std::string>();
    }
    if (name.empty())
        throw std::invalid_argument("sweep: name must not be empty");

    if (!j.contains("base"))
        throw std::invalid_argument("sweep: missing key 'base'");
    const json& bj = j.at("base");
    std::optional<Scenario> base;
    if (bj.is_string()) {
        base = find_builtin_scenario(bj.get<std::string>());
        if (!base)
            throw std::invalid_argument("sweep: unknown built-in scenario '" +
                                        bj.get<std::string>() + "'");
    } else if (bj.is_object()) {
        base = scenario_from_json(bj, name + "-base");
    } else {
        throw std::invalid_argument(
            "sweep: key 'base' must be a scenario name or object");
    }

    if (!j.contains("path") || !j.at("path").is_string())
        throw std::invalid_argument("sweep: missing string key 'path'");
    std::string path = j.at("path").get<std::string>();

    if (!j.contains("values") || !j.at("values").is_array() || j.at("values").empty())
        throw std::invalid_argument("sweep: key 'values' must be a non-empty array");
    std::vector<double> values;
    for (const auto& v : j.at("values")) {
        if (!v.is_number())
            throw std::invalid_argument("sweep: 'values' entries must be numbers");
        values.push_back(v.get<double>());
    }

    std::vector<std::string> labels;
    if (j.contains("labels")) {
        if (!j.at("labels").is_array())
            throw std::invalid_argument("sweep: key 'labels' must be an array");
        for (const auto& v : j.at("labels")) {
            if (!v.is_string())
                throw std::invalid_argument("sweep: 'labels' entries must be strings");
            labels.push_back(v.get<std::string>());
        }
        if (labels.size() != values.size())
            throw std::invalid_argument("sweep: 'labels' must match 'values' in length");
    }
    return SweepSpec{std::move(name), std::move(*base), std::move(path),
                     std::move(values), std::move(labels)};
}

Scenario load_scenario_file(const std::string& path) {
    return parse_scenario(read_file(path), file_stem(path));
}

SweepSpec load_sweep_file(const std::string& path) {
    return parse_sweep(read_file(path), file_stem(path));
}

void apply_parameter(Scenario& scenario, const std::string& path, double value) {
    const auto dot = path.find('.');
    if (dot == std::string::npos)
        throw std::invalid_argument("unknown parameter path '" + path + "'");
    const std::string head = path.substr(0, dot);
    const std::string tail = path.substr(dot + 1);

    if (head == "initial") {
        if (tail == "X") scenario.initial.X = value;
        else if (tail == "B") scenario.initial.B = value;
        else if (tail == "s") scenario.initial.s = value;
        else if (tail == "P") scenario.initial.P = value;
        else throw std::invalid_argument("unknown parameter path '" + path + "'");
        return;
    }
    if (head == "params") {
        ModelParams& p = scenario.params;
        if (tail == "K_H") p.K_H = value;
        else if (tail == "alpha") p.alpha = value;
        else if (tail == "k_d") p.k_d = value;
        else if (tail == "Y_Bs") p.Y_Bs = value;
        else if (tail == "inv_Y_Ps") p.inv_Y_Ps = value;
        else if (tail == "m_s") p.m_s = value;
        else if (tail == "m_P") p.m_P = value;
        else if (tail == "mu_max")
            p.growth = GrowthLaw::monod(value, p.growth.k_s());
        else if (tail == "k_s")
            p.growth = GrowthLaw::monod(p.growth.mu_max(), value);
        else throw std::invalid_argument("unknown parameter path '" + path + "'");
        p.check_hard_constraints();
        return;
    }
    if (head == "config") {
        SimulationConfig& c = scenario.config;
        if (tail == "step") c.step = value;
        else if (tail == "t_end") c.t_end = value;
        else if (tail == "record_stride") c.record_stride = static_cast<int>(value);
        else if (tail == "steady_tol") c.steady_tol = value;
        else if (tail == "biomass_floor") c.biomass_floor = value;
        else if (tail == "clamp_eps") c.clamp_eps = value;
        else throw std::invalid_argument("unknown parameter path '" + path + "'");
        return;
    }
    throw std::invalid_argument("unknown parameter path '" + path + "'");
}

std::vector<Scenario> expand_sweep(const SweepSpec& spec) {
    if (spec.values.empty())
        throw std::invalid_argument("sweep '" + spec.name + "' has no values");
    if (!spec.labels.empty() && spec.labels.size() != spec.values.size())
        throw std::invalid_argument("sweep '" + spec.name +
                                    "': labels must match values in length");

    const std::string leaf = spec.path.substr(spec.path.find('.') + 1);
    std::vector<Scenario> out;
    out.reserve(spec.values.size());
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
        Scenario sc = spec.base;
        apply_parameter(sc, spec.path, spec.values[i]);
        std::string label;
        if (!spec.labels.empty()) {
            label = spec.labels[i];
        } else {
            std::ostringstream os;
            os << leaf << "-" << spec.values[i];
            label = os.str();
        }
        sc.name = spec.name + "[" + label + "]";
        out.push_back(std::move(sc));
    }
    return out;
}

RunResult run_scenario(const Scenario& scenario) {
    RunResult out;
    out.scenario = scenario;
    RunSummary& sum = out.summary;
    sum.name = scenario.name;
    sum.hypothesis_warnings = validate_hypotheses(scenario.params).warnings();

    SimulationConfig cfg = scenario.config;
    cfg.initial = scenario.initial;
    out.trajectory = integrate(cfg, scenario.params);
    const Trajectory& traj = out.trajectory;

    const State& fin = traj.final_state();
    sum.s_star = fin.s;
    sum.p_star = fin.P;
    sum.x_final = fin.X;
    sum.b_final = fin.B;
    sum.t_converged = traj.t_final;
    sum.steady_state_reached = traj.steady_state_reached;

    sum.b_max = 0.0;
    sum.s_max = 0.0;
    for (const State& y : traj.states) {
        sum.b_max = std::max(sum.b_max, y.B);
        sum.s_max = std::max(sum.s_max, y.s);
    }

    sum.lambda = attractor_interval(scenario.params);
    sum.membership_ok =
        scenario.initial.B > 0.0
            ? (sum.s_star >= -kVerdictSlack &&
               sum.s_star <= sum.lambda * (1.0 + kVerdictSlack) + kVerdictSlack)
            : true;

    try {
        const LimitPrediction pred =
            predict_limits(scenario.initial, sum.s_star, scenario.params);
        sum.s_star_upper_bound = pred.s_star_upper_bound;
        sum.p_star_predicted = pred.p_star;
        sum.closure_rel = rel_diff(pred.p_star, sum.p_star);
        sum.closure_ok = sum.closure_rel <= kClosureTol;
        sum.bound_ok = !pred.s_star_upper_bound ||
                       sum.s_star <= *pred.s_star_upper_bound *
                                             (1.0 + kVerdictSlack) +
                                         kVerdictSlack;

        std::vector<double> b_col(traj.states.size());
        std::vector<double> mub_col(traj.states.size());
        const GrowthLaw& growth = scenario.params.growth;
        for (std::size_t i = 0; i < traj.states.size(); ++i) {
            b_col[i] = traj.states[i].B;
            mub_col[i] =
                growth.rate_unchecked(std::max(traj.states[i].s, 0.0)) *
                traj.states[i].B;
        }
        sum.int_B_predicted = pred.int_B;
        sum.int_B_observed = trapezoid(traj.times, b_col);
        sum.int_muB_predicted = pred.int_muB;
        sum.int_muB_observed = trapezoid(traj.times, mub_col);
        sum.integrals_ok =
            rel_diff(sum.int_B_observed, sum.int_B_predicted) <= kIntegralTol &&
            rel_diff(sum.int_muB_observed, sum.int_muB_predicted) <= kIntegralTol;
    } catch (const std::domain_error&) {
        // Closed-form limits inapplicable (non-positive denominator); the
        // prediction fields stay NaN and the related verdicts false.
    }

    return out;
}

std::vector<RunResult> run_sweep(const SweepSpec& spec) {
    const std::vector<Scenario> scenarios = expand_sweep(spec);

    std::vector<std::future<RunResult>> futures;
    futures.reserve(scenarios.size());
    for (const Scenario& sc : scenarios)
        futures.push_back(
            std::async(std::launch::async, [sc]() { return run_scenario(sc); }));

    std::vector<RunResult> results;
    results.reserve(scenarios.size());
    for (std::size_t i = 0; i < futures.size(); ++i) {
        try {
            results.push_back(futures[i].get());
        } catch (const std::exception& e) {
            RunResult failed;
            failed.scenario = scenarios[i];
            failed.summary.name = scenarios[i].name;
            failed.summary.error = e.what();
            results.push_back(std::move(failed));
        }
    }
    return results;
}

} // namespace tricho
