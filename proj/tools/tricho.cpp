#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "trichokinetics/acceptance.hpp"
#include "trichokinetics/output.hpp"
#include "trichokinetics/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

struct CommonOptions {
    std::optional<double> step;
    std::optional<double> horizon;
    std::optional<double> steady_tol;
    std::string out_dir;
    std::string format{"table"};
    bool with_z{false};
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--step", opt.step, "Fixed integration step [h]")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--horizon", opt.horizon, "Simulation horizon [h]")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--steady-tol", opt.steady_tol,
                    "Early-stop threshold on the derivative max-norm")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--out", opt.out_dir,
                    "Directory for trajectory CSVs and the summary JSON");
    cmd->add_option("--format", opt.format, "Summary format on stdout")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    cmd->add_flag("--with-z", opt.with_z,
                  "Add the decreasing functional Z as a CSV column");
}

void apply_overrides(tricho::Scenario& sc, const CommonOptions& opt) {
    if (opt.step) sc.config.step = *opt.step;
    if (opt.horizon) sc.config.t_end = *opt.horizon;
    if (opt.steady_tol) sc.config.steady_tol = *opt.steady_tol;
}

tricho::Scenario resolve_scenario(const std::string& ref) {
    if (auto builtin = tricho::find_builtin_scenario(ref)) return *builtin;
    if (std::filesystem::exists(ref)) return tricho::load_scenario_file(ref);
    throw std::invalid_argument("unknown scenario '" + ref +
                                "' (not a built-in name or readable file)");
}

tricho::SweepSpec resolve_sweep(const std::string& ref) {
    if (auto builtin = tricho::find_builtin_sweep(ref)) return *builtin;
    if (std::filesystem::exists(ref)) return tricho::load_sweep_file(ref);
    throw std::invalid_argument("unknown sweep '" + ref +
                                "' (not a built-in name or readable file)");
}

void list_builtins(std::ostream& os) {
    os << "built-in scenarios:\n";
    for (const auto& sc : tricho::builtin_scenarios())
        os << "  " << sc.name << "\n";
    os << "built-in sweeps:\n";
    for (const auto& sw : tricho::builtin_sweeps()) {
        os << "  " << sw.name << " (" << sw.path << " over";
        for (double v : sw.values) os << " " << v;
        os << ")\n";
    }
}

int emit(const std::vector<tricho::RunResult>& results,
         const std::string& collection_name, const CommonOptions& opt) {
    tricho::EmitOptions eo;
    eo.out_dir = opt.out_dir;
    eo.format = tricho::parse_summary_format(opt.format);
    eo.with_z = opt.with_z;
    tricho::emit_outputs(results, collection_name, eo, std::cout);

    for (const auto& r : results)
        if (r.summary.error) return kExitValidation;
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Batch-culture simulator for fungal decomposition kinetics: "
                 "growth on hydrolysed organic matter with enzyme production"};
    app.require_subcommand(0, 1);

    bool list_flag = false;
    app.add_flag("--list-scenarios", list_flag,
                 "List built-in scenarios and sweeps, then exit");

    std::string run_ref;
    CommonOptions run_opt;
    CLI::App* run_cmd =
        app.add_subcommand("run", "Simulate one scenario and report its limits");
    run_cmd->add_option("scenario", run_ref, "Built-in name or scenario file")
        ->required();
    add_common(run_cmd, run_opt);

    std::string sweep_ref;
    CommonOptions sweep_opt;
    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "Run a one-parameter family of scenarios");
    sweep_cmd->add_option("spec", sweep_ref, "Built-in name or sweep file")
        ->required();
    add_common(sweep_cmd, sweep_opt);

    CLI::App* check_cmd = app.add_subcommand(
        "check", "Run the full acceptance suite and report each criterion");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list_flag) {
            list_builtins(std::cout);
            return kExitOk;
        }
        if (run_cmd->parsed()) {
            tricho::Scenario sc = resolve_scenario(run_ref);
            apply_overrides(sc, run_opt);
            const tricho::RunResult result = tricho::run_scenario(sc);
            return emit({result}, sc.name, run_opt);
        }
        if (sweep_cmd->parsed()) {
            tricho::SweepSpec spec = resolve_sweep(sweep_ref);
            apply_overrides(spec.base, sweep_opt);
            const auto results = tricho::run_sweep(spec);
            return emit(results, spec.name, sweep_opt);
        }
        if (check_cmd->parsed()) {
            const auto results = tricho::acceptance::run_all(&std::cout);
            return tricho::acceptance::all_passed(results) ? kExitOk
                                                           : kExitValidation;
        }
        std::cout << app.help();
        return kExitOk;
    } catch (const tricho::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
