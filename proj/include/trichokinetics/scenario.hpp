#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "trichokinetics/analysis.hpp"
#include "trichokinetics/integrator.hpp"
#include "trichokinetics/model.hpp"

namespace tricho {

/// A named, fully specified run: kinetic parameters, initial pools and
/// simulation settings. config.initial is overwritten by `initial` when
/// the scenario is run.
struct Scenario {
    std::string name;
    ModelParams params;
    State initial{};
    SimulationConfig config{};
};

/// One-parameter family of runs derived from a base scenario. `path`
/// addresses the swept quantity ("initial.X", "params.k_d", "config.step",
/// ...); `labels`, when given, must match `values` in length.
struct SweepSpec {
    std::string name;
    Scenario base;
    std::string path;
    std::vector<double> values;
    std::vector<std::string> labels;
};

/**
 * @brief Everything a run reports: simulated limits, their closed-form
 * predictions, and the pass/fail verdicts tying the two together.
 *
 * Numeric fields default to NaN and stay NaN when `error` is set (a sweep
 * continues past individual failures and records them here).
 */
struct RunSummary {
    static constexpr double unset = std::numeric_limits<double>::quiet_NaN();

    std::string name;

    double s_star{unset};        ///< simulated substrate limit
    double p_star{unset};        ///< simulated product limit
    double x_final{unset};
    double b_final{unset};
    double b_max{unset};         ///< biomass peak over the run
    double s_max{unset};         ///< substrate peak over the run
    double t_converged{unset};   ///< time of the last committed step
    bool steady_state_reached{false};

    double lambda{unset};        ///< attractor interval endpoint
    std::optional<double> s_star_upper_bound;  ///< empty when alpha == 0
    double p_star_predicted{unset};
    double closure_rel{unset};   ///< |p_star_predicted - p_star| / max(|p_star|, eps)
    double int_B_predicted{unset};
    double int_B_observed{unset};  ///< trapezoid over the recorded samples
    double int_muB_predicted{unset};
    double int_muB_observed{unset};

    bool bound_ok{false};        ///< s_star <= upper bound (true when no bound)
    bool membership_ok{false};   ///< s_star in [0, lambda] (vacuous when B0 == 0)
    bool closure_ok{false};
    bool integrals_ok{false};

    std::vector<std::string> hypothesis_warnings;
    std::optional<std::string> error;  ///< set when the run itself failed
};

/// Summary plus the raw trajectory backing it and the fully resolved
/// inputs (absent only when the run could not be set up at all).
struct RunResult {
    RunSummary summary;
    Trajectory trajectory;
    std::optional<Scenario> scenario;
};

/// Ready-made scenarios: "validation-1" (organic-matter-rich batch
/// startup) and "validation-2" (low-substrate startup with a
/// faster-saturating growth law).
std::vector<Scenario> builtin_scenarios();

/// Ready-made sweeps: "x0-sweep" (initial organic matter ladder over
/// validation-1) and "kd-sweep" (mortality ladder at mu_max = 0.2).
std::vector<SweepSpec> builtin_sweeps();

/// Look up a built-in by name; empty optional when unknown.
std::optional<Scenario> find_builtin_scenario(const std::string& name);
std::optional<SweepSpec> find_builtin_sweep(const std::string& name);

/// Parse a scenario from JSON text (// comments allowed). `fallback_name`
/// is used when the document has no "name". Validation problems throw
/// std::invalid_argument with the offending key.
Scenario parse_scenario(const std::string& text, const std::string& fallback_name);
SweepSpec parse_sweep(const std::string& text, const std::string& fallback_name);

/// Load from a file; unreadable paths throw IoError (see output.hpp).
Scenario load_scenario_file(const std::string& path);
SweepSpec load_sweep_file(const std::string& path);

/// Set the quantity addressed by `path` ("initial.X", "params.k_d",
/// "config.step", ...). Unknown paths throw std::invalid_argument; the
/// resulting parameter set is re-validated.
void apply_parameter(Scenario& scenario, const std::string& path, double value);

/// Expand a sweep into its per-value scenarios (named "<sweep>/<label>").
std::vector<Scenario> expand_sweep(const SweepSpec& spec);

/**
 * @brief Simulate one scenario and assemble its summary.
 *
 * Runs the integrator, extracts the simulated limits, evaluates the
 * closed-form predictions at the simulated s_star and fills in the
 * consistency verdicts. Predictions requiring D > 0 or alpha > 0 degrade
 * gracefully (fields stay NaN / empty) rather than failing the run.
 */
RunResult run_scenario(const Scenario& scenario);

/// Run every sweep value (concurrently), preserving input order. A value
/// that fails yields a RunSummary with `error` set instead of aborting
/// the sweep.
std::vector<RunResult> run_sweep(const SweepSpec& spec);

} // namespace tricho
