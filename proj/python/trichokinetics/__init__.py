"""Batch kinetics of fungal growth on hydrolysed organic matter.

Four coupled pools (insoluble organic matter, biomass, soluble substrate,
enzymatic product) integrated with a fixed-step fourth-order scheme, plus
closed-form limit predictions, a decreasing functional, equilibrium spectra
and a conjugated coordinate system for the non-hyperbolic equilibria.
"""

from ._core import (
    CriterionResult,
    EigenReport,
    GrowthLaw,
    HypothesisCheck,
    HypothesisReport,
    IntegrationError,
    IoError,
    LimitPrediction,
    ModelParams,
    RunResult,
    RunSummary,
    Scenario,
    SimulationConfig,
    State,
    SweepSpec,
    Trajectory,
    TransformContext,
    TransformedState,
    TransformedTrajectory,
    __version__,
    apply_parameter,
    attractor_interval,
    build_transform,
    builtin_scenarios,
    builtin_sweeps,
    convergence_order,
    equilibrium_eigenvalues,
    expand_sweep,
    find_builtin_scenario,
    find_builtin_sweep,
    from_transformed,
    integrate,
    integrate_transformed,
    load_scenario_file,
    load_sweep_file,
    lyapunov_Z,
    lyapunov_Z_derivative,
    parse_scenario,
    parse_sweep,
    predict_limits,
    rhs,
    run_acceptance,
    run_scenario,
    run_sweep,
    summary_csv,
    summary_json,
    summary_table,
    to_transformed,
    transformed_eigenvalues,
    transformed_jacobian,
    transformed_rhs,
    validate_hypotheses,
)

__all__ = [
    "CriterionResult",
    "EigenReport",
    "GrowthLaw",
    "HypothesisCheck",
    "HypothesisReport",
    "IntegrationError",
    "IoError",
    "LimitPrediction",
    "ModelParams",
    "RunResult",
    "RunSummary",
    "Scenario",
    "SimulationConfig",
    "State",
    "SweepSpec",
    "Trajectory",
    "TransformContext",
    "TransformedState",
    "TransformedTrajectory",
    "__version__",
    "apply_parameter",
    "attractor_interval",
    "build_transform",
    "builtin_scenarios",
    "builtin_sweeps",
    "convergence_order",
    "equilibrium_eigenvalues",
    "expand_sweep",
    "find_builtin_scenario",
    "find_builtin_sweep",
    "from_transformed",
    "integrate",
    "integrate_transformed",
    "load_scenario_file",
    "load_sweep_file",
    "lyapunov_Z",
    "lyapunov_Z_derivative",
    "parse_scenario",
    "parse_sweep",
    "predict_limits",
    "rhs",
    "run_acceptance",
    "run_scenario",
    "run_sweep",
    "summary_csv",
    "summary_json",
    "summary_table",
    "to_transformed",
    "transformed_eigenvalues",
    "transformed_jacobian",
    "transformed_rhs",
    "validate_hypotheses",
]
