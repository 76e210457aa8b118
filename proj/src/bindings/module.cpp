#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "trichokinetics/acceptance.hpp"
#include "trichokinetics/analysis.hpp"
#include "trichokinetics/integrator.hpp"
#include "trichokinetics/model.hpp"
#include "trichokinetics/output.hpp"
#include "trichokinetics/scenario.hpp"

namespace py = pybind11;
using namespace tricho;

namespace {

std::vector<double> column(const Trajectory& traj, double State::*member) {
    std::vector<double> out;
    out.reserve(traj.states.size());
    for (const State& y : traj.states) out.push_back(y.*member);
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Batch kinetics of fungal growth on hydrolysed organic matter: "
              "simulation, limit predictions and equilibrium analysis";
    m.attr("__version__") = "0.1.0";

    py::register_exception<IntegrationError>(m, "IntegrationError",
                                             PyExc_RuntimeError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<GrowthLaw>(m, "GrowthLaw")
        .def_static("monod", &GrowthLaw::monod, py::arg("mu_max"), py::arg("k_s"))
        .def_property_readonly("mu_max", &GrowthLaw::mu_max)
        .def_property_readonly("k_s", &GrowthLaw::k_s)
        .def("rate", &GrowthLaw::rate, py::arg("s"))
        .def("derivative", &GrowthLaw::derivative, py::arg("s"))
        .def("supremum", &GrowthLaw::supremum)
        .def("__repr__", [](const GrowthLaw& g) {
            return "GrowthLaw.monod(mu_max=" + std::to_string(g.mu_max()) +
                   ", k_s=" + std::to_string(g.k_s()) + ")";
        });

    py::class_<State>(m, "State")
        .def(py::init<>())
        .def(py::init([](double X, double B, double s, double P) {
                 return State{X, B, s, P};
             }),
             py::arg("X") = 0.0, py::arg("B") = 0.0, py::arg("s") = 0.0,
             py::arg("P") = 0.0)
        .def_readwrite("X", &State::X)
        .def_readwrite("B", &State::B)
        .def_readwrite("s", &State::s)
        .def_readwrite("P", &State::P)
        .def("__repr__", [](const State& y) {
            return "State(X=" + std::to_string(y.X) + ", B=" + std::to_string(y.B) +
                   ", s=" + std::to_string(y.s) + ", P=" + std::to_string(y.P) + ")";
        });

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<double, double, double, double, double, double, double,
                      GrowthLaw>(),
             py::arg("K_H"), py::arg("alpha"), py::arg("k_d"), py::arg("Y_Bs"),
             py::arg("inv_Y_Ps"), py::arg("m_s"), py::arg("m_P"), py::arg("growth"))
        .def_readwrite("K_H", &ModelParams::K_H)
        .def_readwrite("alpha", &ModelParams::alpha)
        .def_readwrite("k_d", &ModelParams::k_d)
        .def_readwrite("Y_Bs", &ModelParams::Y_Bs)
        .def_readwrite("inv_Y_Ps", &ModelParams::inv_Y_Ps)
        .def_readwrite("m_s", &ModelParams::m_s)
        .def_readwrite("m_P", &ModelParams::m_P)
        .def_readwrite("growth", &ModelParams::growth)
        .def_property_readonly("Y_Ps", &ModelParams::Y_Ps)
        .def("limit_denominator", &ModelParams::limit_denominator);

    m.def("rhs", &rhs, py::arg("state"), py::arg("params"),
          "Time derivative of the four pools at a non-negative state");

    py::class_<HypothesisCheck>(m, "HypothesisCheck")
        .def_readonly("name", &HypothesisCheck::name)
        .def_readonly("passed", &HypothesisCheck::passed)
        .def_readonly("message", &HypothesisCheck::message);

    py::class_<HypothesisReport>(m, "HypothesisReport")
        .def_readonly("checks", &HypothesisReport::checks)
        .def("all_passed", &HypothesisReport::all_passed)
        .def("warnings", &HypothesisReport::warnings);

    m.def("validate_hypotheses", &validate_hypotheses, py::arg("params"));

    py::class_<SimulationConfig>(m, "SimulationConfig")
        .def(py::init<>())
        .def_readwrite("initial", &SimulationConfig::initial)
        .def_readwrite("step", &SimulationConfig::step)
        .def_readwrite("t_end", &SimulationConfig::t_end)
        .def_readwrite("record_stride", &SimulationConfig::record_stride)
        .def_readwrite("steady_tol", &SimulationConfig::steady_tol)
        .def_readwrite("biomass_floor", &SimulationConfig::biomass_floor)
        .def_readwrite("clamp_eps", &SimulationConfig::clamp_eps);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_readonly("states", &Trajectory::states)
        .def_readonly("steady_state_reached", &Trajectory::steady_state_reached)
        .def_readonly("t_final", &Trajectory::t_final)
        .def_property_readonly("final_state", &Trajectory::final_state)
        .def_property_readonly("X", [](const Trajectory& t) { return column(t, &State::X); })
        .def_property_readonly("B", [](const Trajectory& t) { return column(t, &State::B); })
        .def_property_readonly("s", [](const Trajectory& t) { return column(t, &State::s); })
        .def_property_readonly("P", [](const Trajectory& t) { return column(t, &State::P); });

    m.def("integrate", &integrate, py::arg("config"), py::arg("params"),
          py::call_guard<py::gil_scoped_release>());
    m.def("convergence_order", &convergence_order, py::arg("config"),
          py::arg("params"), py::arg("t_check"),
          py::call_guard<py::gil_scoped_release>());

    m.def("attractor_interval", &attractor_interval, py::arg("params"));
    m.def("lyapunov_Z", &lyapunov_Z, py::arg("state"), py::arg("params"));
    m.def("lyapunov_Z_derivative", &lyapunov_Z_derivative, py::arg("state"),
          py::arg("params"));

    py::class_<LimitPrediction>(m, "LimitPrediction")
        .def_readonly("lambda_", &LimitPrediction::lambda)
        .def_readonly("a", &LimitPrediction::a)
        .def_readonly("b", &LimitPrediction::b)
        .def_readonly("p_star", &LimitPrediction::p_star)
        .def_readonly("int_B", &LimitPrediction::int_B)
        .def_readonly("int_muB", &LimitPrediction::int_muB)
        .def_readonly("s_star_upper_bound", &LimitPrediction::s_star_upper_bound);

    m.def("predict_limits", &predict_limits, py::arg("initial"), py::arg("s_star"),
          py::arg("params"));

    py::class_<EigenReport>(m, "EigenReport")
        .def_readonly("has_original", &EigenReport::has_original)
        .def_readonly("original_eigenvalues", &EigenReport::original_eigenvalues)
        .def_readonly("original_residuals", &EigenReport::original_residuals)
        .def_readonly("has_transformed", &EigenReport::has_transformed)
        .def_readonly("transformed_eigenvalues", &EigenReport::transformed_eigenvalues)
        .def_readonly("transformed_residuals", &EigenReport::transformed_residuals);

    m.def("equilibrium_eigenvalues", &equilibrium_eigenvalues, py::arg("s_star"),
          py::arg("params"));

    py::class_<TransformContext>(m, "TransformContext")
        .def_readonly("s_star", &TransformContext::s_star)
        .def_readonly("p_star", &TransformContext::p_star)
        .def_readonly("varphi", &TransformContext::varphi)
        .def_readonly("gamma", &TransformContext::gamma)
        .def_readonly("omega", &TransformContext::omega)
        .def_readonly("phi", &TransformContext::phi);

    py::class_<TransformedState>(m, "TransformedState")
        .def(py::init([](double z, double X, double B, double W) {
                 return TransformedState{z, X, B, W};
             }),
             py::arg("z") = 0.0, py::arg("X") = 0.0, py::arg("B") = 0.0,
             py::arg("W") = 0.0)
        .def_readwrite("z", &TransformedState::z)
        .def_readwrite("X", &TransformedState::X)
        .def_readwrite("B", &TransformedState::B)
        .def_readwrite("W", &TransformedState::W);

    py::class_<TransformedTrajectory>(m, "TransformedTrajectory")
        .def_readonly("times", &TransformedTrajectory::times)
        .def_readonly("states", &TransformedTrajectory::states);

    m.def("build_transform", &build_transform, py::arg("s_star"), py::arg("p_star"),
          py::arg("params"));
    m.def("to_transformed", &to_transformed, py::arg("state"), py::arg("ctx"));
    m.def("from_transformed", &from_transformed, py::arg("state"), py::arg("ctx"));
    m.def("transformed_rhs", &transformed_rhs, py::arg("state"), py::arg("ctx"),
          py::arg("params"));
    m.def("transformed_jacobian", &transformed_jacobian, py::arg("ctx"),
          py::arg("params"));
    m.def("transformed_eigenvalues", &transformed_eigenvalues, py::arg("ctx"),
          py::arg("params"));
    m.def("integrate_transformed", &integrate_transformed, py::arg("initial"),
          py::arg("ctx"), py::arg("params"), py::arg("step"), py::arg("t_end"),
          py::arg("record_stride") = 1, py::arg("clamp_eps") = 1e-12,
          py::call_guard<py::gil_scoped_release>());

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<std::string, ModelParams, State, SimulationConfig>(),
             py::arg("name"), py::arg("params"), py::arg("initial"),
             py::arg("config") = SimulationConfig{})
        .def_readwrite("name", &Scenario::name)
        .def_readwrite("params", &Scenario::params)
        .def_readwrite("initial", &Scenario::initial)
        .def_readwrite("config", &Scenario::config);

    py::class_<SweepSpec>(m, "SweepSpec")
        .def(py::init<std::string, Scenario, std::string, std::vector<double>,
                      std::vector<std::string>>(),
             py::arg("name"), py::arg("base"), py::arg("path"), py::arg("values"),
             py::arg("labels") = std::vector<std::string>{})
        .def_readwrite("name", &SweepSpec::name)
        .def_readwrite("base", &SweepSpec::base)
        .def_readwrite("path", &SweepSpec::path)
        .def_readwrite("values", &SweepSpec::values)
        .def_readwrite("labels", &SweepSpec::labels);

    py::class_<RunSummary>(m, "RunSummary")
        .def_readonly("name", &RunSummary::name)
        .def_readonly("s_star", &RunSummary::s_star)
        .def_readonly("p_star", &RunSummary::p_star)
        .def_readonly("x_final", &RunSummary::x_final)
        .def_readonly("b_final", &RunSummary::b_final)
        .def_readonly("b_max", &RunSummary::b_max)
        .def_readonly("s_max", &RunSummary::s_max)
        .def_readonly("t_converged", &RunSummary::t_converged)
        .def_readonly("steady_state_reached", &RunSummary::steady_state_reached)
        .def_readonly("lambda_", &RunSummary::lambda)
        .def_readonly("s_star_upper_bound", &RunSummary::s_star_upper_bound)
        .def_readonly("p_star_predicted", &RunSummary::p_star_predicted)
        .def_readonly("closure_rel", &RunSummary::closure_rel)
        .def_readonly("int_B_predicted", &RunSummary::int_B_predicted)
        .def_readonly("int_B_observed", &RunSummary::int_B_observed)
        .def_readonly("int_muB_predicted", &RunSummary::int_muB_predicted)
        .def_readonly("int_muB_observed", &RunSummary::int_muB_observed)
        .def_readonly("bound_ok", &RunSummary::bound_ok)
        .def_readonly("membership_ok", &RunSummary::membership_ok)
        .def_readonly("closure_ok", &RunSummary::closure_ok)
        .def_readonly("integrals_ok", &RunSummary::integrals_ok)
        .def_readonly("hypothesis_warnings", &RunSummary::hypothesis_warnings)
        .def_readonly("error", &RunSummary::error);

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("summary", &RunResult::summary)
        .def_readonly("trajectory", &RunResult::trajectory)
        .def_readonly("scenario", &RunResult::scenario);

    m.def("builtin_scenarios", &builtin_scenarios);
    m.def("builtin_sweeps", &builtin_sweeps);
    m.def("find_builtin_scenario", &find_builtin_scenario, py::arg("name"));
    m.def("find_builtin_sweep", &find_builtin_sweep, py::arg("name"));
    m.def("parse_scenario", &parse_scenario, py::arg("text"),
          py::arg("fallback_name") = "scenario");
    m.def("parse_sweep", &parse_sweep, py::arg("text"),
          py::arg("fallback_name") = "sweep");
    m.def("load_scenario_file", &load_scenario_file, py::arg("path"));
    m.def("load_sweep_file", &load_sweep_file, py::arg("path"));
    m.def("apply_parameter", &apply_parameter, py::arg("scenario"), py::arg("path"),
          py::arg("value"));
    m.def("expand_sweep", &expand_sweep, py::arg("spec"));
    m.def("run_scenario", &run_scenario, py::arg("scenario"),
          py::call_guard<py::gil_scoped_release>());
    m.def("run_sweep", &run_sweep, py::arg("spec"),
          py::call_guard<py::gil_scoped_release>());

    m.def("summary_json", &summary_json, py::arg("results"));
    m.def("summary_csv", &summary_csv, py::arg("results"));
    m.def("summary_table", &summary_table, py::arg("results"));

    py::class_<acceptance::CriterionResult>(m, "CriterionResult")
        .def_readonly("id", &acceptance::CriterionResult::id)
        .def_readonly("name", &acceptance::CriterionResult::name)
        .def_readonly("passed", &acceptance::CriterionResult::passed)
        .def_readonly("detail", &acceptance::CriterionResult::detail);

    m.def(
        "run_acceptance",
        []() { return acceptance::run_all(nullptr); },
        py::call_guard<py::gil_scoped_release>(),
        "Run the full acceptance suite and return per-criterion results");
}
