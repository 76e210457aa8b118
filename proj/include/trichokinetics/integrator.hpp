#pragma once

#include <stdexcept>
#include <vector>

#include "trichokinetics/model.hpp"

namespace tricho {

/// A committed step would leave the admissible region (beyond the clamp
/// tolerance), typically because the step size is too large for the
/// current transients.
class IntegrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * @brief Fixed-step simulation settings.
 *
 * Defaults reproduce the reference runs: classical fourth-order
 * Runge-Kutta with h = 0.01 h over a 2000 h horizon, stopping early once
 * the dynamics have flattened (max-norm of the derivative below
 * steady_tol) and the biomass is effectively extinct (below
 * biomass_floor). record_stride == 0 picks the smallest stride keeping
 * at most 100001 samples.
 */
struct SimulationConfig {
    State initial{};
    double step{0.01};            ///< fixed step h [h]
    double t_end{2000.0};         ///< horizon [h]
    int record_stride{0};         ///< sample every k-th step; 0 = auto
    double steady_tol{1e-10};     ///< max-norm threshold on the derivative
    double biomass_floor{1e-9};   ///< B below this counts as extinct
    double clamp_eps{1e-12};      ///< negative overshoot tolerated and zeroed
};

/// Recorded solution samples. times[i] is exactly i*stride*h except for a
/// possible shorter final interval; the final committed state is always
/// the last sample.
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    bool steady_state_reached{false};
    double t_final{0.0};

    const State& final_state() const { return states.back(); }
};

/**
 * @brief Integrate the batch model with classical RK4.
 *
 * Steps are committed on the uniform grid t_i = i*h, plus one shorter
 * remainder step when t_end is not a multiple of h. After each committed
 * step, components in (-clamp_eps, 0) are zeroed; a component at or below
 * -clamp_eps raises IntegrationError naming the component and the time.
 * Early stop when the derivative max-norm drops below steady_tol and
 * B < biomass_floor.
 *
 * Preconditions: componentwise non-negative initial state, 0 < step,
 * t_end >= 0, record_stride >= 0 (throws std::invalid_argument).
 */
Trajectory integrate(const SimulationConfig& config, const ModelParams& params);

/**
 * @brief Observed convergence order at time @p t_check via step halving.
 *
 * Runs the model at steps h, h/2 and h/4 up to t_check (early stopping
 * disabled) and returns log2 of the ratio of successive final-state
 * differences; a value near 4 confirms the scheme order. t_check must be
 * a multiple of 4h within t_end, and the differences must be resolvable
 * above roundoff (throws std::runtime_error with remediation advice
 * otherwise).
 */
double convergence_order(const SimulationConfig& config, const ModelParams& params,
                         double t_check);

namespace detail {

/// One classical RK4 step of size h from state y.
inline State rk4_step(const State& y, double h, const ModelParams& p) noexcept {
    const State k1 = rhs_extended(y, p);
    State probe{y.X + 0.5 * h * k1.X, y.B + 0.5 * h * k1.B,
                y.s + 0.5 * h * k1.s, y.P + 0.5 * h * k1.P};
    const State k2 = rhs_extended(probe, p);
    probe = State{y.X + 0.5 * h * k2.X, y.B + 0.5 * h * k2.B,
                  y.s + 0.5 * h * k2.s, y.P + 0.5 * h * k2.P};
    const State k3 = rhs_extended(probe, p);
    probe = State{y.X + h * k3.X, y.B + h * k3.B, y.s + h * k3.s, y.P + h * k3.P};
    const State k4 = rhs_extended(probe, p);
    const double w = h / 6.0;
    return State{y.X + w * (k1.X + 2.0 * k2.X + 2.0 * k3.X + k4.X),
                 y.B + w * (k1.B + 2.0 * k2.B + 2.0 * k3.B + k4.B),
                 y.s + w * (k1.s + 2.0 * k2.s + 2.0 * k3.s + k4.s),
                 y.P + w * (k1.P + 2.0 * k2.P + 2.0 * k3.P + k4.P)};
}

/// Zero components inside (-eps, 0); report the first component at or
/// below -eps, if any, through the out-parameters. Returns false on such
/// a violation.
bool apply_negativity_floor(State& y, double eps, const char** component,
                            double* value);

} // namespace detail

} // namespace tricho
