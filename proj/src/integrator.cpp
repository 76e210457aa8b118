#include "trichokinetics/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

namespace tricho {

namespace detail {

bool apply_negativity_floor(State& y, double eps, const char** component,
                            double* value) {
    double* comps[4] = {&y.X, &y.B, &y.s, &y.P};
    const char* names[4] = {"X", "B", "s", "P"};
    for (int i = 0; i < 4; ++i) {
        double& v = *comps[i];
        if (v < 0.0) {
            if (v <= -eps) {
                *component = names[i];
                *value = v;
                return false;
            }
            v = 0.0;
        }
    }
    return true;
}

namespace {

double rhs_max_norm(const State& d) {
    return std::max(std::max(std::fabs(d.X), std::fabs(d.B)),
                    std::max(std::fabs(d.s), std::fabs(d.P)));
}

void check_config(const SimulationConfig& c) {
    if (!(std::isfinite(c.step) && c.step > 0.0))
        throw std::invalid_argument("integrate: step must be finite and positive");
    if (!(std::isfinite(c.t_end) && c.t_end >= 0.0))
        throw std::invalid_argument("integrate: t_end must be finite and non-negative");
    if (c.record_stride < 0)
        throw std::invalid_argument("integrate: record_stride must be non-negative");
    if (!(c.steady_tol >= 0.0))
        throw std::invalid_argument("integrate: steady_tol must be non-negative");
    if (!(c.clamp_eps >= 0.0))
        throw std::invalid_argument("integrate: clamp_eps must be non-negative");
    if (c.initial.X < 0.0 || c.initial.B < 0.0 || c.initial.s < 0.0 || c.initial.P < 0.0)
        throw std::invalid_argument("integrate: initial state must be non-negative");
}

int auto_stride(std::int64_t total_steps) {
    constexpr std::int64_t max_samples = 100000;
    std::int64_t stride = 1;
    while (total_steps / stride + 1 > max_samples)
        ++stride;
    return static_cast<int>(stride);
}

Trajectory integrate_core(const SimulationConfig& config, const ModelParams& params,
                          bool allow_early_stop) {
    check_config(config);

    const double h = config.step;
    const double ratio = config.t_end / h;
    std::int64_t full_steps = static_cast<std::int64_t>(std::llround(ratio));
    bool has_remainder = false;
    if (std::fabs(ratio - static_cast<double>(full_steps)) >
        1e-9 * std::max(1.0, ratio)) {
        full_steps = static_cast<std::int64_t>(ratio);
        has_remainder = true;
    }
    const double remainder = config.t_end - static_cast<double>(full_steps) * h;
    const std::int64_t total_steps = full_steps + (has_remainder ? 1 : 0);

    const int stride =
        config.record_stride > 0 ? config.record_stride : auto_stride(total_steps);

    Trajectory traj;
    traj.times.reserve(static_cast<std::size_t>(total_steps / stride + 2));
    traj.states.reserve(static_cast<std::size_t>(total_steps / stride + 2));

    State y = config.initial;
    double t = 0.0;
    traj.times.push_back(t);
    traj.states.push_back(y);

    State deriv = detail::rhs_extended(y, params);
    bool last_recorded = true;

    for (std::int64_t i = 0; i < total_steps; ++i) {
        const bool is_remainder = has_remainder && i == full_steps;
        const double step = is_remainder ? remainder : h;
        y = detail::rk4_step(y, step, params);
        t = is_remainder ? config.t_end : static_cast<double>(i + 1) * h;

        const char* bad_component = nullptr;
        double bad_value = 0.0;
        if (!detail::apply_negativity_floor(y, config.clamp_eps, &bad_component,
                                            &bad_value)) {
            std::ostringstream msg;
            msg << "integration left the admissible region: component " << bad_component
                << " = " << bad_value << " at t = " << t
                << "; reduce the step size";
            throw IntegrationError(msg.str());
        }

        last_recorded = ((i + 1) % stride == 0) || i + 1 == total_steps;
        if (last_recorded) {
            traj.times.push_back(t);
            traj.states.push_back(y);
        }

        deriv = detail::rhs_extended(y, params);
        if (allow_early_stop && rhs_max_norm(deriv) < config.steady_tol &&
            y.B < config.biomass_floor) {
            traj.steady_state_reached = true;
            break;
        }
    }

    if (!last_recorded) {
        traj.times.push_back(t);
        traj.states.push_back(y);
    }
    traj.t_final = t;
    return traj;
}

} // namespace

} // namespace detail

Trajectory integrate(const SimulationConfig& config, const ModelParams& params) {
    return detail::integrate_core(config, params, true);
}

double convergence_order(const SimulationConfig& config, const ModelParams& params,
                         double t_check) {
    if (!(std::isfinite(t_check) && t_check > 0.0))
        throw std::invalid_argument("convergence_order: t_check must be positive");
    if (t_check > config.t_end)
        throw std::invalid_argument("convergence_order: t_check exceeds t_end");
    const double cells = t_check / (4.0 * config.step);
    if (std::fabs(cells - std::round(cells)) > 1e-9 * std::max(1.0, cells))
        throw std::invalid_argument(
            "convergence_order: t_check must be a multiple of 4*step");

    auto final_state_at = [&](double h) {
        SimulationConfig c = config;
        c.step = h;
        c.t_end = t_check;
        c.record_stride = 1 << 20;  // final state only
        return detail::integrate_core(c, params, false).final_state();
    };

    const State y1 = final_state_at(config.step);
    const State y2 = final_state_at(config.step / 2.0);
    const State y4 = final_state_at(config.step / 4.0);

    auto diff_norm = [](const State& a, const State& b) {
        return std::max(std::max(std::fabs(a.X - b.X), std::fabs(a.B - b.B)),
                        std::max(std::fabs(a.s - b.s), std::fabs(a.P - b.P)));
    };
    const double d1 = diff_norm(y1, y2);
    const double d2 = diff_norm(y2, y4);

    if (!(std::isfinite(d1) && std::isfinite(d2)) || d1 <= 0.0 || d2 <= 0.0)
        throw std::runtime_error(
            "convergence_order: step differences at roundoff; enlarge the base step "
            "or move t_check");

    return std::log2(d1 / d2);
}

} // namespace tricho
