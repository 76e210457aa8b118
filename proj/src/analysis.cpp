#include "trichokinetics/analysis.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <utility>

namespace tricho {

namespace detail {

double det4(std::array<std::array<double, 4>, 4> m) {
    double det = 1.0;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int row = col + 1; row < 4; ++row)
            if (std::fabs(m[row][col]) > std::fabs(m[piv][col])) piv = row;
        if (m[piv][col] == 0.0) return 0.0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (int row = col + 1; row < 4; ++row) {
            const double f = m[row][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[row][c] -= f * m[col][c];
        }
    }
    return det;
}

std::array<std::array<double, 4>, 4> numeric_jacobian(const State& y,
                                                      const ModelParams& params) {
    std::array<std::array<double, 4>, 4> J{};
    const double base[4] = {y.X, y.B, y.s, y.P};
    for (int j = 0; j < 4; ++j) {
        const double delta = 1e-6 * std::max(1.0, std::fabs(base[j]));
        State hi = y, lo = y;
        double* hi_c[4] = {&hi.X, &hi.B, &hi.s, &hi.P};
        double* lo_c[4] = {&lo.X, &lo.B, &lo.s, &lo.P};
        *hi_c[j] += delta;
        *lo_c[j] -= delta;
        const State fh = rhs_extended(hi, params);
        const State fl = rhs_extended(lo, params);
        J[0][j] = (fh.X - fl.X) / (2.0 * delta);
        J[1][j] = (fh.B - fl.B) / (2.0 * delta);
        J[2][j] = (fh.s - fl.s) / (2.0 * delta);
        J[3][j] = (fh.P - fl.P) / (2.0 * delta);
    }
    return J;
}

double eigen_residual(const std::array<std::array<double, 4>, 4>& J, double lambda) {
    double norm = 0.0;
    for (const auto& row : J) {
        double sum = 0.0;
        for (double v : row) sum += std::fabs(v);
        norm = std::max(norm, sum);
    }
    auto shifted = J;
    for (int i = 0; i < 4; ++i) shifted[i][i] -= lambda;
    const double scale = std::max(1.0, norm);
    return std::fabs(det4(shifted)) / (scale * scale * scale * scale);
}

namespace {

void require_nonnegative_state(const State& y, const char* where) {
    if (y.X < 0.0 || y.B < 0.0 || y.s < 0.0 || y.P < 0.0)
        throw std::domain_error(std::string(where) +
                                ": state must be componentwise non-negative");
}

/// Conjugated vector field without admissibility checks; the growth-law
/// argument is clamped at zero for stage probes.
TransformedState transformed_rhs_lenient(const TransformedState& u,
                                         const TransformContext& ctx,
                                         const ModelParams& p) noexcept {
    const double mu_star = p.growth.rate_unchecked(std::max(ctx.s_star, 0.0));
    const double s_recon = ctx.s_star - u.X + (u.z - ctx.varphi) * u.B;
    const double F = p.growth.rate_unchecked(std::max(s_recon, 0.0));
    TransformedState d;
    d.z = -ctx.gamma * (F - mu_star) - (F - p.k_d) * u.z;
    d.X = -p.K_H * u.X + p.alpha * p.k_d * u.B;
    d.B = (F - p.k_d) * u.B;
    d.W = ctx.phi * (F - mu_star) - (F - p.k_d) * u.W;
    return d;
}

TransformedState rk4_step_transformed(const TransformedState& u, double h,
                                      const TransformContext& ctx,
                                      const ModelParams& p) noexcept {
    auto axpy = [](const TransformedState& y, double a, const TransformedState& k) {
        return TransformedState{y.z + a * k.z, y.X + a * k.X, y.B + a * k.B,
                                y.W + a * k.W};
    };
    const TransformedState k1 = transformed_rhs_lenient(u, ctx, p);
    const TransformedState k2 = transformed_rhs_lenient(axpy(u, 0.5 * h, k1), ctx, p);
    const TransformedState k3 = transformed_rhs_lenient(axpy(u, 0.5 * h, k2), ctx, p);
    const TransformedState k4 = transformed_rhs_lenient(axpy(u, h, k3), ctx, p);
    const double w = h / 6.0;
    return TransformedState{
        u.z + w * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z),
        u.X + w * (k1.X + 2.0 * k2.X + 2.0 * k3.X + k4.X),
        u.B + w * (k1.B + 2.0 * k2.B + 2.0 * k3.B + k4.B),
        u.W + w * (k1.W + 2.0 * k2.W + 2.0 * k3.W + k4.W)};
}

} // namespace

} // namespace detail

double attractor_interval(const ModelParams& params) {
    const double mu_max = params.growth.supremum();
    if (params.k_d >= mu_max) return std::numeric_limits<double>::infinity();
    return params.k_d * params.growth.k_s() / (mu_max - params.k_d);
}

double lyapunov_Z(const State& y, const ModelParams& p) {
    detail::require_nonnegative_state(y, "lyapunov_Z");
    if (p.alpha <= 0.0)
        throw std::domain_error("lyapunov_Z: the decreasing functional requires alpha > 0");
    return (1.0 + p.m_s * p.Y_Bs / p.k_d) * y.X + p.alpha * y.B +
           p.alpha * p.Y_Bs * y.s;
}

double lyapunov_Z_derivative(const State& y, const ModelParams& p) {
    detail::require_nonnegative_state(y, "lyapunov_Z_derivative");
    if (p.alpha <= 0.0)
        throw std::domain_error(
            "lyapunov_Z_derivative: the decreasing functional requires alpha > 0");
    return p.K_H * ((p.alpha * p.Y_Bs - 1.0) - p.m_s * p.Y_Bs / p.k_d) * y.X;
}

LimitPrediction predict_limits(const State& initial, double s_star,
                               const ModelParams& p) {
    detail::require_nonnegative_state(initial, "predict_limits");
    if (!(std::isfinite(s_star) && s_star >= 0.0))
        throw std::domain_error("predict_limits: s_star must be finite and non-negative");
    const double D = p.limit_denominator();
    if (!(D > 0.0))
        throw std::domain_error(
            "predict_limits: limit predictions inapplicable, denominator "
            "1-Y_Bs*(alpha-m_s/k_d) is not positive");

    const double kd = p.k_d;
    const double Y = p.Y_Bs;
    const double inv = p.inv_Y_Ps;
    const double amsk = p.alpha - p.m_s / kd;
    const double consumed = initial.X + initial.s - s_star;

    LimitPrediction out;
    out.lambda = attractor_interval(p);
    out.a = (p.m_P + kd * Y * amsk * inv) / (kd * D);
    out.b = Y * (p.m_P + kd * inv) / (kd * D);
    out.p_star = initial.P + out.a * initial.B + out.b * consumed;
    out.int_B = (initial.B + Y * consumed) / (kd * D);
    out.int_muB = Y * (initial.B * amsk + consumed) / D;
    if (p.alpha > 0.0) {
        out.s_star_upper_bound =
            ((1.0 + p.m_s * Y / kd) * initial.X + p.alpha * initial.B) /
                (p.alpha * Y) +
            initial.s;
    }
    return out;
}

EigenReport equilibrium_eigenvalues(double s_star, const ModelParams& p) {
    if (!(std::isfinite(s_star) && s_star >= 0.0))
        throw std::domain_error(
            "equilibrium_eigenvalues: s_star must be finite and non-negative");

    const State eq{0.0, 0.0, s_star, 0.0};
    const auto J = detail::numeric_jacobian(eq, p);

    EigenReport report;
    report.has_original = true;
    report.original_eigenvalues = {-p.K_H, p.growth.rate(s_star) - p.k_d, 0.0, 0.0};
    for (int i = 0; i < 4; ++i)
        report.original_residuals[i] =
            detail::eigen_residual(J, report.original_eigenvalues[i]);
    return report;
}

TransformContext build_transform(double s_star, double p_star,
                                 const ModelParams& p) {
    if (!(std::isfinite(s_star) && s_star >= 0.0))
        throw std::domain_error("build_transform: s_star must be finite and non-negative");
    const double mu_star = p.growth.rate(s_star);
    if (!(mu_star < p.k_d))
        throw std::domain_error(
            "build_transform: equilibrium not in interior of attracting range "
            "(mu(s_star) >= k_d)");

    const double gap = p.k_d - mu_star;
    TransformContext ctx;
    ctx.s_star = s_star;
    ctx.p_star = p_star;
    ctx.varphi = (mu_star / p.Y_Bs - (p.alpha * p.k_d - p.m_s)) / (mu_star - p.k_d);
    ctx.gamma = (p.k_d * (1.0 - p.alpha * p.Y_Bs) + p.Y_Bs * p.m_s) / (p.Y_Bs * gap);
    ctx.omega = (mu_star * p.inv_Y_Ps + p.m_P) / gap;
    ctx.phi = (p.k_d * p.inv_Y_Ps + p.m_P) / gap;
    return ctx;
}

TransformedState to_transformed(const State& y, const TransformContext& ctx) {
    if (!(y.B > 0.0))
        throw std::domain_error("to_transformed: requires positive biomass B");
    TransformedState u;
    u.z = (y.X + y.s - ctx.s_star) / y.B + ctx.varphi;
    u.X = y.X;
    u.B = y.B;
    u.W = (y.P - ctx.p_star) / y.B + ctx.omega;
    return u;
}

State from_transformed(const TransformedState& u, const TransformContext& ctx) {
    State y;
    y.X = u.X;
    y.B = u.B;
    y.s = ctx.s_star - u.X + (u.z - ctx.varphi) * u.B;
    y.P = ctx.p_star + (u.W - ctx.omega) * u.B;
    return y;
}

TransformedState transformed_rhs(const TransformedState& u,
                                 const TransformContext& ctx,
                                 const ModelParams& p) {
    if (!(u.B > 0.0))
        throw std::domain_error(
            "transformed_rhs: outside admissible region (B > 0 violated)");
    if (u.X < 0.0)
        throw std::domain_error(
            "transformed_rhs: outside admissible region (X >= 0 violated)");
    const State back = from_transformed(u, ctx);
    if (back.s < 0.0)
        throw std::domain_error(
            "transformed_rhs: outside admissible region (reconstructed s >= 0 violated)");
    if (back.P < 0.0)
        throw std::domain_error(
            "transformed_rhs: outside admissible region (reconstructed P >= 0 violated)");
    return detail::transformed_rhs_lenient(u, ctx, p);
}

std::array<std::array<double, 4>, 4>
transformed_jacobian(const TransformContext& ctx, const ModelParams& p) {
    const double mu_star = p.growth.rate_unchecked(std::max(ctx.s_star, 0.0));
    const double slope = p.growth.derivative(std::max(ctx.s_star, 0.0));
    const double f = mu_star - p.k_d;

    std::array<std::array<double, 4>, 4> J{};
    J[0] = {-f, ctx.gamma * slope, ctx.gamma * slope * ctx.varphi, 0.0};
    J[1] = {0.0, -p.K_H, p.alpha * p.k_d, 0.0};
    J[2] = {0.0, 0.0, f, 0.0};
    J[3] = {0.0, -ctx.phi * slope, -ctx.phi * slope * ctx.varphi, -f};
    return J;
}

EigenReport transformed_eigenvalues(const TransformContext& ctx,
                                    const ModelParams& p) {
    const double mu_star = p.growth.rate_unchecked(std::max(ctx.s_star, 0.0));
    const auto J = transformed_jacobian(ctx, p);

    EigenReport report;
    report.has_transformed = true;
    report.transformed_eigenvalues = {p.k_d - mu_star, -p.K_H, mu_star - p.k_d};
    for (int i = 0; i < 3; ++i)
        report.transformed_residuals[i] =
            detail::eigen_residual(J, report.transformed_eigenvalues[i]);
    return report;
}

TransformedTrajectory integrate_transformed(const TransformedState& initial,
                                            const TransformContext& ctx,
                                            const ModelParams& params,
                                            double step, double t_end,
                                            int record_stride, double clamp_eps) {
    if (!(std::isfinite(step) && step > 0.0))
        throw std::invalid_argument("integrate_transformed: step must be positive");
    if (!(std::isfinite(t_end) && t_end >= 0.0))
        throw std::invalid_argument("integrate_transformed: t_end must be non-negative");
    if (record_stride < 1)
        throw std::invalid_argument("integrate_transformed: record_stride must be >= 1");
    if (!(initial.B > 0.0))
        throw std::domain_error("integrate_transformed: initial B must be positive");

    const double ratio = t_end / step;
    std::int64_t full_steps = static_cast<std::int64_t>(std::llround(ratio));
    bool has_remainder = false;
    if (std::fabs(ratio - static_cast<double>(full_steps)) >
        1e-9 * std::max(1.0, ratio)) {
        full_steps = static_cast<std::int64_t>(ratio);
        has_remainder = true;
    }
    const double remainder = t_end - static_cast<double>(full_steps) * step;
    const std::int64_t total_steps = full_steps + (has_remainder ? 1 : 0);

    TransformedTrajectory traj;
    traj.times.reserve(static_cast<std::size_t>(total_steps / record_stride + 2));
    traj.states.reserve(static_cast<std::size_t>(total_steps / record_stride + 2));

    TransformedState u = initial;
    double t = 0.0;
    traj.times.push_back(t);
    traj.states.push_back(u);

    bool last_recorded = true;
    for (std::int64_t i = 0; i < total_steps; ++i) {
        const bool is_remainder = has_remainder && i == full_steps;
        const double h = is_remainder ? remainder : step;
        u = detail::rk4_step_transformed(u, h, ctx, params);
        t = is_remainder ? t_end : static_cast<double>(i + 1) * step;

        auto fail = [&](const char* what, double value) {
            std::ostringstream msg;
            msg << "integration left the admissible region: " << what << " = " << value
                << " at t = " << t << "; reduce the step size";
            throw IntegrationError(msg.str());
        };
        if (!(u.B > 0.0)) fail("B", u.B);
        if (u.X < 0.0) {
            if (u.X <= -clamp_eps) fail("X", u.X);
            u.X = 0.0;
        }
        const State back = from_transformed(u, ctx);
        if (back.s < -clamp_eps) fail("reconstructed s", back.s);
        if (back.P < -clamp_eps) fail("reconstructed P", back.P);

        last_recorded = ((i + 1) % record_stride == 0) || i + 1 == total_steps;
        if (last_recorded) {
            traj.times.push_back(t);
            traj.states.push_back(u);
        }
    }

    if (!last_recorded) {
        traj.times.push_back(t);
        traj.states.push_back(u);
    }
    return traj;
}

} // namespace tricho
