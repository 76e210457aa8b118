#pragma once

#include <array>
#include <optional>

#include "trichokinetics/integrator.hpp"
#include "trichokinetics/model.hpp"

namespace tricho {

/**
 * @brief Upper end of the biomass-viable substrate interval S = [0, lambda].
 *
 * lambda solves mu(lambda) = k_d for the Monod law:
 *   lambda = k_d * k_s / (mu_max - k_d).
 * Substrate limits of decaying cultures land in S. Returns +infinity when
 * k_d >= mu_max (biomass decays at every substrate level, S = [0, inf)).
 */
double attractor_interval(const ModelParams& params);

/**
 * @brief Value of the decreasing functional
 *   Z = (1 + m_s Y_Bs / k_d) X + alpha B + alpha Y_Bs s.
 *
 * Z is non-increasing along non-negative solutions, which is what yields
 * the closed-form substrate bound. Requires alpha > 0 (throws
 * std::domain_error: the functional degenerates to a multiple of X
 * otherwise) and a componentwise non-negative state.
 */
double lyapunov_Z(const State& y, const ModelParams& params);

/**
 * @brief Time derivative of Z along the flow,
 *   dZ/dt = K_H [ (alpha Y_Bs - 1) - m_s Y_Bs / k_d ] X,
 * which is <= 0 whenever alpha Y_Bs <= 1 + m_s Y_Bs / k_d. Same
 * preconditions as lyapunov_Z.
 */
double lyapunov_Z_derivative(const State& y, const ModelParams& params);

/**
 * @brief Closed-form limits implied by a known final substrate level.
 *
 * Built from s_star (simulated or hypothesised): the product limit
 *   p_star = P0 + a B0 + b (X0 + s0 - s_star),
 * the time integrals of B and mu(s)B over [0, inf), and, when alpha > 0,
 * an a-priori upper bound on s_star from the decreasing functional Z.
 */
struct LimitPrediction {
    double lambda{0.0};       ///< attractor interval endpoint (may be +inf)
    double a{0.0};            ///< product limit weight on B0
    double b{0.0};            ///< product limit weight on X0 + s0 - s_star
    double p_star{0.0};       ///< predicted product limit
    double int_B{0.0};        ///< integral of B dt over the whole run
    double int_muB{0.0};      ///< integral of mu(s) B dt over the whole run
    std::optional<double> s_star_upper_bound;  ///< empty when alpha == 0
};

/**
 * @brief Evaluate the closed-form limit predictions for initial state
 * @p initial and final substrate level @p s_star.
 *
 * With Y = Y_Bs, y = Y_Ps and D = 1 - Y (alpha - m_s/k_d):
 *   a = (m_P + k_d Y (alpha - m_s/k_d) / y) / (k_d D)
 *   b = Y (m_P + k_d / y) / (k_d D)
 *   int_B   = (B0 + Y (X0 + s0 - s_star)) / (k_d D)
 *   int_muB = Y (B0 (alpha - m_s/k_d) + X0 + s0 - s_star) / D
 *   bound   = ((1 + m_s Y / k_d) X0 + alpha B0) / (alpha Y) + s0
 * (written with the stored reciprocal 1/y so y = inf is handled exactly).
 *
 * Requires s_star >= 0 (std::domain_error) and D > 0
 * (std::domain_error "limit predictions inapplicable: non-positive
 * denominator"). alpha == 0 only suppresses the bound.
 */
LimitPrediction predict_limits(const State& initial, double s_star,
                               const ModelParams& params);

/**
 * @brief Jacobian spectra at the equilibria, with verification residuals.
 *
 * Every point (0, 0, s_star, P_star) is an equilibrium. In the original
 * variables the eigenvalues are
 *   { -K_H, mu(s_star) - k_d, 0, 0 }
 * (non-hyperbolic: the equilibria form a two-parameter continuum). In the
 * conjugated variables of TransformContext the spectrum becomes
 *   r1 = k_d - mu(s_star) (double), r2 = -K_H, r3 = mu(s_star) - k_d,
 * with exactly one unstable direction transversal to the solution family.
 * residuals hold |det(J - r I)| scaled by max(1, ||J||_inf)^4; values
 * near roundoff certify each claimed eigenvalue without an eigensolver.
 */
struct EigenReport {
    bool has_original{false};
    std::array<double, 4> original_eigenvalues{};
    std::array<double, 4> original_residuals{};

    bool has_transformed{false};
    std::array<double, 3> transformed_eigenvalues{};  ///< r1 (double), r2, r3
    std::array<double, 3> transformed_residuals{};
};

/// Spectrum of the original-variable Jacobian at (0, 0, s_star, *).
/// Requires s_star >= 0.
EigenReport equilibrium_eigenvalues(double s_star, const ModelParams& params);

/**
 * @brief Constants of the conjugating change of variables at a limit point.
 *
 * With mu* = mu(s_star) and f = mu* - k_d < 0:
 *   varphi = (mu* / Y_Bs - (alpha k_d - m_s)) / f
 *   gamma  = (k_d (1 - alpha Y_Bs) + Y_Bs m_s) / (Y_Bs (k_d - mu*))  > 0
 *   omega  = (mu* / Y_Ps + m_P) / (k_d - mu*)
 *   phi    = (k_d / Y_Ps + m_P) / (k_d - mu*)                        > 0
 * The new coordinates are z = (X + s - s_star)/B + varphi and
 * W = (P - p_star)/B + omega alongside the original X and B.
 */
struct TransformContext {
    double s_star{0.0};
    double p_star{0.0};
    double varphi{0.0};
    double gamma{0.0};
    double omega{0.0};
    double phi{0.0};
};

/// Build the conjugation constants at (s_star, p_star). Requires
/// s_star >= 0 and mu(s_star) < k_d (the limit point must sit in the
/// interior of the attracting substrate range); otherwise
/// std::domain_error "equilibrium not in interior of attracting range".
TransformContext build_transform(double s_star, double p_star,
                                 const ModelParams& params);

/// State in the conjugated coordinates (z, X, B, W).
struct TransformedState {
    double z{0.0};
    double X{0.0};
    double B{0.0};
    double W{0.0};
};

/// Map an original state with B > 0 into conjugated coordinates
/// (std::domain_error on B <= 0).
TransformedState to_transformed(const State& y, const TransformContext& ctx);

/// Invert the conjugation: s = s_star - X + (z - varphi) B and
/// P = p_star + (W - omega) B.
State from_transformed(const TransformedState& u, const TransformContext& ctx);

/**
 * @brief Vector field in the conjugated coordinates.
 *
 * With F = mu(s_star - X + (z - varphi) B):
 *   dz/dt = -gamma (F - mu(s_star)) - (F - k_d) z
 *   dX/dt = -K_H X + alpha k_d B
 *   dB/dt = (F - k_d) B
 *   dW/dt =  phi (F - mu(s_star)) - (F - k_d) W
 *
 * The admissible region requires B > 0, X >= 0 and the reconstructed
 * s and P to be non-negative; violations throw std::domain_error naming
 * the failed inequality.
 */
TransformedState transformed_rhs(const TransformedState& u,
                                 const TransformContext& ctx,
                                 const ModelParams& params);

/// Jacobian of the conjugated vector field at its equilibrium
/// (z, X, B, W) = (0, 0, 0, 0), row-major.
std::array<std::array<double, 4>, 4>
transformed_jacobian(const TransformContext& ctx, const ModelParams& params);

/// Spectrum {r1 (double), r2, r3} of the conjugated-system Jacobian, with
/// determinant residuals.
EigenReport transformed_eigenvalues(const TransformContext& ctx,
                                    const ModelParams& params);

/// Solution samples of the conjugated system.
struct TransformedTrajectory {
    std::vector<double> times;
    std::vector<TransformedState> states;
};

/**
 * @brief Integrate the conjugated system with the same RK4 stepper.
 *
 * Stage probes use a lenient field (growth-law argument clamped at 0);
 * committed states must satisfy the admissible-region inequalities up to
 * clamp_eps or IntegrationError is thrown. Mirrors integrate() so
 * trajectories can be compared sample-by-sample after mapping back.
 */
TransformedTrajectory integrate_transformed(const TransformedState& initial,
                                            const TransformContext& ctx,
                                            const ModelParams& params,
                                            double step, double t_end,
                                            int record_stride = 1,
                                            double clamp_eps = 1e-12);

namespace detail {

/// Determinant of a 4x4 matrix by partial-pivot elimination.
double det4(std::array<std::array<double, 4>, 4> m);

/// Centered finite-difference Jacobian of the (extended) batch vector
/// field at @p y, row-major.
std::array<std::array<double, 4>, 4> numeric_jacobian(const State& y,
                                                      const ModelParams& params);

/// |det(J - lambda I)| / max(1, ||J||_inf)^4.
double eigen_residual(const std::array<std::array<double, 4>, 4>& J, double lambda);

} // namespace detail

} // namespace tricho
