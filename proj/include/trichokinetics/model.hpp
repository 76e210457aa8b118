#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "trichokinetics/growth.hpp"

namespace tricho {

/// Pool concentrations [g/L]: insoluble organic matter X, biomass B,
/// soluble substrate s, enzymatic product P.
struct State {
    double X{0.0};
    double B{0.0};
    double s{0.0};
    double P{0.0};
};

/**
 * @brief Kinetic parameters of the four-pool batch model.
 *
 * Members are public for plain aggregate-style access; the constructor
 * enforces the hard constraints (everything finite and non-negative,
 * alpha < 1, k_d > 0, Y_Bs > 0). Softer modelling assumptions are
 * reported by validate_hypotheses() as warnings, never as errors.
 *
 * Units: K_H, k_d [1/h]; m_s, m_P [1/h]; alpha, Y_Bs, inv_Y_Ps [-].
 */
struct ModelParams {
    double K_H;        ///< first-order hydrolysis rate of X into s
    double alpha;      ///< fraction of dead biomass recycled into X
    double k_d;        ///< biomass decay (mortality) rate
    double Y_Bs;       ///< biomass yield on substrate
    double inv_Y_Ps;   ///< reciprocal product yield, 1/Y_Ps
    double m_s;        ///< maintenance consumption of substrate
    double m_P;        ///< maintenance-associated product formation
    GrowthLaw growth;  ///< specific growth rate law mu(s)

    ModelParams(double K_H_, double alpha_, double k_d_, double Y_Bs_,
                double inv_Y_Ps_, double m_s_, double m_P_, GrowthLaw growth_)
        : K_H(K_H_), alpha(alpha_), k_d(k_d_), Y_Bs(Y_Bs_), inv_Y_Ps(inv_Y_Ps_),
          m_s(m_s_), m_P(m_P_), growth(growth_) {
        check_hard_constraints();
    }

    /// Product yield Y_Ps = 1 / inv_Y_Ps (infinite when inv_Y_Ps == 0).
    double Y_Ps() const { return 1.0 / inv_Y_Ps; }

    /// Denominator D = 1 - Y_Bs*(alpha - m_s/k_d) shared by the closed-form
    /// limit predictions; those require D > 0.
    double limit_denominator() const { return 1.0 - Y_Bs * (alpha - m_s / k_d); }

    /// Throws std::invalid_argument when a member violates a hard constraint.
    void check_hard_constraints() const {
        auto finite_nonneg = [](double v, const char* name) {
            if (!std::isfinite(v) || v < 0.0)
                throw std::invalid_argument(std::string("ModelParams: ") + name +
                                            " must be finite and non-negative");
        };
        finite_nonneg(K_H, "K_H");
        finite_nonneg(alpha, "alpha");
        finite_nonneg(k_d, "k_d");
        finite_nonneg(Y_Bs, "Y_Bs");
        finite_nonneg(inv_Y_Ps, "inv_Y_Ps");
        finite_nonneg(m_s, "m_s");
        finite_nonneg(m_P, "m_P");
        if (alpha >= 1.0)
            throw std::invalid_argument("ModelParams: alpha must satisfy 0 <= alpha < 1");
        if (k_d <= 0.0)
            throw std::invalid_argument("ModelParams: k_d must be positive");
        if (Y_Bs <= 0.0)
            throw std::invalid_argument("ModelParams: Y_Bs must be positive");
    }
};

namespace detail {

/// Vector field extended to stage probes that may overshoot slightly below
/// zero: the growth-law argument is clamped at 0. Smooth on the closed
/// positive orthant, never throws.
inline State rhs_extended(const State& y, const ModelParams& p) noexcept {
    const double mu = p.growth.rate_unchecked(std::max(y.s, 0.0));
    State d;
    d.X = -p.K_H * y.X + p.alpha * p.k_d * y.B;
    d.B = (mu - p.k_d) * y.B;
    d.s = -(mu / p.Y_Bs + p.m_s) * y.B + p.K_H * y.X;
    d.P = (p.inv_Y_Ps * mu + p.m_P) * y.B;
    return d;
}

} // namespace detail

/**
 * @brief Time derivative of the batch model at state @p y.
 *
 *   dX/dt = -K_H X + alpha k_d B
 *   dB/dt = (mu(s) - k_d) B
 *   ds/dt = -(mu(s)/Y_Bs + m_s) B + K_H X
 *   dP/dt = (mu(s)/Y_Ps + m_P) B
 *
 * Requires a componentwise non-negative state; throws std::domain_error
 * naming the offending component otherwise.
 */
inline State rhs(const State& y, const ModelParams& p) {
    if (y.X < 0.0) throw std::domain_error("rhs: negative organic matter X");
    if (y.B < 0.0) throw std::domain_error("rhs: negative biomass B");
    if (y.s < 0.0) throw std::domain_error("rhs: negative substrate s");
    if (y.P < 0.0) throw std::domain_error("rhs: negative product P");
    return detail::rhs_extended(y, p);
}

/// One modelling assumption, with a human-readable verdict.
struct HypothesisCheck {
    std::string name;
    bool passed{true};
    std::string message;  ///< empty when passed
};

/// Outcome of validate_hypotheses(): per-assumption verdicts plus helpers.
struct HypothesisReport {
    std::vector<HypothesisCheck> checks;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }

    std::vector<std::string> warnings() const {
        std::vector<std::string> w;
        for (const auto& c : checks)
            if (!c.passed) w.push_back(c.message);
        return w;
    }
};

/**
 * @brief Check the soft modelling assumptions behind the asymptotic theory.
 *
 * Items: (1) 0 <= alpha < 1, (2) 0 < k_d < sup mu, (3) yield coefficients
 * in (0,1), (4) maintenance coefficients positive, (5) limit-prediction
 * denominator D > 0. Violations come back as warnings in the report;
 * several published parameter sets violate item 3 and are still simulated
 * as-is. Hard constraint violations (mutated members) throw
 * std::invalid_argument.
 */
HypothesisReport validate_hypotheses(const ModelParams& p);

} // namespace tricho
