#pragma once

#include <cmath>
#include <stdexcept>

namespace tricho {

enum class GrowthKind { monod };

/**
 * @brief Specific growth rate law mu(s) for biomass on a soluble substrate.
 *
 * Value type. The only shipped law is Monod saturation kinetics,
 *   mu(s) = mu_max * s / (k_s + s),
 * which satisfies mu(0) = 0, mu' > 0 and sup mu = mu_max. Substrate
 * concentrations are g/L, rates 1/h.
 */
class GrowthLaw {
public:
    /// Monod law with maximum rate @p mu_max [1/h] and half-saturation
    /// constant @p k_s [g/L]. Both must be finite and positive.
    static GrowthLaw monod(double mu_max, double k_s) {
        if (!(std::isfinite(mu_max) && mu_max > 0.0))
            throw std::invalid_argument("GrowthLaw: mu_max must be finite and positive");
        if (!(std::isfinite(k_s) && k_s > 0.0))
            throw std::invalid_argument("GrowthLaw: k_s must be finite and positive");
        return GrowthLaw(GrowthKind::monod, mu_max, k_s);
    }

    GrowthKind kind() const noexcept { return kind_; }
    double mu_max() const noexcept { return mu_max_; }
    double k_s() const noexcept { return k_s_; }

    /// mu(s) [1/h]. Throws std::domain_error for negative substrate.
    double rate(double s) const {
        if (s < 0.0)
            throw std::domain_error("GrowthLaw::rate: negative substrate concentration");
        return rate_unchecked(s);
    }

    /// dmu/ds [L/(g h)]. Throws std::domain_error for negative substrate.
    double derivative(double s) const {
        if (s < 0.0)
            throw std::domain_error("GrowthLaw::derivative: negative substrate concentration");
        return mu_max_ * k_s_ / ((k_s_ + s) * (k_s_ + s));
    }

    /// Least upper bound of mu over s >= 0 (not attained for Monod).
    double supremum() const noexcept { return mu_max_; }

    /// Evaluation without the sign check; callers clamp s themselves.
    double rate_unchecked(double s) const noexcept {
        return mu_max_ * s / (k_s_ + s);
    }

private:
    GrowthLaw(GrowthKind kind, double mu_max, double k_s)
        : kind_(kind), mu_max_(mu_max), k_s_(k_s) {}

    GrowthKind kind_;
    double mu_max_;
    double k_s_;
};

} // namespace tricho
