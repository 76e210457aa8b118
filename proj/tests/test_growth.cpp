#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "trichokinetics/growth.hpp"

using tricho::GrowthLaw;

TEST_CASE("monod law evaluates the saturation kinetics") {
    const GrowthLaw mu = GrowthLaw::monod(0.096, 11.27);

    CHECK(mu.mu_max() == 0.096);
    CHECK(mu.k_s() == 11.27);
    CHECK(mu.rate(0.0) == 0.0);
    CHECK(mu.rate(50.0) == doctest::Approx(0.07834176595397421).epsilon(1e-14));
    // at s = k_s the rate is exactly half the maximum
    CHECK(mu.rate(11.27) == doctest::Approx(0.048).epsilon(1e-15));
    CHECK(mu.supremum() == 0.096);
}

TEST_CASE("monod derivative matches the closed form and a finite difference") {
    const GrowthLaw mu = GrowthLaw::monod(0.096, 11.27);

    CHECK(mu.derivative(0.0) == doctest::Approx(0.008518189884649512).epsilon(1e-14));
    CHECK(mu.derivative(10.0) < mu.derivative(0.0));

    for (double s : {0.5, 5.0, 50.0, 500.0}) {
        const double h = 1e-6 * s;
        const double fd = (mu.rate(s + h) - mu.rate(s - h)) / (2.0 * h);
        CHECK(mu.derivative(s) == doctest::Approx(fd).epsilon(1e-8));
    }
}

TEST_CASE("monod rate is increasing and bounded by its supremum") {
    const GrowthLaw mu = GrowthLaw::monod(0.2, 35.55);
    double prev = mu.rate(0.0);
    for (double s = 1.0; s <= 4096.0; s *= 2.0) {
        const double r = mu.rate(s);
        CHECK(r > prev);
        CHECK(r < mu.supremum());
        prev = r;
    }
}

TEST_CASE("growth law construction and domain errors") {
    CHECK_THROWS_AS(GrowthLaw::monod(0.0, 11.27), std::invalid_argument);
    CHECK_THROWS_AS(GrowthLaw::monod(-0.1, 11.27), std::invalid_argument);
    CHECK_THROWS_AS(GrowthLaw::monod(0.096, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(GrowthLaw::monod(0.096, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(GrowthLaw::monod(std::nan(""), 11.27), std::invalid_argument);

    const GrowthLaw mu = GrowthLaw::monod(0.096, 11.27);
    CHECK_THROWS_AS(mu.rate(-1.0), std::domain_error);
    CHECK_THROWS_AS(mu.derivative(-1e-9), std::domain_error);
    CHECK(mu.rate_unchecked(50.0) == mu.rate(50.0));
}
