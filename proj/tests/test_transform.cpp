#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "trichokinetics/analysis.hpp"
#include "trichokinetics/integrator.hpp"
#include "trichokinetics/model.hpp"

using namespace tricho;

namespace {

ModelParams baseline_params() {
    return ModelParams(0.176, 0.2, 0.048, 1.19, 0.2, 0.0047, 0.002,
                       GrowthLaw::monod(0.096, 11.27));
}

TransformContext baseline_transform() {
    return build_transform(1.1745, 31.84, baseline_params());
}

} // namespace

TEST_CASE("conjugation constants at the baseline resting point") {
    const TransformContext ctx = baseline_transform();

    CHECK(ctx.s_star == 1.1745);
    CHECK(ctx.p_star == 31.84);
    CHECK(ctx.varphi == doctest::Approx(-0.06969179715370867).epsilon(1e-13));
    CHECK(ctx.gamma == doctest::Approx(0.9100279316074903).epsilon(1e-13));
    CHECK(ctx.omega == doctest::Approx(0.09789716540372774).epsilon(1e-13));
    CHECK(ctx.phi == doctest::Approx(0.29789716540372774).epsilon(1e-13));
    CHECK(ctx.gamma > 0.0);
    CHECK(ctx.phi > 0.0);
}

TEST_CASE("conjugation constants satisfy their coupling identities") {
    const ModelParams p = baseline_params();
    for (double s_star : {0.0, 0.3, 1.1745, 5.0, 11.0}) {
        const TransformContext ctx = build_transform(s_star, 10.0, p);
        CHECK(ctx.varphi ==
              doctest::Approx(1.0 / p.Y_Bs - ctx.gamma).epsilon(1e-12));
        CHECK(ctx.omega == doctest::Approx(ctx.phi - p.inv_Y_Ps).epsilon(1e-12));
        CHECK(ctx.gamma > 0.0);
        CHECK(ctx.phi > 0.0);
    }
}

TEST_CASE("conjugation requires the resting point strictly inside the attracting range") {
    const ModelParams p = baseline_params();
    // mu(11.27) == k_d exactly; the boundary is excluded
    CHECK_THROWS_WITH_AS(build_transform(11.27, 0.0, p),
                         doctest::Contains("interior"), std::domain_error);
    CHECK_THROWS_AS(build_transform(20.0, 0.0, p), std::domain_error);
    CHECK_THROWS_AS(build_transform(-1.0, 0.0, p), std::domain_error);
}

TEST_CASE("coordinate round trip") {
    const TransformContext ctx = baseline_transform();
    const State y{45.0, 15.0, 50.0, 0.0};

    const TransformedState u = to_transformed(y, ctx);
    const State back = from_transformed(u, ctx);
    CHECK(back.X == y.X);
    CHECK(back.B == y.B);
    CHECK(std::fabs(back.s - y.s) / y.s < 1e-12);
    CHECK(std::fabs(back.P - y.P) < 1e-12);

    CHECK_THROWS_AS(to_transformed(State{45.0, 0.0, 50.0, 0.0}, ctx),
                    std::domain_error);
}

TEST_CASE("transformed field matches finite differences of the mapped flow") {
    // Simulate the original system, map each sample into (z, X, B, W), and
    // compare centred differences of z and W against the transformed field.
    const ModelParams p = baseline_params();
    Trajectory traj;
    {
        SimulationConfig cfg;
        cfg.initial = State{45.0, 15.0, 50.0, 0.0};
        cfg.step = 0.01;
        cfg.t_end = 100.0;
        cfg.record_stride = 1;
        cfg.steady_tol = 0.0;
        traj = integrate(cfg, p);
    }
    const TransformContext ctx = baseline_transform();

    std::vector<double> zs, Ws;
    zs.reserve(traj.states.size());
    Ws.reserve(traj.states.size());
    for (const State& y : traj.states) {
        const TransformedState u = to_transformed(y, ctx);
        zs.push_back(u.z);
        Ws.push_back(u.W);
    }

    const double dt = 0.01;
    double worst_z = 0.0;
    double worst_W = 0.0;
    for (std::size_t i = 1; i + 1 < traj.states.size(); ++i) {
        const TransformedState u = to_transformed(traj.states[i], ctx);
        const TransformedState d = transformed_rhs(u, ctx, p);
        worst_z = std::max(worst_z,
                           std::fabs((zs[i + 1] - zs[i - 1]) / (2.0 * dt) - d.z));
        worst_W = std::max(worst_W,
                           std::fabs((Ws[i + 1] - Ws[i - 1]) / (2.0 * dt) - d.W));
    }
    CHECK(worst_z < 1e-5);
    CHECK(worst_W < 1e-5);
}

TEST_CASE("transformed field names the violated inequality") {
    const TransformContext ctx = baseline_transform();
    const ModelParams p = baseline_params();

    CHECK_THROWS_WITH_AS(transformed_rhs({0.0, 0.0, 0.0, 0.0}, ctx, p),
                         doctest::Contains("B > 0"), std::domain_error);
    CHECK_THROWS_WITH_AS(transformed_rhs({0.0, -1.0, 1.0, 0.0}, ctx, p),
                         doctest::Contains("X >= 0"), std::domain_error);
    CHECK_THROWS_WITH_AS(transformed_rhs({-100.0, 0.0, 1.0, 0.0}, ctx, p),
                         doctest::Contains("reconstructed s"), std::domain_error);
    CHECK_THROWS_WITH_AS(transformed_rhs({0.0, 0.0, 1.0, -100.0}, ctx, p),
                         doctest::Contains("reconstructed P"), std::domain_error);
}

TEST_CASE("transformed Jacobian and spectrum at the origin") {
    const ModelParams p = baseline_params();
    const TransformContext ctx = baseline_transform();
    const double mu_star = p.growth.rate(ctx.s_star);
    const double f = mu_star - p.k_d;
    const double dmu = p.growth.derivative(ctx.s_star);

    const auto J = transformed_jacobian(ctx, p);
    CHECK(J[0][0] == doctest::Approx(-f).epsilon(1e-14));
    CHECK(J[0][1] == doctest::Approx(ctx.gamma * dmu).epsilon(1e-14));
    CHECK(J[0][2] == doctest::Approx(ctx.gamma * dmu * ctx.varphi).epsilon(1e-14));
    CHECK(J[0][3] == 0.0);
    CHECK(J[1][1] == doctest::Approx(-p.K_H).epsilon(1e-14));
    CHECK(J[1][2] == doctest::Approx(p.alpha * p.k_d).epsilon(1e-14));
    CHECK(J[2][2] == doctest::Approx(f).epsilon(1e-14));
    CHECK(J[3][3] == doctest::Approx(-f).epsilon(1e-14));

    const EigenReport rep = transformed_eigenvalues(ctx, p);
    REQUIRE(rep.has_transformed);
    CHECK(rep.transformed_eigenvalues[0] ==
          doctest::Approx(0.03893961187673269).epsilon(1e-13));
    CHECK(rep.transformed_eigenvalues[1] == doctest::Approx(-0.176).epsilon(1e-14));
    CHECK(rep.transformed_eigenvalues[2] ==
          doctest::Approx(-0.03893961187673269).epsilon(1e-13));
    CHECK(rep.transformed_eigenvalues[0] == -rep.transformed_eigenvalues[2]);
    for (double r : rep.transformed_residuals) CHECK(r < 1e-10);

    // the positive double eigenvalue makes the origin hyperbolic and unstable
    CHECK(rep.transformed_eigenvalues[0] > 0.0);
}

TEST_CASE("integrating the conjugated system reproduces the original flow") {
    const ModelParams p = baseline_params();

    SimulationConfig cfg;
    cfg.initial = State{45.0, 15.0, 50.0, 0.0};
    cfg.step = 0.01;
    cfg.t_end = 50.0;
    cfg.record_stride = 10;
    cfg.steady_tol = 0.0;
    const Trajectory orig = integrate(cfg, p);

    const TransformContext ctx = baseline_transform();
    const TransformedState u0 = to_transformed(cfg.initial, ctx);
    const TransformedTrajectory conj =
        integrate_transformed(u0, ctx, p, cfg.step, cfg.t_end, cfg.record_stride);

    REQUIRE(orig.times.size() == conj.times.size());
    double sup_diff = 0.0;
    double sup_scale = 0.0;
    for (std::size_t i = 0; i < orig.times.size(); ++i) {
        CHECK(orig.times[i] == doctest::Approx(conj.times[i]).epsilon(1e-12));
        const State a = orig.states[i];
        const State b = from_transformed(conj.states[i], ctx);
        sup_diff = std::max({sup_diff, std::fabs(a.X - b.X), std::fabs(a.B - b.B),
                             std::fabs(a.s - b.s), std::fabs(a.P - b.P)});
        sup_scale = std::max({sup_scale, std::fabs(a.X), std::fabs(a.B),
                              std::fabs(a.s), std::fabs(a.P)});
    }
    CHECK(sup_diff / sup_scale < 1e-9);
}

TEST_CASE("conjugated integrator validates its arguments") {
    const ModelParams p = baseline_params();
    const TransformContext ctx = baseline_transform();
    const TransformedState u0{1.0, 0.0, 1.0, 0.0};

    CHECK_THROWS_AS(integrate_transformed(u0, ctx, p, 0.0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(integrate_transformed(u0, ctx, p, 0.01, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(integrate_transformed(u0, ctx, p, 0.01, 10.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(integrate_transformed({1.0, 0.0, 0.0, 0.0}, ctx, p, 0.01, 10.0),
                    std::domain_error);
}
