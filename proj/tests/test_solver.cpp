#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "frontlab/medium.hpp"
#include "frontlab/solver.hpp"

using namespace frontlab;

namespace {

GridField filled(const GridField& proto, const std::function<double(double, double)>& f) {
    GridField g = proto;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) g.at(i, j) = f(g.x(i), g.y(j));
    return g;
}

double interior_max_abs(const GridField& g, int margin) {
    double m = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        if (g.ny > 1 && (j < margin || j >= g.ny - margin)) continue;
        for (int i = margin; i < g.nx - margin; ++i) m = std::max(m, std::abs(g.at(i, j)));
    }
    return m;
}

}  // namespace

TEST_CASE("operator vanishes on constants") {
    auto m = build_medium(2, 8, CoefficientField::oscillating(1.0, 0.3).with_cellular(0.5),
                          Reaction::bistable(0.25));
    GridField u = initial_uniform(GridField::box(2.0, 0.125, 2), 0.42);
    GridField Lu = apply_operator(m, u);
    CHECK(kernels::max_abs(Lu.v) <= 1e-14);
}

TEST_CASE("operator vanishes on linear data away from the boundary") {
    auto m = build_medium(2, 4, CoefficientField::identity(), Reaction::bistable(0.25));
    GridField u = filled(GridField::box(2.0, 0.25, 2),
                         [](double x, double y) { return 0.3 * x + 0.1 * y; });
    GridField Lu = apply_operator(m, u);
    CHECK(interior_max_abs(Lu, 2) < 1e-12);
}

TEST_CASE("operator is exact on quadratics: |x|^2 -> 2N") {
    auto m2 = build_medium(2, 4, CoefficientField::identity(), Reaction::bistable(0.25));
    GridField u2 = filled(GridField::box(2.0, 0.25, 2),
                          [](double x, double y) { return x * x + y * y; });
    GridField L2 = apply_operator(m2, u2);
    for (int j = 2; j < L2.ny - 2; ++j)
        for (int i = 2; i < L2.nx - 2; ++i) CHECK(L2.at(i, j) == doctest::Approx(4.0).epsilon(1e-12));

    auto m1 = build_medium(1, 4, CoefficientField::identity(), Reaction::bistable(0.25));
    GridField u1 = filled(GridField::box(2.0, 0.25, 1), [](double x, double) { return x * x; });
    GridField L1 = apply_operator(m1, u1);
    for (int i = 2; i < L1.nx - 2; ++i) CHECK(L1.at(i, 0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("mixed-derivative term is exact on xy for constant full A") {
    auto m = build_medium(2, 4, CoefficientField::rotated(2.0, 0.5, 0.6),
                          Reaction::bistable(0.25));
    // div(A grad xy) = 2 a12
    double a11, a12, a22;
    CoefficientField::rotated(2.0, 0.5, 0.6).A({0, 0}, a11, a12, a22);
    GridField u = filled(GridField::box(2.0, 0.25, 2), [](double x, double y) { return x * y; });
    GridField Lu = apply_operator(m, u);
    for (int j = 2; j < Lu.ny - 2; ++j)
        for (int i = 2; i < Lu.nx - 2; ++i)
            CHECK(Lu.at(i, j) == doctest::Approx(2 * a12).epsilon(1e-10));
}

TEST_CASE("grid/medium mismatch raises a structural error") {
    auto m = build_medium(2, 8, CoefficientField::identity(), Reaction::bistable(0.25));
    GridField u = GridField::box(2.0, 0.25, 2);  // 1/h = 4 != 8
    CHECK_THROWS_AS(apply_operator(m, u), std::invalid_argument);
}

TEST_CASE("equilibria are fixed points of the step") {
    auto m = build_medium(2, 4, CoefficientField::identity().with_shear(0.3),
                          Reaction::bistable(0.25));
    for (double val : {0.0, 1.0}) {
        GridField u = initial_uniform(GridField::box(2.0, 0.25, 2), val);
        GridField v = step(m, u, 0.1);
        CHECK(kernels::max_abs(v.v) == doctest::Approx(val).epsilon(1e-14));
        double diff = 0;
        for (size_t k = 0; k < u.v.size(); ++k) diff = std::max(diff, std::abs(v.v[k] - u.v[k]));
        CHECK(diff <= 1e-13);
    }
}

TEST_CASE("uniform state follows the scalar ODE to O(dt^2)") {
    auto m = build_medium(1, 4, CoefficientField::identity(), Reaction::bistable(0.25));
    const double u0 = 0.6, dt = 0.05;
    GridField u = initial_uniform(GridField::box(2.0, 0.25, 1), u0);
    GridField v = step(m, u, dt);

    // high-order scalar ODE oracle (RK4 with tiny steps)
    auto f = [&](double s) { return m.reaction.f({0, 0}, s); };
    double y = u0;
    int nsub = 1000;
    double hh = dt / nsub;
    for (int k = 0; k < nsub; ++k) {
        double k1 = f(y), k2 = f(y + 0.5 * hh * k1), k3 = f(y + 0.5 * hh * k2),
               k4 = f(y + hh * k3);
        y += hh / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    double err = std::abs(v.v[0] - y);
    CHECK(err < 0.5 * dt * dt * std::abs(f(u0)) + 1e-12);
}

TEST_CASE("one step preserves ordering of ordered data") {
    auto m = build_medium(2, 8,
                          CoefficientField::oscillating(0.8, 0.2).with_cellular(0.4),
                          Reaction::periodic_bistable(0.3, 0.1));
    GridField proto = GridField::box(2.0, 0.125, 2);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(0.0, 0.45);
    double dt = stable_dt(m, proto.h);
    for (int rep = 0; rep < 5; ++rep) {
        GridField lo = proto, hi = proto;
        for (int k = 0; k < proto.size(); ++k) {
            double a = dist(rng);
            lo.v[k] = a;
            hi.v[k] = a + dist(rng) + 0.05;
        }
        GridField lo1 = step(m, lo, dt), hi1 = step(m, hi, dt);
        double worst = 0.0;
        for (int k = 0; k < proto.size(); ++k) worst = std::min(worst, hi1.v[k] - lo1.v[k]);
        CHECK(worst >= -1e-12);
    }
}

TEST_CASE("simulation stays within [0,1] up to solver tolerance") {
    auto m = build_medium(2, 4, CoefficientField::identity(), Reaction::bistable(0.25));
    GridField u0 = initial_ball(GridField::box(4.0, 0.25, 2), 0.9, 1.5, 1.5);
    Trajectory traj = simulate(m, u0, 5.0, {1.0, 5.0});
    for (const auto& s : traj.snaps) {
        CHECK(s.min() >= -1e-9);
        CHECK(s.max() <= 1.0 + 1e-9);
    }
}

TEST_CASE("integer cell shifts commute with the dynamics away from the boundary") {
    auto m = build_medium(2, 4, CoefficientField::oscillating(1.0, 0.3).with_shear(0.2),
                          Reaction::periodic_bistable(0.3, 0.1));
    GridField proto = GridField::box(10.0, 0.25, 2);
    auto bump = [](double x, double y) {
        double r2 = x * x + y * y;
        return r2 < 9.0 ? 0.8 * std::exp(-r2 / (9.0 - r2)) : 0.0;
    };
    GridField a = filled(proto, bump);
    GridField b = filled(proto, [&](double x, double y) { return bump(x + 1.0, y); });
    Trajectory ta = simulate(m, a, 1.0, {1.0});
    Trajectory tb = simulate(m, b, 1.0, {1.0});
    const GridField& ua = ta.snaps.back();
    const GridField& ub = tb.snaps.back();
    // compare where both stay far from the boundary
    int shift = static_cast<int>(std::round(1.0 / proto.h));
    double worst = 0.0;
    for (int j = 0; j < ua.ny; ++j)
        for (int i = 0; i < ua.nx; ++i) {
            if (std::abs(ua.x(i)) > 2.5 || std::abs(ua.y(j)) > 2.5) continue;
            worst = std::max(worst, std::abs(ub.at(i, j) - ua.at(i + shift, j)));
        }
    CHECK(worst < 1e-7);
}

TEST_CASE("invasion and extinction against the simulation oracle") {
    auto m = build_medium(2, 4, CoefficientField::identity(), Reaction::bistable(0.25));
    InvasionParams ip;
    ip.L = 16.0;
    ip.h = 0.25;
    SUBCASE("theta above alpha on a wide ball invades") {
        CHECK(invasion_test(m, 0.8, 10.0, 50.0, 1.0, ip));
    }
    SUBCASE("small amplitude dies out") {
        GridField u0 = initial_ball(GridField::box(8.0, 0.25, 2), 0.1, 1.0, 1.0);
        Trajectory traj = simulate(m, u0, 50.0, {50.0});
        CHECK(traj.snaps.back().max() < 1e-3);
        CHECK_FALSE(invasion_test(m, 0.1, 10.0, 50.0, 1.0, ip));
    }
}

TEST_CASE("ignition invades for theta above the threshold") {
    auto m = build_medium(2, 4, CoefficientField::identity(), Reaction::ignition(0.3));
    InvasionParams ip;
    ip.L = 16.0;
    ip.h = 0.25;
    CHECK(invasion_test(m, 0.8, 10.0, 50.0, 1.0, ip));
}

TEST_CASE("uniform one stays one along a whole trajectory") {
    auto m = build_medium(1, 4, CoefficientField::identity(), Reaction::bistable(0.25));
    GridField u0 = initial_uniform(GridField::box(4.0, 0.25, 1), 1.0);
    Trajectory traj = simulate(m, u0, 2.0, {0.5, 1.0, 2.0});
    for (const auto& s : traj.snaps) {
        CHECK(s.min() == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(s.max() == doctest::Approx(1.0).epsilon(1e-13));
    }
}
