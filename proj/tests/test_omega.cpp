#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "frontlab/omega.hpp"
#include "frontlab/solver.hpp"

using namespace frontlab;

namespace {

FrontProfile shooting_profile(Vec2 e) {
    return FrontProfile::from_shooting(planar_front_shooting(Reaction::bistable(0.25)), e);
}

GridField field_from_profile(const FrontProfile& prof, double t, double L, double h) {
    GridField g = GridField::box(L, h, 2);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) g.at(i, j) = prof.phi(t, {g.x(i), g.y(j)});
    g.time = t;
    return g;
}

}  // namespace

TEST_CASE("ray tracker skips snapshots without a crossing") {
    GridField ones = initial_uniform(GridField::box(4.0, 0.25, 2), 1.0);
    GridField zeros = initial_uniform(GridField::box(4.0, 0.25, 2), 0.0);
    Trajectory traj;
    ones.time = 1.0;
    traj.append(1.0, ones);
    zeros.time = 2.0;
    traj.append(2.0, zeros);
    auto rc = ray_tracker(traj, {1, 0}, 0.5);
    REQUIRE(rc.size() == 2);
    CHECK_FALSE(rc[0].found);
    CHECK_FALSE(rc[1].found);
}

TEST_CASE("self-fit recovers the generating profile") {
    auto prof = shooting_profile({1, 0});
    double t0 = 12.0;
    GridField u = field_from_profile(prof, t0, 12.0, 0.25);
    Window w = extract_window(u, t0, {prof.c * t0, 0.5}, 2.0);
    REQUIRE(w.valid);
    auto fit = front_fit(w, {prof});
    CHECK(fit.residual < 1e-6);
    CHECK(fit.cls == WindowClass::front);
    // the recovered shift reproduces the generating time modulo the
    // z-degeneracy of the homogeneous profile
    double z_gen = dot(w.center, prof.e) - prof.c * t0;
    double z_fit = dot(w.center, prof.e) - prof.c * fit.time_shift + dot(fit.cell_shift, prof.e);
    CHECK(z_fit == doctest::Approx(z_gen).epsilon(1e-4));
}

TEST_CASE("fit residual is invariant under integer cell translation with matched time shift") {
    auto prof = shooting_profile({1, 0});
    double t0 = 14.0;
    GridField u = field_from_profile(prof, t0, 16.0, 0.25);
    Window w1 = extract_window(u, t0, {prof.c * t0, 0.0}, 2.0);

    double k = 3.0;
    double t1 = t0 + k / prof.c;  // phi(t + k e / c, x + k) = phi(t, x)
    GridField u2 = field_from_profile(prof, t1, 16.0, 0.25);
    Window w2 = extract_window(u2, t1, {prof.c * t0 + k, 0.0}, 2.0);

    auto f1 = front_fit(w1, {prof});
    auto f2 = front_fit(w2, {prof});
    CHECK(std::abs(f1.residual - f2.residual) < 1e-8);
}

TEST_CASE("constant windows classify as bulk") {
    GridField ones = initial_uniform(GridField::box(4.0, 0.25, 2), 1.0);
    GridField zeros = initial_uniform(GridField::box(4.0, 0.25, 2), 0.0);
    auto prof = shooting_profile({1, 0});
    Window w1 = extract_window(ones, 5.0, {0, 0}, 2.0);
    Window w0 = extract_window(zeros, 5.0, {0, 0}, 2.0);
    auto f1 = front_fit(w1, {prof});
    auto f0 = front_fit(w0, {prof});
    CHECK(f1.cls == WindowClass::bulk_one);
    CHECK(f1.const1_residual < 0.02);
    CHECK(f0.cls == WindowClass::bulk_zero);
    CHECK(f0.const0_residual < 0.02);
}

TEST_CASE("window extraction enforces the domain margin") {
    GridField u = initial_uniform(GridField::box(4.0, 0.25, 2), 0.5);
    Window w = extract_window(u, 1.0, {3.5, 0.0}, 2.0);
    CHECK_FALSE(w.valid);
    auto prof = shooting_profile({1, 0});
    Window tiny = extract_window(u, 1.0, {0, 0}, 0.1);
    CHECK_THROWS_AS(front_fit(tiny, {prof}), std::invalid_argument);
}

TEST_CASE("windows along the ray of an invading solution fit the planar profile") {
    auto m = build_medium(2, 4, CoefficientField::identity(), Reaction::bistable(0.25));
    GridField u0 = initial_ball(GridField::box(18.0, 0.25, 2), 0.8, 4.0, 4.0);
    Trajectory traj = simulate(m, u0, 28.0, {16.0, 28.0});
    auto prof = shooting_profile({1, 0});

    auto crossings = ray_tracker(traj, {1, 0}, 0.5);
    REQUIRE(crossings.size() == 2);
    REQUIRE(crossings[0].found);
    REQUIRE(crossings[1].found);

    std::vector<double> residuals;
    for (size_t k = 0; k < crossings.size(); ++k) {
        Window w = extract_window(traj.snaps[k], crossings[k].t, crossings[k].x, 8 * 0.25);
        REQUIRE(w.valid);
        auto fit = front_fit(w, {prof});
        residuals.push_back(fit.residual);
    }
    CHECK(residuals.back() < 0.08);
    CHECK(residuals.back() <= residuals.front() + 0.02);
}

TEST_CASE("corner scan: two flank profiles both achieve low residual on a V-shaped field") {
    // mirrored construction: the field is the max of two planar fronts with
    // normals nu_pm, the discrete analogue of a corner with two minimizers
    double inv = 1.0 / std::sqrt(2.0);
    auto p_r = shooting_profile({inv, inv});
    auto p_l = shooting_profile({-inv, inv});
    double c = p_r.c;

    Trajectory traj;
    for (double t : {30.0, 40.0, 50.0}) {
        GridField g = GridField::box(40.0, 0.25, 2);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                Vec2 x{g.x(i), g.y(j)};
                g.at(i, j) = std::max(p_r.phi(t, x), p_l.phi(t, x));
            }
        g.time = t;
        traj.append(t, g);
    }
    auto rep = corner_direction_scan(traj, {0, 1}, {p_r, p_l}, 0.5);
    REQUIRE_FALSE(rep.rows.empty());
    CHECK(rep.best_residual_per_candidate[0] < 0.05);
    CHECK(rep.best_residual_per_candidate[1] < 0.05);
    (void)c;

    CHECK_THROWS_AS(corner_direction_scan(traj, {0, 1}, {}, 0.5), std::invalid_argument);
}
