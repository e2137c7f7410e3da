#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "frontlab/levelsets.hpp"
#include "frontlab/shooting.hpp"
#include "frontlab/solver.hpp"

using namespace frontlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

PlanarSet disk_set(double radius, int n = 256) {
    std::vector<Vec2> poly;
    for (int k = 0; k < n; ++k) {
        double th = 2 * kPi * k / n;
        poly.push_back({radius * std::cos(th), radius * std::sin(th)});
    }
    return PlanarSet::from_polygon(poly);
}

}  // namespace

TEST_CASE("level sets of constants") {
    GridField u = GridField::box(2.0, 0.25, 2);
    CHECK(upper_level_set(u, 0.5).is_empty());
    std::fill(u.v.begin(), u.v.end(), 1.0);
    auto full = upper_level_set(u, 0.5);
    CHECK_FALSE(full.is_empty());
    CHECK(full.boundary.empty());  // whole-domain set has no internal contour
    CHECK(full.contains({0.3, -1.2}));
}

TEST_CASE("radial sigmoid crossing at radius 3") {
    GridField u = GridField::box(6.0, 0.125, 2);
    for (int j = 0; j < u.ny; ++j)
        for (int i = 0; i < u.nx; ++i) {
            double r = std::sqrt(u.x(i) * u.x(i) + u.y(j) * u.y(j));
            u.at(i, j) = 1.0 / (1.0 + std::exp((r - 3.0) / 0.5));
        }
    auto s = upper_level_set(u, 0.5);
    REQUIRE_FALSE(s.boundary.empty());
    for (Vec2 p : s.boundary) CHECK(std::abs(norm(p) - 3.0) <= u.h);
}

TEST_CASE("hausdorff basics and conventions") {
    auto d1 = disk_set(1.0);
    auto d2 = disk_set(2.0);
    CHECK(hausdorff(d1, d1) == 0.0);
    CHECK(hausdorff(d1, d2) == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::isinf(hausdorff(d1, PlanarSet::empty_set())));
    CHECK(std::isinf(hausdorff(PlanarSet::empty_set(), d1)));
    CHECK(hausdorff(PlanarSet::empty_set(), PlanarSet::empty_set()) == 0.0);
}

TEST_CASE("hausdorff is symmetric and satisfies the triangle inequality") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    auto blob = [&](int n) {
        std::vector<Vec2> poly;
        double cx = dist(rng) * 0.3, cy = dist(rng) * 0.3;
        double base = 1.0 + 0.3 * std::abs(dist(rng));
        for (int k = 0; k < n; ++k) {
            double th = 2 * kPi * k / n;
            double r = base + 0.25 * std::sin(3 * th + dist(rng));
            poly.push_back({cx + r * std::cos(th), cy + r * std::sin(th)});
        }
        return PlanarSet::from_polygon(poly);
    };
    for (int rep = 0; rep < 3; ++rep) {
        auto A = blob(64), B = blob(64), C = blob(64);
        double ab = hausdorff(A, B), ba = hausdorff(B, A);
        CHECK(ab == ba);
        double ac = hausdorff(A, C), cb = hausdorff(C, B);
        double tol = 0.03;  // raster resolution allowance
        CHECK(ab <= ac + cb + tol);
    }
}

TEST_CASE("level sets are nested in lambda") {
    GridField u = GridField::box(4.0, 0.25, 2);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (auto& v : u.v) v = dist(rng);
    auto lo = upper_level_set(u, 0.3);
    auto hi = upper_level_set(u, 0.7);
    REQUIRE(lo.kind == PlanarSet::Kind::raster);
    REQUIRE(hi.kind == PlanarSet::Kind::raster);
    for (size_t k = 0; k < lo.mask.inside.size(); ++k)
        if (hi.mask.inside[k]) CHECK(lo.mask.inside[k]);
}

TEST_CASE("rescaled level sets of an invading ball approach the limiting disk") {
    auto m = build_medium(2, 4, CoefficientField::identity(), Reaction::bistable(0.25));
    GridField u0 = initial_ball(GridField::box(16.0, 0.25, 2), 0.8, 4.0, 4.0);
    Trajectory traj = simulate(m, u0, 30.0, {10.0, 20.0, 30.0});
    double cstar = planar_front_shooting(Reaction::bistable(0.25)).c;

    auto series_right = rescaled_convergence(traj, 0.5, disk_set(cstar), {}, 512);
    REQUIRE(series_right.size() == 3);
    CHECK(series_right.back().d < 0.5 * cstar);

    // deliberately wrong radius: the series plateaus near cstar
    auto series_wrong = rescaled_convergence(traj, 0.5, disk_set(2 * cstar), {}, 512);
    CHECK(series_wrong.back().d == doctest::Approx(cstar).epsilon(0.45));
    CHECK(series_wrong.back().d > series_right.back().d + 0.3 * cstar);

    // level independence estimate at modest time
    auto s25 = rescaled_convergence(traj, 0.25, disk_set(cstar), {}, 512);
    auto s75 = rescaled_convergence(traj, 0.75, disk_set(cstar), {}, 512);
    CHECK(std::abs(s25.back().d - s75.back().d) < 0.15);

    auto shape = shape_from_levelset(traj, 0.5, 30.0);
    CHECK_FALSE(shape.is_empty());
    // roughly a disk; at t = 30 the startup transient still lags the
    // asymptotic radius by about (rho - c t0 - log t / c) / t
    Vec2 lo, hi;
    shape.bbox(lo, hi);
    CHECK(std::abs(0.5 * (hi.x - lo.x) - cstar) < 0.45 * cstar);
    CHECK(std::abs((hi.x - lo.x) - (hi.y - lo.y)) < 0.05);
}

TEST_CASE("extinction leaves the empty shape") {
    auto m = build_medium(2, 4, CoefficientField::identity(), Reaction::bistable(0.25));
    GridField u0 = initial_ball(GridField::box(8.0, 0.25, 2), 0.1, 1.0, 1.0);
    Trajectory traj = simulate(m, u0, 40.0, {40.0});
    auto shape = shape_from_levelset(traj, 0.5, 40.0);
    CHECK(shape.is_empty());
}

TEST_CASE("raster shape reference produces a usable signed distance") {
    auto d = disk_set(1.0);
    auto ref = raster_shape_ref(d, 512);
    CHECK(ref.sdf({0, 0}) == doctest::Approx(1.0).epsilon(0.03));
    CHECK(ref.sdf({2, 0}) == doctest::Approx(-1.0).epsilon(0.05));
    CHECK(ref.inside({0.5, 0}));
    CHECK_FALSE(ref.inside({1.5, 0}));

    auto probe = ball_condition_probe(ref, {1, 0}, 0.4);
    CHECK(probe.interior);
    CHECK(probe.exterior);
}
