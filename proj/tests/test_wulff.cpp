#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "frontlab/wulff.hpp"

using namespace frontlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<Vec2> uniform_dirs(int n) {
    std::vector<Vec2> d;
    for (int k = 0; k < n; ++k) {
        double th = 2 * kPi * k / n;
        d.push_back({std::cos(th), std::sin(th)});
    }
    return d;
}

double ellipse_speed(Vec2 xi) { return std::sqrt(xi.x * xi.x + 4 * xi.y * xi.y); }

}  // namespace

TEST_CASE("constant speed table gives the disk with aligned minimizers") {
    auto dirs = uniform_dirs(256);
    std::vector<double> speeds(dirs.size(), 1.0);
    auto w = wulff_shape(dirs, speeds);
    for (size_t k = 0; k < w.radii.size(); ++k) {
        CHECK(std::abs(w.radii[k] - 1.0) <= 1e-12);
        REQUIRE(w.minimizers[k].size() == 1);
        CHECK(dot(dirs[w.minimizers[k][0]], w.eval_dirs[k]) == doctest::Approx(1.0));
    }
}

TEST_CASE("ellipse envelope against the brute-force oracle") {
    auto dirs = uniform_dirs(64);
    std::vector<double> speeds;
    for (Vec2 d : dirs) speeds.push_back(ellipse_speed(d));
    auto w = wulff_shape(dirs, speeds, 256);

    // oracle: discrete min over a 4096-direction xi grid
    auto oracle = [&](Vec2 e) {
        double best = 1e300;
        for (Vec2 xi : uniform_dirs(4096)) {
            double d = dot(xi, e);
            if (d > 0) best = std::min(best, ellipse_speed(xi) / d);
        }
        return best;
    };
    for (size_t k = 0; k < w.eval_dirs.size(); k += 17)
        CHECK(w.radii[k] == doctest::Approx(oracle(w.eval_dirs[k])).epsilon(5e-3));

    // the support function of the ellipse with semiaxes (1, 2)
    auto wy = wulff_shape(dirs, speeds);  // evaluate on the table directions
    for (size_t k = 0; k < wy.eval_dirs.size(); ++k) {
        if (std::abs(wy.eval_dirs[k].y - 1.0) < 1e-12) CHECK(wy.radii[k] == doctest::Approx(2.0));
        if (std::abs(wy.eval_dirs[k].x - 1.0) < 1e-12) CHECK(wy.radii[k] == doctest::Approx(1.0));
    }
}

TEST_CASE("validation: sparse tables and bad speeds are rejected") {
    CHECK_THROWS_AS(wulff_shape({{1, 0}, {0, 1}}, {1.0, 1.0}), std::invalid_argument);
    // 8 directions crowded into a quadrant: insufficient coverage
    std::vector<Vec2> crowded;
    std::vector<double> sp(8, 1.0);
    for (int k = 0; k < 8; ++k) {
        double th = 0.1 * k;
        crowded.push_back({std::cos(th), std::sin(th)});
    }
    CHECK_THROWS_AS(wulff_shape(crowded, sp), std::invalid_argument);
    auto dirs = uniform_dirs(16);
    std::vector<double> bad(16, 1.0);
    bad[3] = 0.0;
    CHECK_THROWS_AS(wulff_shape(dirs, bad), std::invalid_argument);
}

TEST_CASE("homogeneity: scaling speeds scales radii and keeps minimizers") {
    auto dirs = uniform_dirs(32);
    std::vector<double> speeds, speeds3;
    for (Vec2 d : dirs) {
        speeds.push_back(ellipse_speed(d));
        speeds3.push_back(3.5 * ellipse_speed(d));
    }
    auto w1 = wulff_shape(dirs, speeds);
    auto w3 = wulff_shape(dirs, speeds3);
    for (size_t k = 0; k < w1.radii.size(); ++k) {
        CHECK(w3.radii[k] == doctest::Approx(3.5 * w1.radii[k]).epsilon(1e-13));
        CHECK(w3.minimizers[k] == w1.minimizers[k]);
    }
    CHECK(w1.min_radius() > 0.0);
}

TEST_CASE("halfspace containment with equality at the argmin") {
    auto dirs = uniform_dirs(48);
    std::vector<double> speeds;
    for (Vec2 d : dirs) speeds.push_back(ellipse_speed(d));
    auto w = wulff_shape(dirs, speeds);
    for (size_t k = 0; k < w.vertices.size(); ++k) {
        Vec2 z = w.vertices[k];
        double eq_gap = 1e300;
        for (size_t j = 0; j < dirs.size(); ++j) {
            double slackness = speeds[j] - dot(z, dirs[j]);
            CHECK(slackness >= -1e-10);
            eq_gap = std::min(eq_gap, std::abs(slackness));
        }
        CHECK(eq_gap <= 1e-10);  // the argmin halfspace is active
    }
}

TEST_CASE("radial polygon agrees with halfspace clipping") {
    auto dirs = uniform_dirs(64);
    std::vector<double> speeds;
    for (Vec2 d : dirs) speeds.push_back(ellipse_speed(d));
    auto w = wulff_shape(dirs, speeds);
    auto clipped = halfspace_polygon(dirs, speeds);
    REQUIRE(clipped.size() >= 8);
    // every clipped vertex lies on the radial boundary within discretization
    for (Vec2 v : clipped) {
        Vec2 e = hat(v);
        double best = 1e300;
        for (size_t j = 0; j < dirs.size(); ++j) {
            double d = dot(dirs[j], e);
            if (d > 0) best = std::min(best, speeds[j] / d);
        }
        CHECK(norm(v) == doctest::Approx(best).epsilon(1e-9));
    }
}

TEST_CASE("regular FG identity on disk and ellipse") {
    auto dirs = uniform_dirs(64);
    std::vector<double> disk_speeds(dirs.size(), 1.0);
    auto disk = wulff_shape(dirs, disk_speeds);
    auto rep = regular_fg_check(disk, 32);
    CHECK(rep.max_edge_residual < 2e-3);   // inscribed-polygon sagitta
    CHECK(rep.max_vertex_residual < 2e-3);

    std::vector<double> es;
    for (Vec2 d : dirs) es.push_back(ellipse_speed(d));
    auto ell = wulff_shape(dirs, es);
    auto rep2 = regular_fg_check(ell, 32);
    CHECK(rep2.max_edge_residual < 1.2e-2);
}

TEST_CASE("shifted cone shapes carry the paper geometry") {
    SUBCASE("alpha = -1: smoothed apex passes through (0, cstar)") {
        auto s = ShiftedShape::cone(-1.0, 1.0);
        CHECK(s.contains({0, 0.99}));
        CHECK_FALSE(s.contains({0, 1.01}));
        CHECK(std::abs(s.signed_distance({0, 1.0})) < 1e-12);
        // boundary polyline sits on the zero level of the signed distance
        for (Vec2 p : s.boundary_polyline(5.0, 64)) CHECK(std::abs(s.signed_distance(p)) < 1e-9);
    }
    SUBCASE("alpha = +1: vertex at (0, sqrt 2 cstar)") {
        auto s = ShiftedShape::cone(1.0, 1.0);
        double m = std::sqrt(2.0);
        CHECK(s.contains({0, m - 1e-6}));
        CHECK_FALSE(s.contains({0, m + 1e-6}));
        CHECK(std::abs(s.signed_distance({0, m})) < 1e-12);
    }
    SUBCASE("halfspace membership") {
        auto s = ShiftedShape::halfspace({0, 1}, 0.4);
        CHECK(s.contains({0, 0.39}));
        CHECK_FALSE(s.contains({0, 0.41}));
    }
}

TEST_CASE("ball conditions: disk, smooth cone, and vertex") {
    SUBCASE("disk") {
        auto dirs = uniform_dirs(512);
        std::vector<double> sp(dirs.size(), 1.0);
        auto disk = wulff_shape(dirs, sp);
        auto probe = ball_condition_probe(disk.ref(), {1, 0}, 0.5);
        CHECK(probe.interior);
        CHECK(probe.exterior);
        CHECK(dot(probe.normal, Vec2{1, 0}) == doctest::Approx(1.0).epsilon(1e-3));
    }
    SUBCASE("alpha < 0 cone satisfies both conditions everywhere") {
        auto s = ShiftedShape::cone(-1.0, 1.0);
        for (Vec2 z : s.boundary_polyline(3.0, 16)) {
            auto probe = ball_condition_probe(s.ref(), z, 0.5);
            CHECK(probe.interior);
            CHECK(probe.exterior);
        }
    }
    SUBCASE("alpha > 0 vertex fails the exterior condition only") {
        auto s = ShiftedShape::cone(1.0, 1.0);
        auto probe = ball_condition_probe(s.ref(), {0, std::sqrt(2.0)}, 0.5);
        CHECK(probe.interior);
        CHECK_FALSE(probe.exterior);
    }
}

TEST_CASE("cone conditions: concentric geometry passes, non-star shape fails") {
    auto dirs = uniform_dirs(256);
    std::vector<double> sp(dirs.size(), 1.0);
    auto disk = wulff_shape(dirs, sp);
    std::vector<Vec2> samples;
    for (int k = 0; k < 8; ++k) {
        double th = 2 * kPi * k / 8;
        samples.push_back({std::cos(th), std::sin(th)});
    }
    auto rep = cone_conditions_check(disk.ref(), 0.5, samples, {0.25, 0.5, 0.75, 1.5, 2.0});
    CHECK(rep.all_pass);
    CHECK(rep.worst_margin > 0.1);  // (1-l)(w - gamma) at l = 3/4

    // annulus: star-shapedness w.r.t. the origin fails
    ShapeRef annulus;
    annulus.inside = [](Vec2 p) {
        double r = norm(p);
        return r > 1.0 && r < 2.0;
    };
    annulus.sdf = [](Vec2 p) {
        double r = norm(p);
        return std::min(r - 1.0, 2.0 - r);
    };
    auto bad = cone_conditions_check(annulus, 0.5, {{2.0, 0.0}}, {0.25, 0.5});
    CHECK_FALSE(bad.all_pass);
    CHECK(bad.worst_margin < 0.0);
}
