#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "frontlab/medium.hpp"

using namespace frontlab;

TEST_CASE("constant-coefficient medium passes every check") {
    auto m = build_medium(2, 16, CoefficientField::identity(), Reaction::bistable(0.25));
    auto rep = validate_medium(m);
    CHECK(rep.all_pass());
    CHECK(rep.check("ellipticity").worst == doctest::Approx(1.0));
}

TEST_CASE("shear drift is divergence-free with zero average") {
    auto m = build_medium(2, 32, CoefficientField::identity().with_shear(0.4),
                          Reaction::bistable(0.25));
    auto rep = validate_medium(m);
    CHECK(rep.check("divergence-free").pass);
    CHECK(rep.check("zero-average").pass);
    CHECK(rep.check("periodicity").pass);
}

TEST_CASE("non-periodic drift fails periodicity and zero average") {
    CoefficientField c = CoefficientField::identity();
    c.q = [](Vec2 x) { return Vec2{x.x, 0.0}; };
    c.q_name = "linear";
    auto m = build_medium(2, 16, c, Reaction::bistable(0.25));
    auto rep = validate_medium(m);
    CHECK_FALSE(rep.check("periodicity").pass);
    CHECK_FALSE(rep.check("zero-average").pass);
}

TEST_CASE("validation is deterministic and idempotent") {
    auto m = build_medium(2, 16, CoefficientField::oscillating(1.0, 0.4).with_cellular(0.3),
                          Reaction::periodic_bistable(0.3, 0.1));
    auto r1 = validate_medium(m);
    auto r2 = validate_medium(m);
    REQUIRE(r1.checks.size() == r2.checks.size());
    for (size_t k = 0; k < r1.checks.size(); ++k) {
        CHECK(r1.checks[k].pass == r2.checks[k].pass);
        CHECK(r1.checks[k].worst == r2.checks[k].worst);
    }
}

TEST_CASE("built-in reactions vanish exactly at the endpoints") {
    std::vector<Reaction> reactions = {Reaction::bistable(0.25), Reaction::ignition(0.3),
                                       Reaction::kpp(), Reaction::periodic_bistable(0.3, 0.1)};
    for (const auto& r : reactions) {
        for (int i = 0; i < 7; ++i) {
            Vec2 x{i / 7.0, (6 - i) / 7.0};
            CHECK(r.f(x, 0.0) == 0.0);
            CHECK(r.f(x, 1.0) == 0.0);
        }
    }
}

TEST_CASE("weak stability holds for the cubic at delta 0.1") {
    auto m = build_medium(1, 16, CoefficientField::identity(), Reaction::bistable(0.25));
    CHECK(check_weak_stability(m, 0.1).ok);
}

TEST_CASE("weak stability fails for KPP with witness near zero") {
    auto m = build_medium(1, 16, CoefficientField::identity(), Reaction::kpp());
    auto r = check_weak_stability(m, 0.05);
    CHECK_FALSE(r.ok);
    CHECK(r.witness_s < 0.06);
}

TEST_CASE("weak stability holds for ignition with flat foot") {
    auto m = build_medium(1, 16, CoefficientField::identity(), Reaction::ignition(0.3));
    CHECK(check_weak_stability(m, 0.05).ok);
}

TEST_CASE("weak stability is monotone in delta") {
    auto m = build_medium(1, 16, CoefficientField::identity(), Reaction::bistable(0.25));
    std::vector<double> deltas = {0.02, 0.05, 0.08, 0.12, 0.2};
    bool prev = check_weak_stability(m, deltas.back()).ok;
    // if it holds at delta', it holds at any smaller delta
    for (auto it = deltas.rbegin(); it != deltas.rend(); ++it) {
        bool ok = check_weak_stability(m, *it).ok;
        if (prev) CHECK(ok);
        prev = ok;
    }
}

TEST_CASE("homogeneous invasion condition") {
    CHECK(check_homogeneous_invasion(Reaction::bistable(0.25)));   // tail integral 1/24
    CHECK_FALSE(check_homogeneous_invasion(Reaction::bistable(0.5)));  // balanced
    CHECK(check_homogeneous_invasion(Reaction::kpp()));
    CHECK_THROWS_AS(check_homogeneous_invasion(Reaction::periodic_bistable(0.3, 0.1)),
                    std::invalid_argument);
}

TEST_CASE("cubic tail integral matches the closed form") {
    // independent quadrature oracle for int_0^1 s(1-s)(s-a) ds = (1-2a)/12
    auto r = Reaction::bistable(0.25);
    int n = 200000;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        double a = static_cast<double>(i) / n, b = static_cast<double>(i + 1) / n;
        double mid = 0.5 * (a + b);
        s += (b - a) / 6 *
             (r.f({0, 0}, a) + 4 * r.f({0, 0}, mid) + r.f({0, 0}, b));
    }
    CHECK(s == doctest::Approx(1.0 / 24).epsilon(1e-9));
}

TEST_CASE("reaction table validates endpoints") {
    CHECK_THROWS(Reaction::table({0.0, 0.5, 1.0}, {0.1, 0.2, 0.0}));
    auto r = Reaction::table({0.0, 0.25, 0.75, 1.0}, {0.0, -0.05, 0.2, 0.0});
    CHECK(r.f({0, 0}, 0.0) == 0.0);
    CHECK(r.f({0, 0}, 1.0) == 0.0);
    CHECK(r.f({0, 0}, 0.5) == doctest::Approx(0.075));
}
