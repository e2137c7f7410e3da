#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "frontlab/shooting.hpp"

using namespace frontlab;

TEST_CASE("cubic bistable a=0.25 gives c = sqrt(2)(1/2 - a)") {
    auto r = planar_front_shooting(Reaction::bistable(0.25));
    REQUIRE(r.status == FrontStatus::ok);
    CHECK(r.c == doctest::Approx(std::sqrt(2.0) * 0.25).epsilon(1e-5));

    // closed-form heteroclinic 1 / (1 + exp(z / sqrt 2)) with phi(0) = 1/2
    double worst = 0.0;
    for (double z = -8.0; z <= 8.0; z += 0.05) {
        double exact = 1.0 / (1.0 + std::exp(z / std::sqrt(2.0)));
        worst = std::max(worst, std::abs(r.eval(z) - exact));
    }
    CHECK(worst < 1e-4);

    CHECK(r.lambda0 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-5));
    // tail envelope holds by construction and is meaningful
    CHECK(r.lambda0 > 0.0);
    CHECK(r.C > 0.0);
    CHECK(r.C < 50.0);
}

TEST_CASE("balanced cubic has no positive-speed front") {
    auto r = planar_front_shooting(Reaction::bistable(0.5));
    CHECK(r.status == FrontStatus::no_positive_front);
}

TEST_CASE("negative-mass cubic has no positive-speed front") {
    auto r = planar_front_shooting(Reaction::bistable(0.7));
    CHECK(r.status == FrontStatus::no_positive_front);
}

TEST_CASE("ignition front has a unique positive speed") {
    auto r = planar_front_shooting(Reaction::ignition(0.3));
    REQUIRE(r.status == FrontStatus::ok);
    CHECK(r.c > 0.0);
    // the profile is monotone and spans (0, 1)
    for (size_t k = 1; k < r.phi.size(); ++k) CHECK(r.phi[k] <= r.phi[k - 1] + 1e-12);
    CHECK(r.phi.front() > 0.999);
    CHECK(r.phi.back() < 1e-6);
    CHECK(r.lambda0 == doctest::Approx(r.c).epsilon(1e-9));
}

TEST_CASE("speed increases with the cubic imbalance") {
    double c1 = planar_front_shooting(Reaction::bistable(0.35)).c;
    double c2 = planar_front_shooting(Reaction::bistable(0.25)).c;
    double c3 = planar_front_shooting(Reaction::bistable(0.15)).c;
    CHECK(c1 < c2);
    CHECK(c2 < c3);
    CHECK(c1 == doctest::Approx(std::sqrt(2.0) * 0.15).epsilon(1e-4));
}

TEST_CASE("kpp is rejected") {
    CHECK_THROWS_AS(planar_front_shooting(Reaction::kpp()), std::invalid_argument);
}
