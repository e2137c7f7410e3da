#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "frontlab/core.hpp"
#include "frontlab/medium.hpp"
#include "frontlab/solver.hpp"

using namespace frontlab;

namespace {

std::vector<double> random_vector(size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

}  // namespace

TEST_CASE("dot and max_abs agree bit-for-bit between serial and parallel") {
    auto a = random_vector(100001, 7);
    auto b = random_vector(100001, 8);

    kernels::set_execution(kernels::Exec::serial);
    double ds = kernels::dot(a, b);
    double ms = kernels::max_abs(a);

    kernels::set_execution(kernels::Exec::parallel);
    double dp = kernels::dot(a, b);
    double mp = kernels::max_abs(a);

    CHECK(ds == dp);
    CHECK(ms == mp);
}

TEST_CASE("stencil application is identical under both execution modes") {
    auto medium = build_medium(2, 4,
                               CoefficientField::oscillating(1.0, 0.3).with_shear(0.2),
                               Reaction::bistable(0.3));
    GridField u = GridField::box(4.0, 0.25, 2);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (auto& x : u.v) x = dist(rng);

    kernels::set_execution(kernels::Exec::serial);
    GridField a = apply_operator(medium, u);
    GridField s1 = step(medium, u, 0.01);

    kernels::set_execution(kernels::Exec::parallel);
    GridField b = apply_operator(medium, u);
    GridField s2 = step(medium, u, 0.01);

    for (size_t k = 0; k < a.v.size(); ++k) {
        CHECK(a.v[k] == b.v[k]);
        CHECK(s1.v[k] == s2.v[k]);
    }
    kernels::set_execution(kernels::Exec::parallel);
}

TEST_CASE("axpy matches reference") {
    auto x = random_vector(30000, 3);
    std::vector<double> y1(x.size(), 0.5), y2 = y1;
    kernels::set_execution(kernels::Exec::serial);
    kernels::axpy(2.5, x, y1);
    kernels::set_execution(kernels::Exec::parallel);
    kernels::axpy(2.5, x, y2);
    for (size_t k = 0; k < x.size(); ++k) CHECK(y1[k] == y2[k]);
}
