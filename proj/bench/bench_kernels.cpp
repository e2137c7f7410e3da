// Timing comparison of the OpenMP kernels against the serial reference:
// stencil application, IMEX stepping, and the reduction primitives.
#include <chrono>
#include <cstdio>
#include <random>

#include "frontlab/medium.hpp"
#include "frontlab/solver.hpp"

using namespace frontlab;
using clk = std::chrono::high_resolution_clock;

namespace {

double seconds_since(clk::time_point t0) {
    return std::chrono::duration<double>(clk::now() - t0).count();
}

template <class F>
double time_best_of(int reps, F&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = clk::now();
        fn();
        best = std::min(best, seconds_since(t0));
    }
    return best;
}

}  // namespace

int main() {
    auto m = build_medium(2, 4, CoefficientField::oscillating(1.0, 0.3).with_cellular(0.4),
                          Reaction::periodic_bistable(0.3, 0.1));
    GridField u = GridField::box(40.0, 0.25, 2);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (auto& v : u.v) v = dist(rng);
    std::printf("grid %d x %d (%d nodes)\n", u.nx, u.ny, u.size());

    std::vector<double> a(u.v), b(u.v);

    struct Row {
        const char* name;
        double serial, parallel;
    };
    std::vector<Row> rows;

    auto bench_mode = [&](kernels::Exec mode, auto&& fn) {
        kernels::set_execution(mode);
        return time_best_of(3, fn);
    };

    {
        auto fn = [&] {
            GridField out = apply_operator(m, u);
            (void)out;
        };
        rows.push_back({"apply_operator", bench_mode(kernels::Exec::serial, fn),
                        bench_mode(kernels::Exec::parallel, fn)});
    }
    {
        auto fn = [&] {
            GridField out = step(m, u, 0.05);
            (void)out;
        };
        rows.push_back({"imex_step", bench_mode(kernels::Exec::serial, fn),
                        bench_mode(kernels::Exec::parallel, fn)});
    }
    {
        volatile double sink = 0;
        auto fn = [&] {
            for (int r = 0; r < 50; ++r) sink = kernels::dot(a, b);
        };
        rows.push_back({"dot x50", bench_mode(kernels::Exec::serial, fn),
                        bench_mode(kernels::Exec::parallel, fn)});
    }

    std::printf("%-16s %12s %12s %9s\n", "kernel", "serial [s]", "parallel [s]", "speedup");
    for (const auto& r : rows)
        std::printf("%-16s %12.5f %12.5f %8.2fx\n", r.name, r.serial, r.parallel,
                    r.serial / r.parallel);

    kernels::set_execution(kernels::Exec::parallel);
    return 0;
}
