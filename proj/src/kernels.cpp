#include "frontlab/core.hpp"

#include <algorithm>
#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace frontlab::kernels {

namespace {
std::atomic<Exec> g_exec{Exec::parallel};

// Fixed chunk size, independent of the number of workers, so that
// reductions sum partials in the same order for any thread count.
constexpr int kChunk = 8192;
}  // namespace

Exec execution() { return g_exec.load(); }
void set_execution(Exec mode) { g_exec.store(mode); }

void for_range(int n, const std::function<void(int)>& body) {
#ifdef _OPENMP
    if (g_exec.load() == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
#endif
    for (int i = 0; i < n; ++i) body(i);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    const int n = static_cast<int>(a.size());
    const int nchunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(static_cast<size_t>(std::max(nchunks, 1)), 0.0);
    for_range(nchunks, [&](int c) {
        const int lo = c * kChunk;
        const int hi = std::min(lo + kChunk, n);
        double s = 0.0;
        for (int i = lo; i < hi; ++i) s += a[i] * b[i];
        partial[c] = s;
    });
    double total = 0.0;
    for (int c = 0; c < nchunks; ++c) total += partial[c];
    return total;
}

double max_abs(const std::vector<double>& a) {
    const int n = static_cast<int>(a.size());
    const int nchunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(static_cast<size_t>(std::max(nchunks, 1)), 0.0);
    for_range(nchunks, [&](int c) {
        const int lo = c * kChunk;
        const int hi = std::min(lo + kChunk, n);
        double m = 0.0;
        for (int i = lo; i < hi; ++i) m = std::max(m, std::abs(a[i]));
        partial[c] = m;
    });
    double m = 0.0;
    for (int c = 0; c < nchunks; ++c) m = std::max(m, partial[c]);
    return m;
}

double min_value(const std::vector<double>& a) {
    const int n = static_cast<int>(a.size());
    double m = a.empty() ? 0.0 : a[0];
    for (int i = 1; i < n; ++i) m = std::min(m, a[i]);
    return m;
}

double max_value(const std::vector<double>& a) {
    const int n = static_cast<int>(a.size());
    double m = a.empty() ? 0.0 : a[0];
    for (int i = 1; i < n; ++i) m = std::max(m, a[i]);
    return m;
}

void axpy(double s, const std::vector<double>& x, std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    const int nchunks = (n + kChunk - 1) / kChunk;
    for_range(nchunks, [&](int c) {
        const int lo = c * kChunk;
        const int hi = std::min(lo + kChunk, n);
        for (int i = lo; i < hi; ++i) y[i] += s * x[i];
    });
}

}  // namespace frontlab::kernels
