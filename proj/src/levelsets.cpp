#include "frontlab/levelsets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace frontlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool polygon_contains(const std::vector<Vec2>& poly, Vec2 p) {
    bool in = false;
    size_t n = poly.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        bool cross = ((poly[i].y > p.y) != (poly[j].y > p.y)) &&
                     (p.x < (poly[j].x - poly[i].x) * (p.y - poly[i].y) /
                                    (poly[j].y - poly[i].y) +
                                poly[i].x);
        if (cross) in = !in;
    }
    return in;
}

// Felzenszwalb-Huttenlocher 1-D squared distance transform
void edt_1d(const std::vector<double>& f, std::vector<double>& d, std::vector<int>& v,
            std::vector<double>& zbuf) {
    int n = static_cast<int>(f.size());
    d.assign(n, 0.0);
    v.assign(n, 0);
    zbuf.assign(n + 1, 0.0);
    int k = 0;
    v[0] = 0;
    zbuf[0] = -kInf;
    zbuf[1] = kInf;
    for (int q = 1; q < n; ++q) {
        double s;
        while (true) {
            int p = v[k];
            s = ((f[q] + q * q) - (f[p] + p * p)) / (2.0 * q - 2.0 * p);
            if (s <= zbuf[k]) {
                --k;
            } else {
                break;
            }
        }
        ++k;
        v[k] = q;
        zbuf[k] = s;
        zbuf[k + 1] = kInf;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (zbuf[k + 1] < q) ++k;
        int p = v[k];
        d[q] = (q - p) * (q - p) + f[p];
    }
}

// squared distance (in pixels) to the nearest true pixel of the mask
std::vector<double> edt_2d(const std::vector<std::uint8_t>& mask, int nx, int ny) {
    const double big = 1e18;
    std::vector<double> g(static_cast<size_t>(nx) * ny);
    std::vector<double> col(ny), dcol(ny), row(nx), drow(nx), zbuf;
    std::vector<int> v;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) col[j] = mask[static_cast<size_t>(j) * nx + i] ? 0.0 : big;
        edt_1d(col, dcol, v, zbuf);
        for (int j = 0; j < ny; ++j) g[static_cast<size_t>(j) * nx + i] = dcol[j];
    }
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) row[i] = g[static_cast<size_t>(j) * nx + i];
        edt_1d(row, drow, v, zbuf);
        for (int i = 0; i < nx; ++i) g[static_cast<size_t>(j) * nx + i] = drow[i];
    }
    return g;
}

}  // namespace

bool RasterMask::contains(Vec2 p) const {
    int i = static_cast<int>(std::lround((p.x - x0) / hr));
    int j = static_cast<int>(std::lround((p.y - y0) / hr));
    if (i < 0 || j < 0 || i >= nx || j >= ny) return false;
    return at(i, j);
}

bool PlanarSet::contains(Vec2 p) const {
    switch (kind) {
        case Kind::empty:
        case Kind::points:
            return false;
        case Kind::polygon:
            return polygon_contains(polygon, p);
        case Kind::raster:
            return mask.contains(p);
    }
    return false;
}

PlanarSet PlanarSet::scaled(double s) const {
    PlanarSet out = *this;
    for (auto& p : out.boundary) p = p * s;
    for (auto& p : out.polygon) p = p * s;
    out.mask.x0 *= s;
    out.mask.y0 *= s;
    out.mask.hr *= s;
    return out;
}

void PlanarSet::bbox(Vec2& lo, Vec2& hi) const {
    lo = {1e300, 1e300};
    hi = {-1e300, -1e300};
    auto grow = [&](Vec2 p) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    };
    for (const auto& p : boundary) grow(p);
    for (const auto& p : polygon) grow(p);
    if (kind == Kind::raster) {
        for (int j = 0; j < mask.ny; ++j)
            for (int i = 0; i < mask.nx; ++i)
                if (mask.at(i, j)) grow({mask.x0 + i * mask.hr, mask.y0 + j * mask.hr});
    }
}

PlanarSet PlanarSet::empty_set() { return {}; }

PlanarSet PlanarSet::from_points(std::vector<Vec2> pts) {
    PlanarSet s;
    if (pts.empty()) return s;
    s.kind = Kind::points;
    s.boundary = std::move(pts);
    return s;
}

PlanarSet PlanarSet::from_polygon(std::vector<Vec2> poly, int boundary_samples) {
    PlanarSet s;
    if (poly.size() < 3) return s;
    s.kind = Kind::polygon;
    s.polygon = std::move(poly);
    double per = 0.0;
    size_t n = s.polygon.size();
    for (size_t k = 0; k < n; ++k) per += norm(s.polygon[(k + 1) % n] - s.polygon[k]);
    double step = per / boundary_samples;
    for (size_t k = 0; k < n; ++k) {
        Vec2 a = s.polygon[k], b = s.polygon[(k + 1) % n];
        double len = norm(b - a);
        int m = std::max(1, static_cast<int>(len / step));
        for (int q = 0; q < m; ++q) s.boundary.push_back(a + (b - a) * (static_cast<double>(q) / m));
    }
    return s;
}

PlanarSet upper_level_set(const GridField& u, double lambda) {
    if (lambda <= 0.0 || lambda >= 1.0)
        throw std::invalid_argument("level must lie in (0, 1)");
    PlanarSet s;
    double umax = u.max();
    if (umax <= lambda) return s;  // empty

    s.kind = PlanarSet::Kind::raster;
    s.mask.x0 = u.x0;
    s.mask.y0 = u.y0;
    s.mask.hr = u.h;
    s.mask.nx = u.nx;
    s.mask.ny = u.ny;
    s.mask.inside.assign(u.v.size(), 0);
    for (size_t k = 0; k < u.v.size(); ++k) s.mask.inside[k] = u.v[k] > lambda ? 1 : 0;

    // marching-squares edge crossings
    for (int j = 0; j < u.ny; ++j) {
        for (int i = 0; i + 1 < u.nx; ++i) {
            double a = u.at(i, j), b = u.at(i + 1, j);
            if ((a > lambda) != (b > lambda)) {
                double t = (a - lambda) / (a - b);
                s.boundary.push_back({u.x(i) + t * u.h, u.y(j)});
            }
        }
    }
    for (int j = 0; j + 1 < u.ny; ++j) {
        for (int i = 0; i < u.nx; ++i) {
            double a = u.at(i, j), b = u.at(i, j + 1);
            if ((a > lambda) != (b > lambda)) {
                double t = (a - lambda) / (a - b);
                s.boundary.push_back({u.x(i), u.y(j) + t * u.h});
            }
        }
    }
    return s;
}

namespace {

struct CommonRaster {
    double x0, y0, hr;
    int nx, ny;
};

std::vector<std::uint8_t> rasterize(const PlanarSet& s, const CommonRaster& R, const Vec2* wlo,
                                    const Vec2* whi) {
    std::vector<std::uint8_t> mask(static_cast<size_t>(R.nx) * R.ny, 0);
    for (int j = 0; j < R.ny; ++j) {
        for (int i = 0; i < R.nx; ++i) {
            Vec2 p{R.x0 + i * R.hr, R.y0 + j * R.hr};
            if (wlo && (p.x < wlo->x || p.y < wlo->y || p.x > whi->x || p.y > whi->y)) continue;
            if (s.contains(p)) mask[static_cast<size_t>(j) * R.nx + i] = 1;
        }
    }
    auto stamp = [&](Vec2 p) {
        if (wlo && (p.x < wlo->x || p.y < wlo->y || p.x > whi->x || p.y > whi->y)) return;
        int i = static_cast<int>(std::lround((p.x - R.x0) / R.hr));
        int j = static_cast<int>(std::lround((p.y - R.y0) / R.hr));
        if (i >= 0 && j >= 0 && i < R.nx && j < R.ny)
            mask[static_cast<size_t>(j) * R.nx + i] = 1;
    };
    for (const auto& p : s.boundary) stamp(p);
    return mask;
}

double directed_max(const std::vector<std::uint8_t>& from, const std::vector<double>& dist_to,
                    const CommonRaster& R) {
    double worst = 0.0;
    for (size_t k = 0; k < from.size(); ++k)
        if (from[k]) worst = std::max(worst, dist_to[k]);
    return std::sqrt(worst) * R.hr;
}

double hausdorff_impl(const PlanarSet& A, const PlanarSet& B, int raster_n, const Vec2* wlo,
                      const Vec2* whi) {
    bool ea = A.is_empty(), eb = B.is_empty();
    if (ea && eb) return 0.0;
    if (ea || eb) return kInf;

    Vec2 loA, hiA, loB, hiB;
    A.bbox(loA, hiA);
    B.bbox(loB, hiB);
    Vec2 lo{std::min(loA.x, loB.x), std::min(loA.y, loB.y)};
    Vec2 hi{std::max(hiA.x, hiB.x), std::max(hiA.y, hiB.y)};
    if (wlo) {
        lo = {std::max(lo.x, wlo->x), std::max(lo.y, wlo->y)};
        hi = {std::min(hi.x, whi->x), std::min(hi.y, whi->y)};
    }
    double span = std::max(hi.x - lo.x, hi.y - lo.y);
    if (span <= 0) span = 1.0;
    CommonRaster R;
    R.hr = span / (raster_n - 3);
    R.x0 = lo.x - R.hr;
    R.y0 = lo.y - R.hr;
    R.nx = static_cast<int>((hi.x - lo.x) / R.hr) + 3;
    R.ny = static_cast<int>((hi.y - lo.y) / R.hr) + 3;

    auto maskA = rasterize(A, R, wlo, whi);
    auto maskB = rasterize(B, R, wlo, whi);
    bool anyA = std::any_of(maskA.begin(), maskA.end(), [](auto v) { return v != 0; });
    bool anyB = std::any_of(maskB.begin(), maskB.end(), [](auto v) { return v != 0; });
    if (!anyA && !anyB) return 0.0;
    if (!anyA || !anyB) return kInf;

    auto dA = edt_2d(maskA, R.nx, R.ny);
    auto dB = edt_2d(maskB, R.nx, R.ny);
    return std::max(directed_max(maskA, dB, R), directed_max(maskB, dA, R));
}

}  // namespace

double hausdorff(const PlanarSet& A, const PlanarSet& B, int raster_n) {
    return hausdorff_impl(A, B, raster_n, nullptr, nullptr);
}

double hausdorff_windowed(const PlanarSet& A, const PlanarSet& B, Vec2 lo, Vec2 hi, int raster_n) {
    return hausdorff_impl(A, B, raster_n, &lo, &hi);
}

std::vector<ConvergencePoint> rescaled_convergence(const Trajectory& traj, double lambda,
                                                   const PlanarSet& target,
                                                   const LevelWindow& window, int raster_n) {
    std::vector<ConvergencePoint> series;
    for (size_t k = 0; k < traj.times.size(); ++k) {
        double t = traj.times[k];
        if (t <= 0) continue;
        PlanarSet e = upper_level_set(traj.snaps[k], lambda).scaled(1.0 / t);
        double d = window.active
                       ? hausdorff_windowed(e, target, window.lo, window.hi, raster_n)
                       : hausdorff(e, target, raster_n);
        series.push_back({t, d});
    }
    return series;
}

PlanarSet shape_from_levelset(const Trajectory& traj, double lambda, double t_final) {
    const GridField& u = traj.at_time(t_final);
    return upper_level_set(u, lambda).scaled(1.0 / t_final);
}

ShapeRef raster_shape_ref(const PlanarSet& set, int raster_n) {
    if (set.is_empty()) throw std::invalid_argument("cannot build a shape from the empty set");
    Vec2 lo, hi;
    set.bbox(lo, hi);
    double span = std::max(hi.x - lo.x, hi.y - lo.y);
    if (span <= 0) span = 1.0;
    auto R = std::make_shared<CommonRaster>();
    R->hr = span / (raster_n - 5);
    R->x0 = lo.x - 2 * R->hr;
    R->y0 = lo.y - 2 * R->hr;
    R->nx = static_cast<int>((hi.x - lo.x) / R->hr) + 5;
    R->ny = static_cast<int>((hi.y - lo.y) / R->hr) + 5;

    auto mask = rasterize(set, *R, nullptr, nullptr);
    auto inv = mask;
    for (auto& v : inv) v = v ? 0 : 1;
    auto dist_to_set = edt_2d(mask, R->nx, R->ny);
    auto dist_to_out = edt_2d(inv, R->nx, R->ny);
    auto sdf = std::make_shared<std::vector<double>>(mask.size());
    for (size_t k = 0; k < mask.size(); ++k) {
        double d = mask[k] ? std::sqrt(dist_to_out[k]) : -std::sqrt(dist_to_set[k]);
        (*sdf)[k] = d * R->hr;
    }

    auto sample = [R, sdf](Vec2 p) -> double {
        double fx = (p.x - R->x0) / R->hr;
        double fy = (p.y - R->y0) / R->hr;
        double cx = std::clamp(fx, 0.0, static_cast<double>(R->nx - 1));
        double cy = std::clamp(fy, 0.0, static_cast<double>(R->ny - 1));
        int i = std::min(static_cast<int>(cx), R->nx - 2);
        int j = std::min(static_cast<int>(cy), R->ny - 2);
        double tx = cx - i, ty = cy - j;
        auto v = [&](int ii, int jj) { return (*sdf)[static_cast<size_t>(jj) * R->nx + ii]; };
        double base = (1 - tx) * (1 - ty) * v(i, j) + tx * (1 - ty) * v(i + 1, j) +
                      (1 - tx) * ty * v(i, j + 1) + tx * ty * v(i + 1, j + 1);
        // beyond the raster (set is inside by construction): keep 1-Lipschitz
        double ex = (fx - cx) * R->hr, ey = (fy - cy) * R->hr;
        return base - std::sqrt(ex * ex + ey * ey);
    };
    ShapeRef ref;
    ref.sdf = sample;
    ref.inside = [sample](Vec2 p) { return sample(p) > 0.0; };
    ref.slack = 3.0 * R->hr;
    return ref;
}

}  // namespace frontlab
