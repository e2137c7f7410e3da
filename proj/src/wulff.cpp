#include "frontlab/wulff.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace frontlab {

namespace {

constexpr double kPi = std::numbers::pi;

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double len2 = dot(ab, ab);
    double t = len2 > 0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
    return norm(p - (a + ab * t));
}

bool polygon_contains(const std::vector<Vec2>& poly, Vec2 p) {
    // crossing number; works for simple polygons
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

double polygon_boundary_distance(const std::vector<Vec2>& poly, Vec2 p) {
    double d = 1e300;
    size_t n = poly.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++)
        d = std::min(d, point_segment_distance(p, poly[j], poly[i]));
    return d;
}

}  // namespace

bool WulffShape::contains(Vec2 p) const { return polygon_contains(vertices, p); }

double WulffShape::signed_distance(Vec2 p) const {
    double d = polygon_boundary_distance(vertices, p);
    return contains(p) ? d : -d;
}

double WulffShape::min_radius() const {
    return *std::min_element(radii.begin(), radii.end());
}

double WulffShape::max_radius() const {
    return *std::max_element(radii.begin(), radii.end());
}

ShapeRef WulffShape::ref() const {
    // polygonization sagitta: inscribed n-gon of a curve with radius ~ R
    double n = static_cast<double>(std::max<size_t>(eval_dirs.size(), 3));
    double sagitta = max_radius() * (2 * kPi / n) * (2 * kPi / n) / 8.0;
    return ShapeRef{[*this](Vec2 p) { return contains(p); },
                    [*this](Vec2 p) { return signed_distance(p); }, sagitta + 1e-9};
}

WulffShape wulff_shape(const std::vector<Vec2>& directions, const std::vector<double>& speeds,
                       int n_eval, double tie_tol_rel) {
    if (directions.size() != speeds.size())
        throw std::invalid_argument("directions and speeds must match");
    if (directions.size() < 8)
        throw std::invalid_argument("wulff shape needs at least 8 directions");
    double cmax = 0.0;
    for (double c : speeds) {
        if (!(c > 0)) throw std::invalid_argument("wulff shape requires positive speeds");
        cmax = std::max(cmax, c);
    }

    std::vector<double> angles(directions.size());
    for (size_t k = 0; k < directions.size(); ++k)
        angles[k] = std::atan2(directions[k].y, directions[k].x);
    std::vector<size_t> order(directions.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return angles[a] < angles[b]; });
    for (size_t k = 0; k < order.size(); ++k) {
        double a0 = angles[order[k]];
        double a1 = k + 1 < order.size() ? angles[order[k + 1]] : angles[order[0]] + 2 * kPi;
        if (a1 - a0 > kPi / 2 + 1e-12)
            throw std::invalid_argument("insufficient angular coverage of the speed table");
    }

    WulffShape w;
    w.speed_dirs = directions;
    w.speeds = speeds;
    if (n_eval <= 0) {
        for (size_t k : order) w.eval_dirs.push_back(directions[k]);
    } else {
        for (int k = 0; k < n_eval; ++k) {
            double th = 2 * kPi * k / n_eval;
            w.eval_dirs.push_back({std::cos(th), std::sin(th)});
        }
    }

    const double tie_tol = tie_tol_rel * cmax;
    for (Vec2 e : w.eval_dirs) {
        double best = 1e300;
        for (size_t k = 0; k < directions.size(); ++k) {
            double d = dot(directions[k], e);
            if (d <= 0) continue;
            best = std::min(best, speeds[k] / d);
        }
        std::vector<int> mins;
        for (size_t k = 0; k < directions.size(); ++k) {
            double d = dot(directions[k], e);
            if (d <= 0) continue;
            if (speeds[k] / d <= best + tie_tol) mins.push_back(static_cast<int>(k));
        }
        w.radii.push_back(best);
        w.minimizers.push_back(std::move(mins));
        w.vertices.push_back(e * best);
    }
    return w;
}

std::vector<Vec2> halfspace_polygon(const std::vector<Vec2>& directions,
                                    const std::vector<double>& speeds) {
    double cmax = *std::max_element(speeds.begin(), speeds.end());
    double B = 2 * cmax;
    std::vector<Vec2> poly = {{-B, -B}, {B, -B}, {B, B}, {-B, B}};
    for (size_t k = 0; k < directions.size(); ++k) {
        Vec2 xi = directions[k];
        double c = speeds[k];
        std::vector<Vec2> next;
        size_t n = poly.size();
        for (size_t i = 0; i < n; ++i) {
            Vec2 a = poly[i], b = poly[(i + 1) % n];
            double fa = c - dot(a, xi), fb = c - dot(b, xi);  // >= 0 keeps
            if (fa >= 0) next.push_back(a);
            if ((fa >= 0) != (fb >= 0)) {
                double t = fa / (fa - fb);
                next.push_back(a + (b - a) * t);
            }
        }
        poly.swap(next);
        if (poly.empty()) break;
    }
    return poly;
}

double interpolate_speed(const std::vector<Vec2>& directions, const std::vector<double>& speeds,
                         Vec2 nu) {
    std::vector<size_t> order(directions.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> angles(directions.size());
    for (size_t k = 0; k < directions.size(); ++k)
        angles[k] = std::atan2(directions[k].y, directions[k].x);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return angles[a] < angles[b]; });

    double th = std::atan2(nu.y, nu.x);
    for (size_t k = 0; k < order.size(); ++k) {
        double a0 = angles[order[k]];
        double a1 = k + 1 < order.size() ? angles[order[k + 1]] : angles[order[0]] + 2 * kPi;
        double tt = th;
        if (tt < a0) tt += 2 * kPi;
        if (tt >= a0 && tt <= a1) {
            double t = (a1 > a0) ? (tt - a0) / (a1 - a0) : 0.0;
            double c0 = speeds[order[k]];
            double c1 = speeds[order[(k + 1) % order.size()]];
            return (1 - t) * c0 + t * c1;
        }
    }
    return speeds[order[0]];
}

FgReport regular_fg_check(const WulffShape& shape, int n_samples) {
    FgReport rep;
    const auto& V = shape.vertices;
    size_t n = V.size();
    size_t stride = std::max<size_t>(1, n / std::max(1, n_samples));
    for (size_t k = 0; k < n; k += stride) {
        Vec2 a = V[k], b = V[(k + 1) % n];
        Vec2 mid = (a + b) * 0.5;
        Vec2 nu = hat(Vec2{b.y - a.y, a.x - b.x});  // outward for CCW
        double resid = std::abs(dot(mid, nu) - interpolate_speed(shape.speed_dirs, shape.speeds, nu));
        rep.samples.push_back({mid, nu, resid, false});
        rep.max_edge_residual = std::max(rep.max_edge_residual, resid);

        // vertex fan at b: normals of both adjacent edges
        Vec2 c = V[(k + 2) % n];
        Vec2 nu2 = hat(Vec2{c.y - b.y, b.x - c.x});
        for (Vec2 nn : {nu, nu2}) {
            double r2 = std::abs(dot(b, nn) - interpolate_speed(shape.speed_dirs, shape.speeds, nn));
            rep.samples.push_back({b, nn, r2, true});
            rep.max_vertex_residual = std::max(rep.max_vertex_residual, r2);
        }
    }
    return rep;
}

ShiftedShape ShiftedShape::cone(double alpha, double cstar) {
    if (alpha == 0.0 || !std::isfinite(alpha))
        throw std::invalid_argument("cone opening must be finite and nonzero");
    ShiftedShape s;
    s.kind = Kind::cone;
    s.alpha = alpha;
    s.cstar = cstar;
    return s;
}

ShiftedShape ShiftedShape::halfspace(Vec2 e, double cstar) {
    ShiftedShape s;
    s.kind = Kind::halfspace;
    s.e = hat(e);
    s.cstar = cstar;
    return s;
}

namespace {

// distance from p to the cone set C = {x2 <= alpha |x1|} (0 inside)
double distance_to_cone_set(Vec2 p, double alpha) {
    if (p.y <= alpha * std::abs(p.x)) return 0.0;
    double inv = 1.0 / std::sqrt(1 + alpha * alpha);
    double d = 1e300;
    for (double sx : {1.0, -1.0}) {
        Vec2 dir{sx * inv, alpha * inv};
        double t = std::max(0.0, dot(p, dir));
        d = std::min(d, norm(p - dir * t));
    }
    return d;
}

double distance_to_ray(Vec2 p, Vec2 origin, Vec2 dir) {
    double t = std::max(0.0, dot(p - origin, dir));
    return norm(p - (origin + dir * t));
}

}  // namespace

bool ShiftedShape::contains(Vec2 p) const {
    if (kind == Kind::halfspace) return dot(p, e) < cstar;
    return distance_to_cone_set(p, alpha) < cstar;
}

double ShiftedShape::signed_distance(Vec2 p) const {
    if (kind == Kind::halfspace) return cstar - dot(p, e);
    // true distance to the offset boundary (the naive cstar - dist(p, C)
    // understates it past the cut locus of the reflex apex when alpha > 0)
    double inv = 1.0 / std::sqrt(1 + alpha * alpha);
    Vec2 dir_r{inv, alpha * inv}, nu_r{-alpha * inv, inv};
    Vec2 dir_l{-inv, alpha * inv}, nu_l{alpha * inv, inv};
    double d;
    if (alpha > 0) {
        Vec2 apex{0.0, cstar * std::sqrt(1 + alpha * alpha)};
        d = std::min(distance_to_ray(p, apex, dir_r), distance_to_ray(p, apex, dir_l));
    } else {
        d = std::min(distance_to_ray(p, nu_r * cstar, dir_r),
                     distance_to_ray(p, nu_l * cstar, dir_l));
        double th = std::atan2(p.y, p.x);
        double th_r = std::atan2(nu_r.y, nu_r.x);
        double th_l = std::atan2(nu_l.y, nu_l.x);
        if (th >= th_r && th <= th_l) d = std::min(d, std::abs(norm(p) - cstar));
    }
    return contains(p) ? d : -d;
}

std::vector<Vec2> ShiftedShape::boundary_polyline(double extent, int n) const {
    std::vector<Vec2> poly;
    if (kind == Kind::halfspace) {
        Vec2 tang = rot90(e);
        for (int k = 0; k <= n; ++k) {
            double t = -extent + 2 * extent * k / n;
            poly.push_back(e * cstar + tang * t);
        }
        return poly;
    }
    // offset of the cone boundary by cstar: two line parts and, for
    // alpha < 0, the arc around the apex between the flank normals
    double inv = 1.0 / std::sqrt(1 + alpha * alpha);
    Vec2 nu_r{-alpha * inv, inv};  // outward normal of the right flank
    Vec2 nu_l{alpha * inv, inv};
    auto flank_point = [&](double t, double sx) {
        Vec2 dir{sx * inv, alpha * inv};
        Vec2 nu = sx > 0 ? nu_r : nu_l;
        return dir * t + nu * cstar;
    };
    if (alpha < 0) {
        // left line (far to tangency), arc, right line
        for (int k = 0; k <= n; ++k)
            poly.push_back(flank_point(extent - extent * k / static_cast<double>(n), -1.0));
        double th_l = std::atan2(nu_l.y, nu_l.x);
        double th_r = std::atan2(nu_r.y, nu_r.x);
        for (int k = 1; k < n; ++k) {
            double th = th_l + (th_r - th_l) * k / n;
            poly.push_back(Vec2{std::cos(th), std::sin(th)} * cstar);
        }
        for (int k = 0; k <= n; ++k)
            poly.push_back(flank_point(extent * k / static_cast<double>(n), 1.0));
    } else {
        // vertex at (0, cstar sqrt(1+alpha^2)); flanks meet there
        Vec2 apex{0.0, cstar * std::sqrt(1 + alpha * alpha)};
        for (int k = 0; k <= n; ++k) {
            double t = extent * (1.0 - k / static_cast<double>(n));
            poly.push_back(Vec2{-t, alpha * t + apex.y});
        }
        for (int k = 1; k <= n; ++k) {
            double t = extent * k / static_cast<double>(n);
            poly.push_back(Vec2{t, alpha * t + apex.y});
        }
    }
    return poly;
}

ShapeRef ShiftedShape::ref() const {
    return ShapeRef{[*this](Vec2 p) { return contains(p); },
                    [*this](Vec2 p) { return signed_distance(p); }, 1e-9};
}

ConeCheckReport cone_conditions_check(const ShapeRef& shape, double gamma,
                                      const std::vector<Vec2>& boundary_samples,
                                      const std::vector<double>& lambdas) {
    if (!(gamma > 0)) throw std::invalid_argument("gamma must be positive");
    ConeCheckReport rep;
    rep.worst_margin = 1e300;
    for (Vec2 z : boundary_samples) {
        for (double l : lambdas) {
            if (l == 1.0) continue;
            Vec2 center = z * l;
            double r = std::abs(1.0 - l) * gamma;
            double s = shape.sdf(center);
            double margin = (l < 1.0 ? s : -s) - r;
            bool pass = margin >= -shape.slack;
            rep.rows.push_back({z, l, margin, pass});
            rep.worst_margin = std::min(rep.worst_margin, margin);
        }
    }
    rep.all_pass = true;
    for (const auto& r : rep.rows)
        if (!r.pass) rep.all_pass = false;
    return rep;
}

BallProbe ball_condition_probe(const ShapeRef& shape, Vec2 z, double r, int n_angles) {
    // a ball touching z from inside has center z - r n; with a true signed
    // distance the inclusion margin is sdf(center) - r, which peaks at zero
    // for the exact normal. Coarse scan over candidates, then golden-section
    // refinement of the touching angle.
    auto mi = [&](double th) { return shape.sdf(z - Vec2{std::cos(th), std::sin(th)} * r) - r; };
    auto me = [&](double th) { return -shape.sdf(z + Vec2{std::cos(th), std::sin(th)} * r) - r; };
    auto refine = [&](auto& f, double th, double halfwidth) {
        double a = th - halfwidth, b = th + halfwidth;
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = f(x1), f2 = f(x2);
        for (int it = 0; it < 40; ++it) {
            if (f1 < f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + gr * (b - a);
                f2 = f(x2);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - gr * (b - a);
                f1 = f(x1);
            }
        }
        double th_best = 0.5 * (a + b);
        return std::pair<double, double>{f(th_best), th_best};
    };

    double step = 2 * kPi / n_angles;
    double bi = -1e300, be = -1e300, bc = -1e300;
    double thi = 0, the = 0, thc = 0;
    for (int k = 0; k < n_angles; ++k) {
        double th = k * step;
        double vi = mi(th), ve = me(th);
        if (vi > bi) {
            bi = vi;
            thi = th;
        }
        if (ve > be) {
            be = ve;
            the = th;
        }
        double common = std::min(vi, ve);
        if (common > bc) {
            bc = common;
            thc = th;
        }
    }
    auto [ri, thi2] = refine(mi, thi, step);
    auto [re, the2] = refine(me, the, step);
    auto common_fn = [&](double th) { return std::min(mi(th), me(th)); };
    auto [rc, thc2] = refine(common_fn, thc, step);
    (void)thi2;
    (void)the2;

    BallProbe out;
    out.interior_margin = std::max(bi, ri);
    out.exterior_margin = std::max(be, re);
    double tol = shape.slack + 1e-6 * (1.0 + r);
    out.interior = out.interior_margin >= -tol;
    out.exterior = out.exterior_margin >= -tol;
    if (out.interior && out.exterior && std::max(bc, rc) >= -2 * tol)
        out.normal = {std::cos(thc2), std::sin(thc2)};
    return out;
}

}  // namespace frontlab
