#include "frontlab/omega.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace frontlab {

std::vector<RayCrossing> ray_tracker(const Trajectory& traj, Vec2 e, double lambda) {
    if (std::abs(norm(e) - 1.0) > 1e-9)
        throw std::invalid_argument("ray direction must be a unit vector");
    std::vector<RayCrossing> out;
    for (size_t k = 0; k < traj.times.size(); ++k) {
        const GridField& u = traj.snaps[k];
        RayCrossing rc;
        rc.t = traj.times[k];
        // distance to the domain hull along e
        double smax = 1e300;
        auto clip = [&](double lo, double hi, double comp) {
            if (comp > 1e-12) smax = std::min(smax, hi / comp);
            if (comp < -1e-12) smax = std::min(smax, lo / comp);
        };
        clip(u.x0, u.x(u.nx - 1), e.x);
        if (!u.is1d()) clip(u.y0, u.y(u.ny - 1), e.y);
        double step = u.h / 2;
        double prev_s = 0.0;
        double prev_v = u.sample({0, 0});
        for (double s = step; s <= smax; s += step) {
            double v = u.sample(e * s);
            if ((prev_v > lambda) && (v <= lambda)) {
                double t = (prev_v - lambda) / (prev_v - v);
                double scross = prev_s + t * (s - prev_s);
                rc.found = true;  // keep scanning: the largest crossing wins
                rc.x = e * scross;
            }
            prev_s = s;
            prev_v = v;
        }
        out.push_back(rc);
    }
    return out;
}

Window extract_window(const GridField& u, double t, Vec2 center, double radius) {
    Window w;
    w.t = t;
    w.center = center;
    w.radius = radius;
    bool inside = center.x - radius >= u.x0 && center.x + radius <= u.x(u.nx - 1);
    if (!u.is1d())
        inside = inside && center.y - radius >= u.y0 && center.y + radius <= u.y(u.ny - 1);
    w.valid = inside;
    if (!inside) return w;

    int i0 = static_cast<int>(std::floor((center.x - radius - u.x0) / u.h));
    int i1 = static_cast<int>(std::ceil((center.x + radius - u.x0) / u.h));
    int j0 = u.is1d() ? 0 : static_cast<int>(std::floor((center.y - radius - u.y0) / u.h));
    int j1 = u.is1d() ? 0 : static_cast<int>(std::ceil((center.y + radius - u.y0) / u.h));
    for (int j = j0; j <= j1; ++j) {
        for (int i = i0; i <= i1; ++i) {
            Vec2 p{u.x(i), u.is1d() ? 0.0 : u.y(j)};
            Vec2 o = p - center;
            if (dot(o, o) > radius * radius + 1e-12) continue;
            w.offsets.push_back(o);
            w.values.push_back(u.at(i, j));
        }
    }
    return w;
}

namespace {

double window_mismatch(const Window& w, const FrontProfile& prof, double s, Vec2 y,
                       double bail_above) {
    double worst = 0.0;
    for (size_t k = 0; k < w.offsets.size(); ++k) {
        Vec2 x = w.center + w.offsets[k] + y;
        double model = prof.eval(x, dot(x, prof.e) - prof.c * s);
        worst = std::max(worst, std::abs(w.values[k] - model));
        if (worst >= bail_above) return worst;
    }
    return worst;
}

}  // namespace

FitResult front_fit(const Window& w, const std::vector<FrontProfile>& candidates,
                    const FitParams& fp) {
    if (candidates.empty()) throw std::invalid_argument("candidate set must be non-empty");
    for (const auto& c : candidates)
        if (!(c.c > 0)) throw std::invalid_argument("candidates must have positive speeds");
    if (w.offsets.size() < 5)
        throw std::invalid_argument("window too small to fit (needs at least one cell)");

    FitResult out;
    for (double v : w.values) {
        out.const0_residual = std::max(out.const0_residual, std::abs(v));
        out.const1_residual = std::max(out.const1_residual, std::abs(v - 1.0));
    }

    for (size_t ci = 0; ci < candidates.size(); ++ci) {
        const FrontProfile& prof = candidates[ci];
        // time shifts sweeping the tabulated z-range across the window center
        double zspan = (prof.nz - 1) * prof.dz;
        double zc = dot(w.center, prof.e);
        double s_lo = (zc - (prof.z0 + zspan) - w.radius - 1) / prof.c;
        double s_hi = (zc - prof.z0 + w.radius + 1) / prof.c;
        double ds = fp.coarse_z_step / prof.c;

        double cell_w = 1.0 / prof.cell_nx;
        int ncx = prof.cell_nx > 1 ? prof.cell_nx : 1;
        int ncy = prof.cell_ny > 1 ? prof.cell_ny : 1;

        double best = 1e300, best_s = 0;
        Vec2 best_y{};
        for (int iy = 0; iy < ncy; ++iy) {
            for (int ix = 0; ix < ncx; ++ix) {
                Vec2 y{ix * cell_w, iy * (prof.cell_ny > 1 ? 1.0 / prof.cell_ny : 0.0)};
                for (double s = s_lo; s <= s_hi; s += ds) {
                    double r = window_mismatch(w, prof, s, y, best);
                    if (r < best) {
                        best = r;
                        best_s = s;
                        best_y = y;
                    }
                }
            }
        }
        // golden-section refinement of the time shift
        double a = best_s - ds, b = best_s + ds;
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = window_mismatch(w, prof, x1, best_y, 1e300);
        double f2 = window_mismatch(w, prof, x2, best_y, 1e300);
        for (int it = 0; it < fp.refine_iters; ++it) {
            if (f1 > f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + gr * (b - a);
                f2 = window_mismatch(w, prof, x2, best_y, 1e300);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - gr * (b - a);
                f1 = window_mismatch(w, prof, x1, best_y, 1e300);
            }
        }
        double s_ref = 0.5 * (a + b);
        double r_ref = window_mismatch(w, prof, s_ref, best_y, 1e300);
        if (r_ref < best) {
            best = r_ref;
            best_s = s_ref;
        }
        if (best < out.residual) {
            out.residual = best;
            out.candidate = static_cast<int>(ci);
            out.time_shift = best_s;
            out.cell_shift = best_y;
        }
    }

    // bulk wins ties: a window on a plateau also fits the profile's clamped
    // tail, but the constant state is the honest description there
    double cbest = std::min(out.const0_residual, out.const1_residual);
    if (cbest < fp.bulk_threshold && cbest <= out.residual + 1e-3) {
        out.cls = out.const0_residual <= out.const1_residual ? WindowClass::bulk_zero
                                                             : WindowClass::bulk_one;
    } else if (out.residual < fp.front_threshold) {
        out.cls = WindowClass::front;
    } else {
        out.cls = WindowClass::unresolved;
    }
    return out;
}

CornerScanReport corner_direction_scan(const Trajectory& traj, Vec2 e,
                                       const std::vector<FrontProfile>& minimizers,
                                       double lambda, const FitParams& fp, double probe_angle) {
    if (minimizers.empty()) throw std::invalid_argument("minimizer set must be non-empty");

    CornerScanReport rep;
    rep.best_residual_per_candidate.assign(minimizers.size(), 1e300);

    for (size_t k = 0; k < traj.times.size(); ++k) {
        double t = traj.times[k];
        const GridField& u = traj.snaps[k];
        double radius = fp.radius_cells * u.h;

        // the central ray plus symmetric lateral probes whose angle tightens
        // like 1/sqrt(t): the probed centers still satisfy hat(x_n) -> e
        std::vector<Vec2> dirs = {e};
        double th = probe_angle / std::sqrt(std::max(t, 1.0));
        for (double sgn : {+1.0, -1.0}) {
            double cth = std::cos(sgn * th), sth = std::sin(sgn * th);
            dirs.push_back(hat({e.x * cth - e.y * sth, e.x * sth + e.y * cth}));
        }

        Trajectory single;
        single.append(t, u);
        for (Vec2 d : dirs) {
            auto crossings = ray_tracker(single, d, lambda);
            if (!crossings[0].found) continue;
            Window w = extract_window(u, t, crossings[0].x, radius);
            if (!w.valid || w.offsets.size() < 5) continue;
            CornerScanRow row;
            row.t = t;
            row.center = crossings[0].x;
            double best = 1e300;
            for (size_t ci = 0; ci < minimizers.size(); ++ci) {
                FitResult fr = front_fit(w, {minimizers[ci]}, fp);
                row.residuals.push_back(fr.residual);
                rep.best_residual_per_candidate[ci] =
                    std::min(rep.best_residual_per_candidate[ci], fr.residual);
                if (fr.residual < best) {
                    best = fr.residual;
                    row.best = static_cast<int>(ci);
                }
            }
            rep.rows.push_back(std::move(row));
        }
    }
    return rep;
}

}  // namespace frontlab
