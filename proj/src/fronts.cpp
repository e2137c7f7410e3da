#include "frontlab/fronts.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace frontlab {

namespace {

int wrap(int i, int n) { return (i % n + n) % n; }

double frac(double x) { return x - std::floor(x); }

}  // namespace

double FrontProfile::eval(Vec2 x, double z) const {
    if (nz == 0) return 0.0;
    double fz = (z - z0) / dz;
    fz = std::clamp(fz, 0.0, static_cast<double>(nz - 1));
    int iz = std::min(static_cast<int>(fz), nz - 2 >= 0 ? nz - 2 : 0);
    double tz = nz > 1 ? fz - iz : 0.0;

    auto slice = [&](int ic, int jc) {
        const double* u = U.data() + (static_cast<size_t>(jc) * cell_nx + ic) * nz;
        return nz > 1 ? (1 - tz) * u[iz] + tz * u[iz + 1] : u[0];
    };
    if (cell_nx == 1 && cell_ny == 1) return slice(0, 0);

    double fx = frac(x.x) * cell_nx;
    int i0 = static_cast<int>(fx) % cell_nx;
    double tx = fx - static_cast<int>(fx);
    int i1 = wrap(i0 + 1, cell_nx);
    if (cell_ny == 1) return (1 - tx) * slice(i0, 0) + tx * slice(i1, 0);

    double fy = frac(x.y) * cell_ny;
    int j0 = static_cast<int>(fy) % cell_ny;
    double ty = fy - static_cast<int>(fy);
    int j1 = wrap(j0 + 1, cell_ny);
    return (1 - tx) * (1 - ty) * slice(i0, j0) + tx * (1 - ty) * slice(i1, j0) +
           (1 - tx) * ty * slice(i0, j1) + tx * ty * slice(i1, j1);
}

double FrontProfile::phi(double t, Vec2 x) const { return eval(x, dot(x, e) - c * t); }

std::vector<double> FrontProfile::cell_avg() const {
    std::vector<double> avg(nz, 0.0);
    int nb = cell_nx * cell_ny;
    for (int b = 0; b < nb; ++b)
        for (int iz = 0; iz < nz; ++iz) avg[iz] += U[static_cast<size_t>(b) * nz + iz];
    for (auto& v : avg) v /= nb;
    return avg;
}

double FrontProfile::monotonicity_defect() const {
    double worst = -1e300;
    int nb = cell_nx * cell_ny;
    for (int b = 0; b < nb; ++b) {
        const double* u = U.data() + static_cast<size_t>(b) * nz;
        for (int iz = 0; iz + 1 < nz; ++iz) worst = std::max(worst, u[iz + 1] - u[iz]);
    }
    return worst;
}

bool FrontProfile::tail_envelope_holds(double slack) const {
    if (lambda0 <= 0) return false;
    int nb = cell_nx * cell_ny;
    for (int b = 0; b < nb; ++b) {
        const double* u = U.data() + static_cast<size_t>(b) * nz;
        for (int iz = 0; iz < nz; ++iz) {
            double z = z0 + iz * dz;
            if (z < tail_z_lo) continue;
            if (u[iz] > C * std::exp(-lambda0 * z) + slack) return false;
        }
    }
    return true;
}

FrontProfile FrontProfile::from_shooting(const ShootingResult& s, Vec2 e) {
    if (s.status != FrontStatus::ok)
        throw std::invalid_argument("cannot build a profile from a failed shooting result");
    FrontProfile p;
    p.e = e;
    p.c = s.c;
    p.cell_nx = 1;
    p.cell_ny = 1;
    p.z0 = s.z0;
    p.dz = s.dz;
    p.nz = static_cast<int>(s.phi.size());
    p.U = s.phi;
    p.counts.assign(p.U.size(), 1.0);
    p.lambda0 = s.lambda0;
    p.C = s.C;
    p.tail_z_lo = 0.0;
    return p;
}

namespace {

PeriodicMedium constant_medium_like(const PeriodicMedium& m, int cell_res, double a11, double a12,
                                    double a22, Vec2 q) {
    CoefficientField c;
    c.A = [=](Vec2, double& o11, double& o12, double& o22) {
        o11 = a11;
        o12 = a12;
        o22 = a22;
    };
    c.q = [=](Vec2) { return q; };
    c.a_name = m.a_name + "[frame]";
    c.q_name = m.q_name + "[frame]";
    return build_medium(m.dim, cell_res, c, m.reaction, m.delta);
}

/// medium viewed in the frame where e becomes +x (homogeneous coefficients)
PeriodicMedium rotated_frame(const PeriodicMedium& m, Vec2 e, int cell_res) {
    double a = m.a11[0];
    double b = m.dim == 2 ? m.a12[0] : 0.0;
    double d = m.dim == 2 ? m.a22[0] : a;
    double q1 = m.q1[0];
    double q2 = m.dim == 2 ? m.q2[0] : 0.0;
    double ex = e.x, ey = e.y;
    double a11 = ex * ex * a + 2 * ex * ey * b + ey * ey * d;
    double a12 = ex * ey * (d - a) + (ex * ex - ey * ey) * b;
    double a22 = ey * ey * a - 2 * ex * ey * b + ex * ex * d;
    Vec2 q{ex * q1 + ey * q2, -ey * q1 + ex * q2};
    if (m.dim == 1) return constant_medium_like(m, cell_res, a, 0, 0, {ex * q1, 0});
    return constant_medium_like(m, cell_res, a11, a12, a22, q);
}

struct LevelTrack {
    bool found = false;
    double p = 0.0;
};

LevelTrack track_level(const GridField& u, double level) {
    const int nx = u.nx, ny = u.ny;
    LevelTrack out;
    std::vector<double> bar(nx, 0.0);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) bar[i] += u.at(i, j);
    for (auto& v : bar) v /= ny;
    for (int i = nx - 2; i >= 0; --i) {
        if (bar[i] >= level && bar[i + 1] < level) {
            double t = (bar[i] - level) / (bar[i] - bar[i + 1]);
            out.found = true;
            out.p = u.x(i) + t * u.h;
            return out;
        }
    }
    return out;
}

}  // namespace

namespace {

struct StripSetup {
    PeriodicMedium frame;
    GridField proto;
    BoundaryConfig bc;
    GridField u0;
    double L = 0.0;
};

StripSetup make_strip_setup(const PeriodicMedium& m, Vec2 e, const StripParams& sp) {
    if (std::abs(norm(e) - 1.0) > 1e-9)
        throw std::invalid_argument("direction must be a unit vector");

    double h = sp.h > 0 ? sp.h : 1.0 / m.cell_res;
    int M = cells_per_unit(h);

    bool axis_x = m.dim == 1 ? (e.x > 0) : (std::abs(e.x - 1.0) < 1e-12 && std::abs(e.y) < 1e-12);
    PeriodicMedium frame = m;
    if (!axis_x || M != m.cell_res) {
        if (!(m.homogeneous_coeffs()))
            throw std::invalid_argument(
                "off-axis directions (or resampling) require homogeneous coefficients");
        if (!axis_x && !m.reaction.homogeneous())
            throw std::invalid_argument("off-axis directions require a homogeneous reaction");
        frame = axis_x ? constant_medium_like(m, M, m.a11[0], m.dim == 2 ? m.a12[0] : 0.0,
                                              m.dim == 2 ? m.a22[0] : 0.0,
                                              {m.q1[0], m.dim == 2 ? m.q2[0] : 0.0})
                       : rotated_frame(m, e, M);
    }

    StripSetup st;
    st.frame = std::move(frame);
    st.L = std::round(sp.length);
    st.proto = m.dim == 1
                   ? GridField::make(static_cast<int>(2 * st.L / h) + 1, 1, -st.L, 0.0, h)
                   : GridField::make(static_cast<int>(2 * st.L / h) + 1, M, -st.L, 0.0, h);
    st.bc.x = BC::dirichlet;
    st.bc.x_lo = 1.0;
    st.bc.x_hi = 0.0;
    st.bc.y = BC::periodic;
    st.u0 = initial_step(st.proto, {1, 0}, -st.L + sp.start_offset, sp.init_width);
    st.u0.time = 0.0;
    return st;
}

}  // namespace

StripRun run_front_strip(const PeriodicMedium& m, Vec2 e, const StripParams& sp) {
    StripSetup st = make_strip_setup(m, e, sp);
    const double L = st.L;
    GridField u = st.u0;
    Stepper stepper(st.frame, st.proto, st.bc, sp.solver);

    StripRun out;
    out.m_used = st.frame;
    out.e_used = {1, 0};

    std::deque<std::pair<double, GridField>> ring;
    int snap_every = 1, tick = 0;

    std::vector<std::pair<double, double>> series;
    double t = 0.0;
    double p_first = 0.0;
    bool have_first = false;
    bool edge_hit = false;

    while (t < sp.max_T - 1e-9) {
        stepper.advance(u, sp.track_stride);
        t += sp.track_stride;
        u.time = t;
        ++tick;

        LevelTrack lt = track_level(u, sp.level);
        if (lt.found) {
            series.push_back({t, lt.p});
            if (!have_first) {
                p_first = lt.p;
                have_first = true;
            }
            if (lt.p >= L - sp.guard) {
                edge_hit = true;
                break;
            }
            if (lt.p - p_first >= sp.travel_target) break;
        }
        if (tick % snap_every == 0) {
            ring.push_back({t, u});
            if (static_cast<int>(ring.size()) > sp.max_snapshots) {
                std::deque<std::pair<double, GridField>> thinned;
                for (size_t k = 0; k < ring.size(); k += 2) thinned.push_back(ring[k]);
                ring.swap(thinned);
                snap_every *= 2;
            }
        }
    }

    if (series.size() < 8) {
        out.speed.status = SpeedStatus::no_front;
        out.speed.p_series = series;
        return out;
    }

    double t_end = series.back().first;
    double t_lo = 0.5 * t_end;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (auto& [tt, pp] : series) {
        if (tt < t_lo) continue;
        sx += tt;
        sy += pp;
        sxx += tt * tt;
        sxy += tt * pp;
        ++n;
    }
    if (n < 4) {
        out.speed.status = SpeedStatus::no_front;
        out.speed.p_series = series;
        return out;
    }
    double denom = n * sxx - sx * sx;
    double c = (n * sxy - sx * sy) / denom;
    double b = (sy - c * sx) / n;

    double travel_window = series.back().second -
                           (c * t_lo + b);  // distance covered inside the fit window
    if (edge_hit && travel_window < 20.0) {
        std::ostringstream os;
        os << "level set exited the domain after " << travel_window
           << " cells of fitted travel; enlarge the strip";
        throw std::runtime_error(os.str());
    }

    double osc = 0.0;
    for (auto& [tt, pp] : series) {
        if (tt < t_lo) continue;
        osc = std::max(osc, std::abs(pp - (c * tt + b)));
    }

    out.speed.status = (c > 1e-4 && series.back().second > p_first) ? SpeedStatus::ok
                                                                    : SpeedStatus::no_front;
    out.speed.c = c;
    out.speed.intercept = b;
    out.speed.oscillation = osc;
    out.speed.fit_t_lo = t_lo;
    out.speed.fit_t_hi = t_end;
    out.speed.p_series = std::move(series);

    for (auto& [tt, g] : ring)
        if (tt >= t_lo && (out.traj.times.empty() || tt > out.traj.times.back()))
            out.traj.append(tt, std::move(g));
    return out;
}

SpeedEstimate pulsating_front_speed(const PeriodicMedium& m, Vec2 e, const StripParams& sp) {
    return run_front_strip(m, e, sp).speed;
}

namespace {

struct ProfileBinner {
    Vec2 e;
    double c, h, margin, zmin;
    int nz, cnx, cny, M;
    std::vector<double> sums, counts;

    ProfileBinner(const PeriodicMedium& m, Vec2 e_, double c_, double h_, double zmin_,
                  double zmax_, double margin_)
        : e(e_), c(c_), h(h_), margin(margin_), zmin(zmin_), M(m.cell_res) {
        if (!(zmax_ > zmin_)) throw std::runtime_error("insufficient z-coverage in trajectory");
        nz = static_cast<int>(std::floor((zmax_ - zmin_) / h)) + 1;
        // bin only along axes the medium actually varies in; everything else
        // is statistically identical and pooling it fills the z-comb faster
        cnx = m.varies_along(0) ? M : 1;
        cny = (m.dim == 2 && m.varies_along(1)) ? M : 1;
        sums.assign(static_cast<size_t>(cnx) * cny * nz, 0.0);
        counts.assign(sums.size(), 0.0);
    }

    void add(const GridField& u, double t) {
        for (int j = 0; j < u.ny; ++j) {
            int jc = cny > 1 ? wrap(static_cast<int>(std::llround(u.y0 / h)) + j, M) : 0;
            for (int i = 0; i < u.nx; ++i) {
                double x = u.x(i);
                if (x < u.x0 + margin || x > u.x(u.nx - 1) - margin) continue;
                int ic = cnx > 1 ? wrap(static_cast<int>(std::llround(u.x0 / h)) + i, M) : 0;
                double z = x * e.x + u.y(j) * e.y - c * t;
                int iz = static_cast<int>(std::floor((z - zmin) / h));
                if (iz < 0 || iz >= nz) continue;
                size_t k = (static_cast<size_t>(jc) * cnx + ic) * nz + iz;
                sums[k] += u.at(i, j);
                counts[k] += 1.0;
            }
        }
    }

    FrontProfile finish(const ProfileParams& pp);
};

}  // namespace

FrontProfile extract_front_profile(const PeriodicMedium& m, Vec2 e, double c,
                                   const Trajectory& traj, const ProfileParams& pp) {
    if (traj.empty()) throw std::invalid_argument("empty trajectory");
    if (c <= 0) throw std::invalid_argument("profile extraction requires a positive speed");
    const double h = traj.snaps.front().h;

    double margin = pp.margin_cells * 1.0;
    double zmin = 1e300, zmax = -1e300;
    for (size_t s = 0; s < traj.snaps.size(); ++s) {
        const GridField& u = traj.snaps[s];
        double t = traj.times[s];
        for (int i = 0; i < u.nx; ++i) {
            double x = u.x(i);
            if (x < u.x0 + margin || x > u.x(u.nx - 1) - margin) continue;
            double z = x * e.x - c * t;  // y-term bounded below
            zmin = std::min(zmin, z);
            zmax = std::max(zmax, z + (u.ny - 1) * h * std::abs(e.y));
        }
    }
    ProfileBinner binner(m, e, c, h, zmin, zmax, margin);
    for (size_t s = 0; s < traj.snaps.size(); ++s) binner.add(traj.snaps[s], traj.times[s]);
    return binner.finish(pp);
}

FrontProfile ProfileBinner::finish(const ProfileParams& pp) {
    // fill short gaps per cell column by linear interpolation in z: the
    // z-comb of samples is quasi-random and leaves occasional single-bin
    // holes even in well-covered regions
    const int nb = cnx * cny;
    for (int b = 0; b < nb; ++b) {
        double* srow = sums.data() + static_cast<size_t>(b) * nz;
        double* crow = counts.data() + static_cast<size_t>(b) * nz;
        for (int iz = 0; iz < nz; ++iz) {
            if (crow[iz] > 0) continue;
            int lo = iz - 1, hi = iz + 1;
            while (lo >= 0 && crow[lo] == 0) --lo;
            while (hi < nz && crow[hi] == 0) ++hi;
            if (lo < 0 || hi >= nz || hi - lo > 4) continue;
            double vlo = srow[lo] / crow[lo], vhi = srow[hi] / crow[hi];
            double t = static_cast<double>(iz - lo) / (hi - lo);
            const double w = 1e-9;  // interpolated marker weight
            srow[iz] = ((1 - t) * vlo + t * vhi) * w;
            crow[iz] = w;
        }
    }

    // complete z-slices: every cell bin sampled (or interpolated)
    std::vector<char> complete(nz, 1);
    for (int iz = 0; iz < nz; ++iz)
        for (int b = 0; b < nb; ++b)
            if (counts[static_cast<size_t>(b) * nz + iz] == 0.0) {
                complete[iz] = 0;
                break;
            }

    std::vector<double> avg(nz, -1.0);
    for (int iz = 0; iz < nz; ++iz) {
        if (!complete[iz]) continue;
        double a = 0;
        for (int b = 0; b < nb; ++b) {
            size_t k = static_cast<size_t>(b) * nz + iz;
            a += sums[k] / counts[k];
        }
        avg[iz] = a / nb;
    }

    // largest mid-level crossing among complete consecutive slices
    int icross = -1;
    for (int iz = nz - 2; iz >= 0; --iz) {
        if (!complete[iz] || !complete[iz + 1]) continue;
        if (avg[iz] >= 0.5 && avg[iz + 1] < 0.5) {
            icross = iz;
            break;
        }
    }
    if (icross < 0) throw std::runtime_error("insufficient z-coverage: no mid-level crossing");

    // grow the maximal contiguous complete run containing the crossing,
    // clipped to the resolved value band
    int lo = icross, hi = icross + 1;
    while (lo - 1 >= 0 && complete[lo - 1] && avg[lo - 1] <= 1.0 - pp.clip) --lo;
    while (hi + 1 < nz && complete[hi + 1] && avg[hi + 1] >= pp.clip) ++hi;
    // include one plateau slice on each side when available
    if (lo - 1 >= 0 && complete[lo - 1]) --lo;
    if (hi + 1 < nz && complete[hi + 1]) ++hi;

    if (avg[lo] < 0.9 || avg[hi] > 0.1)
        throw std::runtime_error("insufficient z-coverage: profile does not span (0,1)");

    double t_interp = (avg[icross] - 0.5) / (avg[icross] - avg[icross + 1]);
    double zstar = zmin + (icross + t_interp) * h;

    FrontProfile prof;
    prof.e = e;
    prof.c = c;
    prof.cell_nx = cnx;
    prof.cell_ny = cny;
    prof.dz = h;
    prof.nz = hi - lo + 1;
    prof.z0 = zmin + lo * h - zstar;
    prof.mu = 0.5;
    prof.U.resize(static_cast<size_t>(nb) * prof.nz);
    prof.counts.resize(prof.U.size());
    for (int b = 0; b < nb; ++b)
        for (int iz = lo; iz <= hi; ++iz) {
            size_t src = static_cast<size_t>(b) * nz + iz;
            size_t dst = static_cast<size_t>(b) * prof.nz + (iz - lo);
            prof.U[dst] = counts[src] > 0 ? sums[src] / counts[src] : avg[iz];
            prof.counts[dst] = counts[src];
        }

    // tail fit on the averaged profile
    std::vector<std::pair<double, double>> tail;
    double band_hi = pp.tail_hi;
    for (int widen = 0; widen < 3 && tail.size() < 4; ++widen) {
        tail.clear();
        for (int iz = lo; iz <= hi; ++iz) {
            if (!complete[iz]) continue;
            if (avg[iz] >= pp.tail_lo && avg[iz] <= band_hi)
                tail.push_back({zmin + iz * h - zstar, std::log(avg[iz])});
        }
        band_hi *= 2.5;
    }
    if (tail.size() >= 3) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (auto& [z, lv] : tail) {
            sx += z;
            sy += lv;
            sxx += z * z;
            sxy += z * lv;
        }
        double n = static_cast<double>(tail.size());
        prof.lambda0 = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
        prof.tail_z_lo = tail.front().first;
        double C = 0.0;
        for (int b = 0; b < nb; ++b)
            for (int iz = 0; iz < prof.nz; ++iz) {
                double z = prof.z0 + iz * h;
                if (z < prof.tail_z_lo) continue;
                C = std::max(C, prof.U[static_cast<size_t>(b) * prof.nz + iz] *
                                    std::exp(prof.lambda0 * z));
            }
        prof.C = C;
    }
    return prof;
}

FrontPipeline run_front_pipeline(const PeriodicMedium& m, Vec2 e, const StripParams& sp,
                                 const ProfileParams& pp) {
    FrontPipeline out;
    StripRun phase1 = run_front_strip(m, e, sp);
    out.speed = phase1.speed;
    out.traj = std::move(phase1.traj);
    out.m_used = phase1.m_used;
    out.e_used = phase1.e_used;
    if (out.speed.status != SpeedStatus::ok) return out;

    // deterministic replay feeding every tracking tick into the bins
    StripSetup st = make_strip_setup(m, e, sp);
    const double h = st.proto.h;
    const double t_lo = out.speed.fit_t_lo, t_hi = out.speed.fit_t_hi;
    const double margin = pp.margin_cells * 1.0;
    double zmin = (-st.L + margin) - out.speed.c * t_hi - 1.0;
    double zmax = (st.L - margin) - out.speed.c * t_lo + 1.0;
    ProfileBinner binner(st.frame, {1, 0}, out.speed.c, h, zmin, zmax, margin);

    GridField u = st.u0;
    Stepper stepper(st.frame, st.proto, st.bc, sp.solver);
    double t = 0.0;
    while (t < t_hi - 1e-9) {
        stepper.advance(u, sp.track_stride);
        t += sp.track_stride;
        u.time = t;
        if (t >= t_lo - 1e-9) binner.add(u, t);
    }
    out.profile = binner.finish(pp);
    return out;
}

bool SpeedTable::all_positive() const {
    if (speeds.empty()) return false;
    for (size_t k = 0; k < speeds.size(); ++k)
        if (statuses[k] != SpeedStatus::ok || speeds[k] <= 0) return false;
    return true;
}

SpeedTable speed_table(const PeriodicMedium& m, const std::vector<Vec2>& directions,
                       const StripParams& sp) {
    if (m.dim == 2 && directions.size() < 8)
        throw std::invalid_argument("speed table needs at least 8 directions in 2-D");
    if (m.dim == 1 && directions.size() < 2)
        throw std::invalid_argument("speed table needs both directions in 1-D");

    SpeedTable tab;
    for (Vec2 e : directions) {
        SpeedEstimate est = pulsating_front_speed(m, e, sp);
        tab.directions.push_back(e);
        tab.speeds.push_back(est.c);
        tab.oscillations.push_back(est.oscillation);
        tab.statuses.push_back(est.status);
    }

    if (m.dim == 2) {
        std::vector<size_t> order(directions.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            return std::atan2(directions[a].y, directions[a].x) <
                   std::atan2(directions[b].y, directions[b].x);
        });
        for (size_t k = 0; k < order.size(); ++k) {
            size_t a = order[k], b = order[(k + 1) % order.size()];
            tab.max_adjacent_jump =
                std::max(tab.max_adjacent_jump, std::abs(tab.speeds[a] - tab.speeds[b]));
        }
    }
    return tab;
}

double front_residual(const PeriodicMedium& m, const FrontProfile& prof, double h_patch) {
    double h = h_patch > 0 ? h_patch : 1.0 / m.cell_res;
    int M = cells_per_unit(h);
    PeriodicMedium frame = m;
    if (M != m.cell_res) {
        if (!m.homogeneous_coeffs())
            throw std::invalid_argument("patch resolution must match the medium cell");
        frame = constant_medium_like(m, M, m.a11[0], m.dim == 2 ? m.a12[0] : 0.0,
                                     m.dim == 2 ? m.a22[0] : 0.0,
                                     {m.q1[0], m.dim == 2 ? m.q2[0] : 0.0});
    }

    double B = 14.0;
    GridField patch = GridField::box(B, h, m.dim);
    BoundaryConfig bc;  // Neumann; boundary rows are excluded below
    StencilPlan plan = StencilPlan::build(frame, patch, bc);

    auto field_at = [&](double t) {
        GridField g = patch;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                g.at(i, j) = prof.eval({g.x(i), g.y(j)}, g.x(i) * prof.e.x + g.y(j) * prof.e.y -
                                                             prof.c * t);
        return g;
    };
    double dt = h;
    GridField f0 = field_at(0.0), fp = field_at(dt), fm = field_at(-dt);
    std::vector<double> Lv(f0.v.size(), 0.0);
    plan.apply_diffusion(f0.v, Lv, true);
    plan.add_advection(f0.v, Lv, true);

    double zlo = prof.z0 + 2 * prof.dz, zhi = prof.z0 + (prof.nz - 3) * prof.dz;
    double worst = 0.0;
    for (int j = 0; j < f0.ny; ++j) {
        if (f0.ny > 1 && (j < 2 || j >= f0.ny - 2)) continue;
        for (int i = 2; i < f0.nx - 2; ++i) {
            double z = f0.x(i) * prof.e.x + f0.y(j) * prof.e.y;
            if (z < zlo || z > zhi) continue;
            int k = f0.idx(i, j);
            double ut = (fp.v[k] - fm.v[k]) / (2 * dt);
            double rhs = Lv[k] + frame.reaction.f({f0.x(i), f0.y(j)}, f0.v[k]);
            worst = std::max(worst, std::abs(ut - rhs));
        }
    }
    return worst;
}

}  // namespace frontlab
