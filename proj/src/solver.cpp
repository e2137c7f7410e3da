#include "frontlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace frontlab {

namespace {

int wrap(int i, int n) { return (i % n + n) % n; }

// cell sample index of grid node i along one axis
int cell_of(double origin, double h, int i, int M) {
    double k = origin / h + i;
    long ki = std::llround(k);
    return wrap(static_cast<int>(ki % M), M);
}

void require_aligned(const PeriodicMedium& m, const GridField& g) {
    int M = cells_per_unit(g.h);
    if (M != m.cell_res) {
        std::ostringstream os;
        os << "grid (1/h = " << M << ") is not cell-aligned with medium (M = " << m.cell_res
           << ")";
        throw std::invalid_argument(os.str());
    }
    double kx = g.x0 / g.h;
    if (std::abs(kx - std::round(kx)) > 1e-9)
        throw std::invalid_argument("grid origin is not aligned to the sample lattice");
    if (!g.is1d()) {
        double ky = g.y0 / g.h;
        if (std::abs(ky - std::round(ky)) > 1e-9)
            throw std::invalid_argument("grid origin is not aligned to the sample lattice");
    }
    if (m.dim == 1 && !g.is1d())
        throw std::invalid_argument("2-D grid over a 1-D medium");
    if (m.dim == 2 && g.is1d())
        throw std::invalid_argument("1-D grid over a 2-D medium");
}

}  // namespace

StencilPlan StencilPlan::build(const PeriodicMedium& m, const GridField& g,
                               const BoundaryConfig& bc) {
    require_aligned(m, g);
    const int M = m.cell_res;
    const int nx = g.nx, ny = g.ny;
    if (bc.x == BC::periodic) {
        double span = nx * g.h;
        if (std::abs(span - std::round(span)) > 1e-9)
            throw std::invalid_argument("periodic x-extent must cover whole cells");
    }
    if (!g.is1d() && bc.y == BC::periodic) {
        double span = ny * g.h;
        if (std::abs(span - std::round(span)) > 1e-9)
            throw std::invalid_argument("periodic y-extent must cover whole cells");
    }

    StencilPlan p;
    p.nx = nx;
    p.ny = ny;
    p.h = g.h;
    p.bc = bc;

    auto cellx = [&](int i) { return cell_of(g.x0, g.h, i, M); };
    auto celly = [&](int j) { return g.is1d() ? 0 : cell_of(g.y0, g.h, j, M); };
    auto sample = [&](const std::vector<double>& f, int i, int j) {
        return f.empty() ? 0.0 : f[celly(j) * M + cellx(i)];
    };

    p.axf.assign(static_cast<size_t>(nx + 1) * ny, 0.0);
    p.q1f.assign(static_cast<size_t>(nx + 1) * ny, 0.0);
    for (int j = 0; j < ny; ++j) {
        for (int f = 0; f <= nx; ++f) {
            int il = f - 1, ir = f;
            if (bc.x == BC::periodic) {
                il = wrap(il, nx);
                ir = wrap(ir, nx);
            } else {
                il = std::clamp(il, 0, nx - 1);
                ir = std::clamp(ir, 0, nx - 1);
            }
            p.axf[j * (nx + 1) + f] = 0.5 * (sample(m.a11, il, j) + sample(m.a11, ir, j));
            p.q1f[j * (nx + 1) + f] = 0.5 * (sample(m.q1, il, j) + sample(m.q1, ir, j));
        }
    }
    if (!g.is1d()) {
        p.ayf.assign(static_cast<size_t>(nx) * (ny + 1), 0.0);
        p.q2f.assign(static_cast<size_t>(nx) * (ny + 1), 0.0);
        for (int f = 0; f <= ny; ++f) {
            for (int i = 0; i < nx; ++i) {
                int jl = f - 1, jr = f;
                if (bc.y == BC::periodic) {
                    jl = wrap(jl, ny);
                    jr = wrap(jr, ny);
                } else {
                    jl = std::clamp(jl, 0, ny - 1);
                    jr = std::clamp(jr, 0, ny - 1);
                }
                p.ayf[f * nx + i] = 0.5 * (sample(m.a22, i, jl) + sample(m.a22, i, jr));
                p.q2f[f * nx + i] = 0.5 * (sample(m.q2, i, jl) + sample(m.q2, i, jr));
            }
        }
        p.a12n.assign(static_cast<size_t>(nx) * ny, 0.0);
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) p.a12n[j * nx + i] = sample(m.a12, i, j);
        for (double v : p.a12n)
            if (v != 0.0) p.mixed = true;
    }
    for (double v : p.q1f)
        if (v != 0.0) p.advective = true;
    for (double v : p.q2f)
        if (v != 0.0) p.advective = true;
    return p;
}

void StencilPlan::apply_diffusion(const std::vector<double>& v, std::vector<double>& out,
                                  bool withb) const {
    const int NX = nx, NY = ny;
    const double ih2 = 1.0 / (h * h);
    const double gxlo = withb ? bc.x_lo : 0.0;
    const double gxhi = withb ? bc.x_hi : 0.0;
    const double gylo = withb ? bc.y_lo : 0.0;
    const double gyhi = withb ? bc.y_hi : 0.0;
    out.assign(v.size(), 0.0);

    kernels::for_range(NY, [&](int j) {
        const int base = j * NX;
        const double* ax = axf.data() + j * (NX + 1);
        for (int i = 0; i < NX; ++i) {
            const double c = v[base + i];
            double acc = 0.0;
            if (i + 1 < NX) {
                acc += ax[i + 1] * (v[base + i + 1] - c);
            } else if (bc.x == BC::periodic) {
                acc += ax[NX] * (v[base] - c);
            } else if (bc.x == BC::dirichlet) {
                acc += ax[NX] * (gxhi - c);
            }
            if (i > 0) {
                acc -= ax[i] * (c - v[base + i - 1]);
            } else if (bc.x == BC::periodic) {
                acc -= ax[0] * (c - v[base + NX - 1]);
            } else if (bc.x == BC::dirichlet) {
                acc -= ax[0] * (c - gxlo);
            }
            if (NY > 1) {
                if (j + 1 < NY) {
                    acc += ayf[(j + 1) * NX + i] * (v[base + NX + i] - c);
                } else if (bc.y == BC::periodic) {
                    acc += ayf[NY * NX + i] * (v[i] - c);
                } else if (bc.y == BC::dirichlet) {
                    acc += ayf[NY * NX + i] * (gyhi - c);
                }
                if (j > 0) {
                    acc -= ayf[j * NX + i] * (c - v[base - NX + i]);
                } else if (bc.y == BC::periodic) {
                    acc -= ayf[i] * (c - v[(NY - 1) * NX + i]);
                } else if (bc.y == BC::dirichlet) {
                    acc -= ayf[i] * (c - gylo);
                }
            }
            out[base + i] = acc * ih2;
        }
    });

    if (!mixed || NY <= 1) return;

    // d/dx (a12 du/dy) + d/dy (a12 du/dx), centered; ghosts mirror for
    // Neumann and take the far-field value for Dirichlet
    auto val = [&](int i, int j) -> double {
        if (i < 0) {
            if (bc.x == BC::periodic) i += NX;
            else if (bc.x == BC::neumann) i = 1;
            else return withb ? bc.x_lo : 0.0;
        } else if (i >= NX) {
            if (bc.x == BC::periodic) i -= NX;
            else if (bc.x == BC::neumann) i = NX - 2;
            else return withb ? bc.x_hi : 0.0;
        }
        if (j < 0) {
            if (bc.y == BC::periodic) j += NY;
            else if (bc.y == BC::neumann) j = 1;
            else return withb ? bc.y_lo : 0.0;
        } else if (j >= NY) {
            if (bc.y == BC::periodic) j -= NY;
            else if (bc.y == BC::neumann) j = NY - 2;
            else return withb ? bc.y_hi : 0.0;
        }
        return v[j * NX + i];
    };
    const double i4h2 = 1.0 / (4.0 * h * h);
    kernels::for_range(NY, [&](int j) {
        for (int i = 0; i < NX; ++i) {
            double dy_ip = val(i + 1, j + 1) - val(i + 1, j - 1);
            double dy_im = val(i - 1, j + 1) - val(i - 1, j - 1);
            double dx_jp = val(i + 1, j + 1) - val(i - 1, j + 1);
            double dx_jm = val(i + 1, j - 1) - val(i - 1, j - 1);
            double a12_ip = a12n[j * NX + std::min(i + 1, NX - 1)];
            double a12_im = a12n[j * NX + std::max(i - 1, 0)];
            double a12_jp = a12n[std::min(j + 1, NY - 1) * NX + i];
            double a12_jm = a12n[std::max(j - 1, 0) * NX + i];
            if (bc.x == BC::periodic) {
                a12_ip = a12n[j * NX + wrap(i + 1, NX)];
                a12_im = a12n[j * NX + wrap(i - 1, NX)];
            }
            if (bc.y == BC::periodic) {
                a12_jp = a12n[wrap(j + 1, NY) * NX + i];
                a12_jm = a12n[wrap(j - 1, NY) * NX + i];
            }
            out[j * NX + i] +=
                i4h2 * (a12_ip * dy_ip - a12_im * dy_im + a12_jp * dx_jp - a12_jm * dx_jm);
        }
    });
}

void StencilPlan::add_advection(const std::vector<double>& v, std::vector<double>& out,
                                bool withb) const {
    if (!advective) return;
    const int NX = nx, NY = ny;
    const double ih = 1.0 / h;

    kernels::for_range(NY, [&](int j) {
        const int base = j * NX;
        const double* q1 = q1f.data() + j * (NX + 1);
        auto node_x = [&](int i) -> double {
            if (i < 0) {
                if (bc.x == BC::periodic) return v[base + NX - 1];
                if (bc.x == BC::neumann) return v[base];
                return withb ? bc.x_lo : 0.0;
            }
            if (i >= NX) {
                if (bc.x == BC::periodic) return v[base];
                if (bc.x == BC::neumann) return v[base + NX - 1];
                return withb ? bc.x_hi : 0.0;
            }
            return v[base + i];
        };
        for (int i = 0; i < NX; ++i) {
            // face f carries q1[f]; upwind picks the high-side node when q > 0.
            // Subtracting u * div_h(q) zeroes the row sum exactly, so constants
            // are annihilated even where the face divergence does not cancel
            // (non-periodic boundaries); off-diagonal signs are unchanged.
            double qp = q1[i + 1];
            double qm = q1[i];
            double up = qp > 0 ? node_x(i + 1) : node_x(i);
            double um = qm > 0 ? node_x(i) : node_x(i - 1);
            out[base + i] += ih * (qp * up - qm * um - v[base + i] * (qp - qm));
        }
        if (NY > 1) {
            auto node_y = [&](int i, int jj) -> double {
                if (jj < 0) {
                    if (bc.y == BC::periodic) return v[(NY - 1) * NX + i];
                    if (bc.y == BC::neumann) return v[i];
                    return withb ? bc.y_lo : 0.0;
                }
                if (jj >= NY) {
                    if (bc.y == BC::periodic) return v[i];
                    if (bc.y == BC::neumann) return v[(NY - 1) * NX + i];
                    return withb ? bc.y_hi : 0.0;
                }
                return v[jj * NX + i];
            };
            for (int i = 0; i < NX; ++i) {
                double qp = q2f[(j + 1) * NX + i];
                double qm = q2f[j * NX + i];
                double up = qp > 0 ? node_y(i, j + 1) : node_y(i, j);
                double um = qm > 0 ? node_y(i, j) : node_y(i, j - 1);
                out[base + i] += ih * (qp * up - qm * um - v[base + i] * (qp - qm));
            }
        }
    });
}

GridField apply_operator(const PeriodicMedium& m, const GridField& u, const BoundaryConfig& bc) {
    StencilPlan plan = StencilPlan::build(m, u, bc);
    GridField out = u;
    plan.apply_diffusion(u.v, out.v, true);
    plan.add_advection(u.v, out.v, true);
    return out;
}

double stable_dt(const PeriodicMedium& m, double h, const SolverParams& p) {
    double dt = p.dt_cap > 0 ? p.dt_cap : 1e300;
    if (m.lip_f > 0) dt = std::min(dt, p.reaction_safety / m.lip_f);
    if (m.q_max > 0) dt = std::min(dt, p.advection_cfl * h / m.q_max);
    if (m.nu_max > 0) dt = std::min(dt, p.accuracy_factor * h / std::sqrt(m.nu_max));
    if (!(dt > 0) || dt > 1e200) throw std::invalid_argument("cannot determine a stable dt");
    return dt;
}

namespace {

struct ImexWorkspace {
    StencilPlan plan;
    // boundary contribution of the implicit diffusion operator (Dirichlet only)
    std::vector<double> diff_affine;
    std::vector<double> rhs, r, pv, Ap;
    std::vector<Vec2> xy;  // node coordinates for the reaction term
    // direct tridiagonal path for 1-D non-periodic grids
    bool tridiagonal = false;
    double tri_dt = -1.0;
    std::vector<double> tri_diag, tri_cp, tri_dp;

    explicit ImexWorkspace(const PeriodicMedium& m, const GridField& g, const BoundaryConfig& bc)
        : plan(StencilPlan::build(m, g, bc)) {
        std::vector<double> zero(g.v.size(), 0.0);
        diff_affine.resize(zero.size());
        plan.apply_diffusion(zero, diff_affine, true);
        rhs.resize(zero.size());
        r.resize(zero.size());
        pv.resize(zero.size());
        Ap.resize(zero.size());
        xy.resize(zero.size());
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) xy[g.idx(i, j)] = Vec2{g.x(i), g.y(j)};
        tridiagonal = g.ny == 1 && bc.x != BC::periodic;
    }

    // elimination factors for (I - dt D) on the 1-D grid
    void tri_prepare(double dt) {
        if (dt == tri_dt) return;
        tri_dt = dt;
        const int n = plan.nx;
        const double s = dt / (plan.h * plan.h);
        tri_diag.assign(n, 0.0);
        tri_cp.assign(n, 0.0);
        tri_dp.assign(n, 0.0);
        for (int i = 0; i < n; ++i) {
            double lo = plan.axf[i], hi = plan.axf[i + 1];
            if (i == 0 && plan.bc.x == BC::neumann) lo = 0.0;
            if (i == n - 1 && plan.bc.x == BC::neumann) hi = 0.0;
            tri_diag[i] = 1.0 + s * (lo + hi);
        }
        // forward elimination of the constant sub/super diagonals
        double c0 = -s * plan.axf[1];
        tri_cp[0] = c0 / tri_diag[0];
        for (int i = 1; i < n; ++i) {
            double sub = -s * plan.axf[i];
            double sup = -s * plan.axf[i + 1];
            double denom = tri_diag[i] - sub * tri_cp[i - 1];
            tri_cp[i] = sup / denom;
            tri_diag[i] = denom;  // store the pivot
        }
    }

    void tri_solve(double dt, const std::vector<double>& b, std::vector<double>& x) {
        tri_prepare(dt);
        const int n = plan.nx;
        const double s = dt / (plan.h * plan.h);
        tri_dp[0] = b[0] / tri_diag[0];
        for (int i = 1; i < n; ++i) {
            double sub = -s * plan.axf[i];
            tri_dp[i] = (b[i] - sub * tri_dp[i - 1]) / tri_diag[i];
        }
        x[n - 1] = tri_dp[n - 1];
        for (int i = n - 2; i >= 0; --i) x[i] = tri_dp[i] - tri_cp[i] * x[i + 1];
    }

    // y = v - dt * Dhom v
    void matvec(double dt, const std::vector<double>& v, std::vector<double>& y) {
        plan.apply_diffusion(v, y, false);
        const int n = static_cast<int>(v.size());
        kernels::for_range((n + 8191) / 8192, [&](int c) {
            int lo = c * 8192, hi = std::min(lo + 8192, n);
            for (int k = lo; k < hi; ++k) y[k] = v[k] - dt * y[k];
        });
    }

    int cg_solve(double dt, const std::vector<double>& b, std::vector<double>& x, double tol,
                 int max_iter) {
        const int n = static_cast<int>(b.size());
        matvec(dt, x, Ap);
        for (int k = 0; k < n; ++k) r[k] = b[k] - Ap[k];
        pv = r;
        double rr = kernels::dot(r, r);
        double bnorm = std::sqrt(kernels::dot(b, b));
        if (bnorm == 0) bnorm = 1;
        int it = 0;
        while (std::sqrt(rr) > tol * bnorm) {
            if (++it > max_iter) {
                std::ostringstream os;
                os << "implicit diffusion solve stalled: residual "
                   << std::sqrt(rr) / bnorm << " after " << max_iter << " iterations";
                throw std::runtime_error(os.str());
            }
            matvec(dt, pv, Ap);
            double pAp = kernels::dot(pv, Ap);
            double alpha = rr / pAp;
            kernels::axpy(alpha, pv, x);
            kernels::axpy(-alpha, Ap, r);
            double rr2 = kernels::dot(r, r);
            double beta = rr2 / rr;
            rr = rr2;
            const int nn = n;
            kernels::for_range((nn + 8191) / 8192, [&](int c) {
                int lo = c * 8192, hi = std::min(lo + 8192, nn);
                for (int k = lo; k < hi; ++k) pv[k] = r[k] + beta * pv[k];
            });
        }
        return it;
    }

    void imex_step(const PeriodicMedium& m, GridField& u, double dt, const SolverParams& p) {
        const int n = static_cast<int>(u.v.size());
        plan.add_advection(u.v, rhs, true);  // rhs must be zeroed first by caller pattern
        // rhs currently holds advection; fold in reaction and u
        kernels::for_range((n + 8191) / 8192, [&](int c) {
            int lo = c * 8192, hi = std::min(lo + 8192, n);
            for (int k = lo; k < hi; ++k)
                rhs[k] = u.v[k] + dt * (rhs[k] + m.reaction.f(xy[k], u.v[k]) + diff_affine[k]);
        });
        if (tridiagonal)
            tri_solve(dt, rhs, u.v);
        else
            cg_solve(dt, rhs, u.v, p.cg_tol, p.cg_max_iter);
        u.time += dt;
        double lo = kernels::min_value(u.v), hi = kernels::max_value(u.v);
        if (lo < -p.range_guard || hi > 1.0 + p.range_guard) {
            std::ostringstream os;
            os << "scheme left [0,1]: range [" << lo << ", " << hi << "] at t = " << u.time;
            throw std::runtime_error(os.str());
        }
    }
};

}  // namespace

GridField step(const PeriodicMedium& m, const GridField& u, double dt, const BoundaryConfig& bc,
               const SolverParams& p) {
    ImexWorkspace ws(m, u, bc);
    GridField out = u;
    std::fill(ws.rhs.begin(), ws.rhs.end(), 0.0);
    ws.imex_step(m, out, dt, p);
    return out;
}

struct Stepper::Impl {
    PeriodicMedium medium;
    SolverParams params;
    ImexWorkspace ws;
    Impl(const PeriodicMedium& m, const GridField& proto, const BoundaryConfig& bc,
         const SolverParams& p)
        : medium(m), params(p), ws(m, proto, bc) {}
};

Stepper::Stepper(const PeriodicMedium& m, const GridField& proto, const BoundaryConfig& bc,
                 const SolverParams& p)
    : impl_(std::make_unique<Impl>(m, proto, bc, p)), dt_(stable_dt(m, proto.h, p)) {}

Stepper::~Stepper() = default;

void Stepper::advance(GridField& u, double span) {
    if (span <= 0) return;
    int nsteps = std::max(1, static_cast<int>(std::ceil(span / dt_ - 1e-12)));
    double dt = span / nsteps;
    for (int s = 0; s < nsteps; ++s) {
        std::fill(impl_->ws.rhs.begin(), impl_->ws.rhs.end(), 0.0);
        impl_->ws.imex_step(impl_->medium, u, dt, impl_->params);
    }
}

Trajectory simulate(const PeriodicMedium& m, const GridField& u0, double T,
                    const std::vector<double>& output_times, const BoundaryConfig& bc,
                    const SolverParams& p, const StepObserver& observer) {
    if (T <= 0) throw std::invalid_argument("horizon T must be positive");
    for (double t : output_times)
        if (t < 0 || t > T + 1e-12) throw std::invalid_argument("output times must lie in [0, T]");
    double lo = u0.min(), hi = u0.max();
    if (lo < 0.0 || hi > 1.0) throw std::invalid_argument("initial data must take values in [0,1]");

    ImexWorkspace ws(m, u0, bc);
    const double dt0 = stable_dt(m, u0.h, p);

    std::vector<double> marks = output_times;
    std::sort(marks.begin(), marks.end());
    if (marks.empty() || std::abs(marks.back() - T) > 1e-12) marks.push_back(T);

    // boundary ring reference values
    std::vector<int> ring;
    for (int i = 0; i < u0.nx; ++i) {
        ring.push_back(u0.idx(i, 0));
        if (u0.ny > 1) ring.push_back(u0.idx(i, u0.ny - 1));
    }
    for (int j = 1; j + 1 < u0.ny; ++j) {
        ring.push_back(u0.idx(0, j));
        ring.push_back(u0.idx(u0.nx - 1, j));
    }
    std::vector<double> ring0(ring.size());
    for (size_t k = 0; k < ring.size(); ++k) ring0[k] = u0.v[ring[k]];

    Trajectory traj;
    GridField u = u0;
    double t = 0.0;
    auto emit = [&](double tt) {
        double drift = 0.0;
        for (size_t k = 0; k < ring.size(); ++k)
            drift = std::max(drift, std::abs(u.v[ring[k]] - ring0[k]));
        traj.append(tt, u);
        traj.ring_drift.push_back(drift);
    };
    if (!output_times.empty() && std::abs(output_times.front()) < 1e-12) emit(0.0);

    for (double mark : marks) {
        if (mark <= t + 1e-12) continue;
        double span = mark - t;
        int nsteps = std::max(1, static_cast<int>(std::ceil(span / dt0 - 1e-12)));
        double dt = span / nsteps;
        for (int s = 0; s < nsteps; ++s) {
            std::fill(ws.rhs.begin(), ws.rhs.end(), 0.0);
            ws.imex_step(m, u, dt, p);
            if (observer) observer(u.time, u);
        }
        t = mark;
        u.time = t;
        bool wanted = false;
        for (double ot : output_times)
            if (std::abs(ot - t) < 1e-9) wanted = true;
        if (wanted) emit(t);
    }
    if (traj.empty()) emit(t);
    return traj;
}

GridField initial_ball(const GridField& proto, double theta, double rx, double ry) {
    GridField g = proto;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double xx = g.x(i) / rx;
            double yy = g.is1d() ? 0.0 : g.y(j) / ry;
            g.at(i, j) = (xx * xx + yy * yy <= 1.0) ? theta : 0.0;
        }
    return g;
}

GridField initial_step(const GridField& proto, Vec2 e, double x_front, double width) {
    GridField g = proto;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double z = g.x(i) * e.x + (g.is1d() ? 0.0 : g.y(j) * e.y) - x_front;
            double v;
            if (width > 0)
                v = 0.5 * (1.0 - std::tanh(z / width));
            else
                v = z <= 0 ? 1.0 : 0.0;
            g.at(i, j) = v;
        }
    return g;
}

GridField initial_cone(const GridField& proto, double alpha) {
    if (proto.is1d()) throw std::invalid_argument("conical data requires a 2-D grid");
    GridField g = proto;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            g.at(i, j) = (g.y(j) <= alpha * std::abs(g.x(i))) ? 1.0 : 0.0;
    return g;
}

GridField initial_uniform(const GridField& proto, double value) {
    GridField g = proto;
    std::fill(g.v.begin(), g.v.end(), value);
    return g;
}

bool invasion_test(const PeriodicMedium& m, double theta, double rho, double T,
                   double query_radius, const InvasionParams& ip) {
    if (theta <= 0 || theta >= 1) throw std::invalid_argument("theta must lie in (0,1)");
    if (rho <= 0) throw std::invalid_argument("rho must be positive");
    GridField g = GridField::box(ip.L, ip.h, m.dim);
    g = initial_ball(g, theta, rho, rho);
    Trajectory traj = simulate(m, g, T, {T}, BoundaryConfig::all_neumann(), ip.solver);
    const GridField& u = traj.snaps.back();
    double lo = 1.0;
    for (int j = 0; j < u.ny; ++j)
        for (int i = 0; i < u.nx; ++i) {
            double xx = u.x(i), yy = u.is1d() ? 0.0 : u.y(j);
            if (xx * xx + yy * yy <= query_radius * query_radius)
                lo = std::min(lo, u.at(i, j));
        }
    return lo > 1.0 - ip.tol_inv;
}

}  // namespace frontlab
