#include "frontlab/eigenproblem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "frontlab/solver.hpp"

namespace frontlab {

namespace {

int wrap(int i, int n) { return (i % n + n) % n; }

struct CellOperator {
    StencilPlan plan;
    std::vector<double> pot;  // potential term at nodes
    double gershgorin = 0.0;
    double op_scale = 1.0;  // bound on the absolute row sums of L
    GridField proto;

    CellOperator(const PeriodicMedium& m, Vec2 e, double lambda) {
        const int M = m.cell_res;
        const double h = 1.0 / M;
        proto = GridField::make(M, m.dim == 2 ? M : 1, 0.0, 0.0, h);
        BoundaryConfig bc;
        bc.x = BC::periodic;
        bc.y = BC::periodic;
        plan = StencilPlan::build(m, proto, bc);

        const int rows = m.dim == 2 ? M : 1;
        const int n = M * rows;

        // node fields: twisted drift w = q - 2 lambda A e and flux F = A e
        std::vector<double> w1(n), w2(m.dim == 2 ? n : 0), F1(n), F2(m.dim == 2 ? n : 0);
        for (int k = 0; k < n; ++k) {
            double a11 = m.a11[k];
            double a12 = m.dim == 2 ? m.a12[k] : 0.0;
            double a22 = m.dim == 2 ? m.a22[k] : 0.0;
            F1[k] = a11 * e.x + a12 * e.y;
            w1[k] = m.q1[k] - 2 * lambda * F1[k];
            if (m.dim == 2) {
                F2[k] = a12 * e.x + a22 * e.y;
                w2[k] = m.q2[k] - 2 * lambda * F2[k];
            }
        }
        // replace the plan's advective face velocities by the twisted drift
        for (int j = 0; j < rows; ++j)
            for (int f = 0; f <= M; ++f)
                plan.q1f[j * (M + 1) + f] =
                    0.5 * (w1[j * M + wrap(f - 1, M)] + w1[j * M + wrap(f, M)]);
        if (m.dim == 2)
            for (int f = 0; f <= M; ++f)
                for (int i = 0; i < M; ++i)
                    plan.q2f[f * M + i] =
                        0.5 * (w2[wrap(f - 1, M) * M + i] + w2[wrap(f, M) * M + i]);
        plan.advective = false;
        for (double v : plan.q1f)
            if (v != 0.0) plan.advective = true;
        for (double v : plan.q2f)
            if (v != 0.0) plan.advective = true;

        // potential: lambda^2 eAe - lambda div(Ae) - lambda q.e, with the
        // divergence taken by the same centered/wrapped differences
        pot.resize(n);
        const double i2h = M / 2.0;  // 1 / (2h)
        for (int j = 0; j < rows; ++j) {
            for (int i = 0; i < M; ++i) {
                int k = j * M + i;
                double divF =
                    (F1[j * M + wrap(i + 1, M)] - F1[j * M + wrap(i - 1, M)]) * i2h;
                if (m.dim == 2)
                    divF += (F2[wrap(j + 1, rows) * M + i] - F2[wrap(j - 1, rows) * M + i]) * i2h;
                double eAe = m.a11[k] * e.x * e.x;
                if (m.dim == 2) eAe += 2 * m.a12[k] * e.x * e.y + m.a22[k] * e.y * e.y;
                double qe = m.q1[k] * e.x + (m.dim == 2 ? m.q2[k] * e.y : 0.0);
                pot[k] = lambda * lambda * eAe - lambda * divF - lambda * qe;
            }
        }

        // upper Gershgorin bound: the monotone part has zero row sums, so
        // only the potential and (when present) the mixed a12 stencil count
        double g = pot.empty() ? 0.0 : *std::max_element(pot.begin(), pot.end());
        double a12max = 0.0;
        for (double v : plan.a12n) a12max = std::max(a12max, std::abs(v));
        if (plan.mixed) g += 2.0 * a12max / (h * h);
        gershgorin = g;

        double axmax = 0.0, wmax = 0.0, potmax = 0.0;
        for (double v : plan.axf) axmax = std::max(axmax, v);
        for (double v : plan.ayf) axmax = std::max(axmax, v);
        for (double v : plan.q1f) wmax = std::max(wmax, std::abs(v));
        for (double v : plan.q2f) wmax = std::max(wmax, std::abs(v));
        for (double v : pot) potmax = std::max(potmax, std::abs(v));
        op_scale = 8 * axmax / (h * h) + 4 * a12max / (h * h) + 4 * wmax / h + potmax;
    }

    void apply(const std::vector<double>& v, std::vector<double>& out) const {
        plan.apply_diffusion(v, out, false);
        plan.add_advection(v, out, false);
        const int n = static_cast<int>(v.size());
        for (int k = 0; k < n; ++k) out[k] += pot[k] * v[k];
    }

    // y = (sigma I - L) v
    void shifted(double sigma, const std::vector<double>& v, std::vector<double>& y) const {
        apply(v, y);
        const int n = static_cast<int>(v.size());
        for (int k = 0; k < n; ++k) y[k] = sigma * v[k] - y[k];
    }
};

// matrix-free BiCGstab for the shifted cell operator
void bicgstab(const CellOperator& op, double sigma, const std::vector<double>& b,
              std::vector<double>& x, double tol, int max_iter) {
    const int n = static_cast<int>(b.size());
    std::vector<double> r(n), r0(n), p(n), v(n), s(n), t(n);
    op.shifted(sigma, x, r);
    for (int k = 0; k < n; ++k) r[k] = b[k] - r[k];
    r0 = r;
    double rho = 1, alpha = 1, omega = 1;
    std::fill(p.begin(), p.end(), 0.0);
    std::fill(v.begin(), v.end(), 0.0);
    double bnorm = std::sqrt(kernels::dot(b, b));
    if (bnorm == 0) bnorm = 1;
    if (std::sqrt(kernels::dot(r, r)) <= tol * bnorm) return;
    for (int it = 0; it < max_iter; ++it) {
        double rho1 = kernels::dot(r0, r);
        if (rho1 == 0.0) {
            if (std::sqrt(kernels::dot(r, r)) <= 100 * tol * bnorm) return;
            throw std::runtime_error("cell linear solve broke down");
        }
        double beta = (rho1 / rho) * (alpha / omega);
        rho = rho1;
        for (int k = 0; k < n; ++k) p[k] = r[k] + beta * (p[k] - omega * v[k]);
        op.shifted(sigma, p, v);
        alpha = rho / kernels::dot(r0, v);
        for (int k = 0; k < n; ++k) s[k] = r[k] - alpha * v[k];
        if (std::sqrt(kernels::dot(s, s)) <= tol * bnorm) {
            kernels::axpy(alpha, p, x);
            return;
        }
        op.shifted(sigma, s, t);
        omega = kernels::dot(t, s) / kernels::dot(t, t);
        for (int k = 0; k < n; ++k) {
            x[k] += alpha * p[k] + omega * s[k];
            r[k] = s[k] - omega * t[k];
        }
        if (std::sqrt(kernels::dot(r, r)) <= tol * bnorm) return;
    }
    throw std::runtime_error("cell linear solve did not converge");
}

}  // namespace

EigenPair principal_eigenvalue(const PeriodicMedium& m, Vec2 e, double lambda,
                               const EigenParams& p) {
    double elen = norm(e);
    if (std::abs(elen - 1.0) > 1e-9) throw std::invalid_argument("direction must be a unit vector");
    if (lambda < 0) throw std::invalid_argument("lambda must be nonnegative");

    CellOperator op(m, e, lambda);
    const int n = op.proto.size();
    const double sigma = op.gershgorin + 1.0;

    std::vector<double> v(n, 1.0), w(n), Lw(n);
    EigenPair out;
    out.e = e;
    out.lambda = lambda;

    for (int it = 1; it <= p.max_iter; ++it) {
        w = v;
        bicgstab(op, sigma, v, w, p.linear_tol, p.linear_max_iter);
        // orient and normalize by the max element
        double mx = 0.0;
        for (double x : w)
            if (std::abs(x) > std::abs(mx)) mx = x;
        if (mx == 0.0) throw std::runtime_error("inverse iteration collapsed to zero");
        for (auto& x : w) x /= mx;

        op.apply(w, Lw);
        double num = kernels::dot(w, Lw), den = kernels::dot(w, w);
        double k = num / den;
        double res = 0.0;
        for (int i = 0; i < n; ++i) res = std::max(res, std::abs(Lw[i] - k * w[i]));
        v = w;
        if (res <= p.tol * op.op_scale) {
            out.k = k;
            out.residual = res;
            out.residual_threshold = p.tol * op.op_scale;
            out.iterations = it;
            out.phi = op.proto;
            out.phi.v = std::move(w);
            double mn = kernels::min_value(out.phi.v);
            if (mn <= 0.0)
                throw std::runtime_error("principal eigenfunction lost positivity");
            return out;
        }
    }
    std::ostringstream os;
    os << "eigen iteration did not converge within " << p.max_iter << " sweeps";
    throw std::runtime_error(os.str());
}

std::vector<double> apply_cell_operator(const PeriodicMedium& m, Vec2 e, double lambda,
                                        const std::vector<double>& phi) {
    CellOperator op(m, e, lambda);
    if (phi.size() != static_cast<size_t>(op.proto.size()))
        throw std::invalid_argument("field does not match the medium cell");
    std::vector<double> out(phi.size());
    op.apply(phi, out);
    return out;
}

double eigenfunction_residual(const EigenPair& pair, const PeriodicMedium& m) {
    if (pair.phi.nx != m.cell_res || (m.dim == 2 && pair.phi.ny != m.cell_res))
        throw std::invalid_argument("eigenfunction grid does not match the medium cell");
    CellOperator op(m, pair.e, pair.lambda);
    std::vector<double> Lp(pair.phi.v.size());
    op.apply(pair.phi.v, Lp);
    double res = 0.0;
    for (size_t i = 0; i < Lp.size(); ++i)
        res = std::max(res, std::abs(Lp[i] - pair.k * pair.phi.v[i]));
    return res;
}

SlopeReport slope_check(const PeriodicMedium& m, Vec2 e, const std::vector<double>& lambdas,
                        double slope_tol, const EigenParams& p) {
    if (lambdas.empty()) throw std::invalid_argument("lambda sequence must be non-empty");
    for (size_t i = 1; i < lambdas.size(); ++i)
        if (lambdas[i] >= lambdas[i - 1] || lambdas[i] <= 0)
            throw std::invalid_argument("lambda sequence must decrease toward zero");

    SlopeReport rep;
    for (double l : lambdas) {
        EigenPair pair = principal_eigenvalue(m, e, l, p);
        rep.rows.push_back({l, pair.k, std::abs(pair.k) / l});
    }
    rep.ratios_decreasing = true;
    for (size_t i = 1; i < rep.rows.size(); ++i)
        if (rep.rows[i].ratio >= rep.rows[i - 1].ratio) rep.ratios_decreasing = false;
    rep.final_ratio = rep.rows.back().ratio;
    rep.slope_tol = slope_tol > 0 ? slope_tol : 0.5 * rep.rows.front().ratio;
    rep.pass = rep.ratios_decreasing && rep.final_ratio <= rep.slope_tol;
    return rep;
}

}  // namespace frontlab
