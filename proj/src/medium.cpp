#include "frontlab/medium.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace frontlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double Reaction::f(Vec2 x, double s) const {
    switch (kind) {
        case ReactionKind::bistable:
            return s * (1.0 - s) * (s - alpha);
        case ReactionKind::ignition:
            return s > alpha ? (s - alpha) * (1.0 - s) : 0.0;
        case ReactionKind::kpp:
            return s * (1.0 - s);
        case ReactionKind::periodic_bistable: {
            double a = alpha + amp * std::sin(kTwoPi * x.x);
            return s * (1.0 - s) * (s - a);
        }
        case ReactionKind::table: {
            if (s <= knots_s.front()) return knots_f.front();
            if (s >= knots_s.back()) return knots_f.back();
            auto it = std::upper_bound(knots_s.begin(), knots_s.end(), s);
            size_t k = static_cast<size_t>(it - knots_s.begin());
            double t = (s - knots_s[k - 1]) / (knots_s[k] - knots_s[k - 1]);
            return (1 - t) * knots_f[k - 1] + t * knots_f[k];
        }
    }
    return 0.0;
}

double Reaction::dfds(Vec2 x, double s) const {
    switch (kind) {
        case ReactionKind::bistable:
            return -3 * s * s + 2 * (1 + alpha) * s - alpha;
        case ReactionKind::ignition:
            return s > alpha ? 1.0 + alpha - 2 * s : 0.0;
        case ReactionKind::kpp:
            return 1.0 - 2 * s;
        case ReactionKind::periodic_bistable: {
            double a = alpha + amp * std::sin(kTwoPi * x.x);
            return -3 * s * s + 2 * (1 + a) * s - a;
        }
        case ReactionKind::table: {
            if (s <= knots_s.front() || s >= knots_s.back()) {
                // one-sided slope at the ends
                size_t k = s <= knots_s.front() ? 1 : knots_s.size() - 1;
                return (knots_f[k] - knots_f[k - 1]) / (knots_s[k] - knots_s[k - 1]);
            }
            auto it = std::upper_bound(knots_s.begin(), knots_s.end(), s);
            size_t k = static_cast<size_t>(it - knots_s.begin());
            return (knots_f[k] - knots_f[k - 1]) / (knots_s[k] - knots_s[k - 1]);
        }
    }
    return 0.0;
}

Reaction Reaction::bistable(double a) {
    if (a <= 0.0 || a >= 1.0) throw std::invalid_argument("bistable alpha must lie in (0,1)");
    Reaction r;
    r.kind = ReactionKind::bistable;
    r.alpha = a;
    r.name = "bistable";
    return r;
}

Reaction Reaction::ignition(double a) {
    if (a <= 0.0 || a >= 1.0) throw std::invalid_argument("ignition alpha must lie in (0,1)");
    Reaction r;
    r.kind = ReactionKind::ignition;
    r.alpha = a;
    r.name = "ignition";
    return r;
}

Reaction Reaction::kpp() {
    Reaction r;
    r.kind = ReactionKind::kpp;
    r.name = "kpp";
    return r;
}

Reaction Reaction::periodic_bistable(double a0, double amp) {
    if (a0 - std::abs(amp) <= 0.0 || a0 + std::abs(amp) >= 1.0)
        throw std::invalid_argument("periodic bistable alpha range must stay in (0,1)");
    Reaction r;
    r.kind = ReactionKind::periodic_bistable;
    r.alpha = a0;
    r.amp = amp;
    r.name = "periodic-bistable";
    return r;
}

Reaction Reaction::table(std::vector<double> s, std::vector<double> f) {
    if (s.size() != f.size() || s.size() < 2)
        throw std::invalid_argument("reaction table needs matching knot vectors");
    if (std::abs(s.front()) > 0 || std::abs(s.back() - 1.0) > 0)
        throw std::invalid_argument("reaction table must cover [0,1]");
    if (f.front() != 0.0 || f.back() != 0.0)
        throw std::invalid_argument("reaction table must vanish at the endpoints");
    for (size_t k = 1; k < s.size(); ++k)
        if (s[k] <= s[k - 1]) throw std::invalid_argument("reaction table knots must increase");
    Reaction r;
    r.kind = ReactionKind::table;
    r.knots_s = std::move(s);
    r.knots_f = std::move(f);
    r.name = "table";
    return r;
}

CoefficientField CoefficientField::identity() {
    CoefficientField c;
    c.A = [](Vec2, double& a11, double& a12, double& a22) {
        a11 = 1.0;
        a12 = 0.0;
        a22 = 1.0;
    };
    c.q = [](Vec2) { return Vec2{0, 0}; };
    return c;
}

CoefficientField CoefficientField::diag(double d1, double d2) {
    CoefficientField c = identity();
    c.A = [d1, d2](Vec2, double& a11, double& a12, double& a22) {
        a11 = d1;
        a12 = 0.0;
        a22 = d2;
    };
    std::ostringstream os;
    os << "diag(" << d1 << "," << d2 << ")";
    c.a_name = os.str();
    return c;
}

CoefficientField CoefficientField::rotated(double d1, double d2, double theta) {
    CoefficientField c = identity();
    double ct = std::cos(theta), st = std::sin(theta);
    // R diag(d1,d2) R^T with R = [[ct,-st],[st,ct]]
    double a11 = ct * ct * d1 + st * st * d2;
    double a12 = ct * st * (d1 - d2);
    double a22 = st * st * d1 + ct * ct * d2;
    c.A = [a11, a12, a22](Vec2, double& o11, double& o12, double& o22) {
        o11 = a11;
        o12 = a12;
        o22 = a22;
    };
    std::ostringstream os;
    os << "rotated(" << d1 << "," << d2 << "," << theta << ")";
    c.a_name = os.str();
    return c;
}

CoefficientField CoefficientField::oscillating(double base, double amp) {
    if (base - std::abs(amp) <= 0)
        throw std::invalid_argument("oscillating diffusion must stay positive");
    CoefficientField c = identity();
    c.A = [base, amp](Vec2 x, double& a11, double& a12, double& a22) {
        double a = base + amp * std::sin(kTwoPi * x.x) * std::sin(kTwoPi * x.y);
        a11 = a;
        a12 = 0.0;
        a22 = a;
    };
    std::ostringstream os;
    os << "oscillating(" << base << "," << amp << ")";
    c.a_name = os.str();
    return c;
}

CoefficientField CoefficientField::with_shear(double beta) const {
    CoefficientField c = *this;
    c.q = [beta](Vec2 x) {
        return Vec2{beta * std::sin(kTwoPi * x.y), beta * std::sin(kTwoPi * x.x)};
    };
    std::ostringstream os;
    os << "shear(" << beta << ")";
    c.q_name = os.str();
    return c;
}

CoefficientField CoefficientField::with_cellular(double beta) const {
    CoefficientField c = *this;
    c.q = [beta](Vec2 x) {
        return Vec2{beta * std::sin(kTwoPi * x.x) * std::cos(kTwoPi * x.y),
                    -beta * std::cos(kTwoPi * x.x) * std::sin(kTwoPi * x.y)};
    };
    std::ostringstream os;
    os << "cellular(" << beta << ")";
    c.q_name = os.str();
    return c;
}

bool PeriodicMedium::varies_along(int axis) const {
    const int M = cell_res;
    const int rows = dim == 2 ? M : 1;
    auto field_varies = [&](const std::vector<double>& f) {
        if (f.empty()) return false;
        for (int j = 0; j < rows; ++j)
            for (int i = 0; i < M; ++i) {
                int k = j * M + i;
                int k0 = axis == 0 ? j * M : i;  // first sample along the axis
                if (f[k] != f[k0]) return true;
            }
        return false;
    };
    bool v = field_varies(a11) || field_varies(a12) || field_varies(a22) || field_varies(q1) ||
             field_varies(q2);
    if (!reaction.homogeneous() && axis == 0) v = true;  // alpha(x) depends on x1
    return v;
}

bool PeriodicMedium::homogeneous_coeffs() const {
    auto constant = [](const std::vector<double>& a) {
        for (double v : a)
            if (v != a.front()) return false;
        return true;
    };
    return constant(a11) && (dim == 1 || (constant(a12) && constant(a22))) && constant(q1) &&
           (dim == 1 || constant(q2));
}

PeriodicMedium build_medium(int dim, int cell_res, const CoefficientField& coeffs,
                            const Reaction& reaction, double delta) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("dimension must be 1 or 2");
    if (cell_res < 2) throw std::invalid_argument("cell resolution must be at least 2");
    if (delta <= 0.0 || delta >= 0.5) throw std::invalid_argument("delta must lie in (0, 1/2)");

    PeriodicMedium m;
    m.dim = dim;
    m.cell_res = cell_res;
    m.delta = delta;
    m.reaction = reaction;
    m.a_name = coeffs.a_name;
    m.q_name = coeffs.q_name;

    const int M = cell_res;
    const int n = dim == 1 ? M : M * M;
    m.a11.resize(n);
    m.q1.resize(n);
    if (dim == 2) {
        m.a12.resize(n);
        m.a22.resize(n);
        m.q2.resize(n);
    }
    const double hc = 1.0 / M;
    for (int j = 0; j < (dim == 2 ? M : 1); ++j) {
        for (int i = 0; i < M; ++i) {
            Vec2 x{i * hc, j * hc};
            double a11, a12, a22;
            coeffs.A(x, a11, a12, a22);
            Vec2 q = coeffs.q(x);
            int k = j * M + i;
            m.a11[k] = a11;
            m.q1[k] = q.x;
            if (dim == 2) {
                m.a12[k] = a12;
                m.a22[k] = a22;
                m.q2[k] = q.y;
            }
        }
    }

    auto sample_all = [&](Vec2 x) {
        double a11, a12, a22;
        coeffs.A(x, a11, a12, a22);
        Vec2 q = coeffs.q(x);
        return std::array<double, 5>{a11, a12, a22, q.x, q.y};
    };
    for (int j = 0; j < (dim == 2 ? M : 1); ++j) m.wrap_x.push_back(sample_all({1.0, j * hc}));
    if (dim == 2)
        for (int i = 0; i < M; ++i) m.wrap_y.push_back(sample_all({i * hc, 1.0}));

    // cached bounds for time-step selection
    double lip = 0.0;
    const int ns = 512;
    for (int k = 0; k < n; ++k) {
        int i = k % M, j = k / M;
        Vec2 x{i * hc, j * hc};
        for (int is = 0; is <= ns; ++is)
            lip = std::max(lip, std::abs(reaction.dfds(x, static_cast<double>(is) / ns)));
    }
    m.lip_f = lip;
    for (int k = 0; k < n; ++k) {
        double qa = std::abs(m.q1[k]) + (dim == 2 ? std::abs(m.q2[k]) : 0.0);
        m.q_max = std::max(m.q_max, qa);
        double numax;
        if (dim == 1) {
            numax = m.a11[k];
        } else {
            double tr = m.a11[k] + m.a22[k];
            double det = m.a11[k] * m.a22[k] - m.a12[k] * m.a12[k];
            numax = 0.5 * (tr + std::sqrt(std::max(tr * tr - 4 * det, 0.0)));
        }
        m.nu_max = std::max(m.nu_max, numax);
    }
    return m;
}

bool ValidationReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

const CheckResult& ValidationReport::check(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c;
    throw std::invalid_argument("no such check: " + name);
}

namespace {

std::string loc_string(Vec2 x) {
    std::ostringstream os;
    os << "x=(" << x.x << "," << x.y << ")";
    return os.str();
}

}  // namespace

ValidationReport validate_medium(const PeriodicMedium& m, const MediumTolerances& tol) {
    const int M = m.cell_res;
    const int rows = m.dim == 2 ? M : 1;
    const int n = m.n_samples();
    if (static_cast<int>(m.a11.size()) != n || static_cast<int>(m.q1.size()) != n ||
        (m.dim == 2 && (static_cast<int>(m.a12.size()) != n || static_cast<int>(m.a22.size()) != n ||
                        static_cast<int>(m.q2.size()) != n)))
        throw std::invalid_argument("medium sample arrays do not match the cell grid");

    const double hc = 1.0 / M;
    ValidationReport rep;

    {
        CheckResult c{"ellipticity", true, 1e300, ""};
        for (int k = 0; k < n; ++k) {
            double lam_min;
            if (m.dim == 1) {
                lam_min = m.a11[k];
            } else {
                double tr = m.a11[k] + m.a22[k];
                double det = m.a11[k] * m.a22[k] - m.a12[k] * m.a12[k];
                lam_min = 0.5 * (tr - std::sqrt(std::max(tr * tr - 4 * det, 0.0)));
            }
            if (lam_min < c.worst) {
                c.worst = lam_min;
                c.where = loc_string({(k % M) * hc, (k / M) * hc});
            }
        }
        c.pass = c.worst > 0.0;
        rep.checks.push_back(c);
    }

    double qscale = std::max(1.0, m.q_max);
    {
        // centered differences with wrap-around, matching the solver grid
        CheckResult c{"divergence-free", true, 0.0, ""};
        for (int j = 0; j < rows; ++j) {
            for (int i = 0; i < M; ++i) {
                int ip = (i + 1) % M, im = (i - 1 + M) % M;
                double div = (m.q1[j * M + ip] - m.q1[j * M + im]) / (2 * hc);
                if (m.dim == 2) {
                    int jp = (j + 1) % M, jm = (j - 1 + M) % M;
                    div += (m.q2[jp * M + i] - m.q2[jm * M + i]) / (2 * hc);
                }
                if (std::abs(div) > c.worst) {
                    c.worst = std::abs(div);
                    c.where = loc_string({i * hc, j * hc});
                }
            }
        }
        c.pass = c.worst <= tol.div * qscale;
        rep.checks.push_back(c);
    }

    {
        CheckResult c{"zero-average", true, 0.0, ""};
        double s1 = 0, s2 = 0;
        for (int k = 0; k < n; ++k) {
            s1 += m.q1[k];
            if (m.dim == 2) s2 += m.q2[k];
        }
        c.worst = std::max(std::abs(s1 / n), std::abs(s2 / n));
        c.pass = c.worst <= tol.avg * qscale;
        rep.checks.push_back(c);
    }

    {
        // sample(M) must agree with sample(0) componentwise
        CheckResult c{"periodicity", true, 0.0, ""};
        auto fields_at = [&](int k) {
            return std::array<double, 5>{m.a11[k], m.dim == 2 ? m.a12[k] : 0.0,
                                         m.dim == 2 ? m.a22[k] : 0.0, m.q1[k],
                                         m.dim == 2 ? m.q2[k] : 0.0};
        };
        double scale = std::max({1.0, m.nu_max, m.q_max});
        for (int j = 0; j < rows; ++j) {
            auto lo = fields_at(j * M);
            for (int comp = 0; comp < 5; ++comp) {
                double d = std::abs(m.wrap_x[j][comp] - lo[comp]) / scale;
                if (d > c.worst) {
                    c.worst = d;
                    c.where = loc_string({1.0, j * hc});
                }
            }
        }
        for (int i = 0; i < static_cast<int>(m.wrap_y.size()); ++i) {
            auto lo = fields_at(i);
            for (int comp = 0; comp < 5; ++comp) {
                double d = std::abs(m.wrap_y[i][comp] - lo[comp]) / scale;
                if (d > c.worst) {
                    c.worst = d;
                    c.where = loc_string({i * hc, 1.0});
                }
            }
        }
        c.pass = c.worst <= tol.periodicity;
        rep.checks.push_back(c);
    }

    {
        CheckResult c{"endpoint-zeros", true, 0.0, ""};
        for (int k = 0; k < n; ++k) {
            Vec2 x{(k % M) * hc, (k / M) * hc};
            double f0 = std::abs(m.reaction.f(x, 0.0));
            double f1 = std::abs(m.reaction.f(x, 1.0));
            double w = std::max(f0, f1);
            if (w > c.worst) {
                c.worst = w;
                c.where = loc_string(x);
            }
        }
        c.pass = c.worst == 0.0;
        rep.checks.push_back(c);
    }

    return rep;
}

StabilityResult check_weak_stability(const PeriodicMedium& m, double delta) {
    if (delta <= 0.0 || delta >= 0.5) throw std::invalid_argument("delta must lie in (0, 1/2)");
    const int M = m.cell_res;
    const int rows = m.dim == 2 ? M : 1;
    const double hc = 1.0 / M;
    const int ns = 256;
    StabilityResult r;
    for (int j = 0; j < rows; ++j) {
        for (int i = 0; i < M; ++i) {
            Vec2 x{i * hc, j * hc};
            for (int is = 0; is <= ns; ++is) {
                double s = delta * is / ns;
                if (m.reaction.dfds(x, s) > 1e-12) {
                    r.ok = false;
                    r.witness_x = x;
                    r.witness_s = s;
                    return r;
                }
            }
            for (int is = 0; is <= ns; ++is) {
                double s = 1.0 - delta + delta * is / ns;
                if (m.reaction.dfds(x, s) >= 0.0) {
                    r.ok = false;
                    r.witness_x = x;
                    r.witness_s = s;
                    return r;
                }
            }
        }
    }
    r.ok = true;
    return r;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6 * (fa + 4 * flm + fm);
    double right = (b - m) / 6 * (fm + 4 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15 * tol)
        return left + right + (left + right - whole) / 15;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 24);
}

}  // namespace

bool check_homogeneous_invasion(const Reaction& r) {
    if (!r.homogeneous())
        throw std::invalid_argument("invasion condition requires a homogeneous reaction");
    auto f = [&](double s) { return r.f(Vec2{0, 0}, s); };

    // theta < 1 with f > 0 on [theta, 1)
    const int ns = 1024;
    int last_nonpos = -1;
    for (int i = 0; i < ns; ++i) {
        double s = static_cast<double>(i) / ns;
        if (s > 0 && f(s) <= 0.0) last_nonpos = i;
    }
    if (last_nonpos >= ns - 2) return false;  // no positive window below 1

    // tail integrals: G(s) = int_s^1 f must be positive for all s in [0,1)
    std::vector<double> knots(ns + 1);
    for (int i = 0; i <= ns; ++i) knots[i] = static_cast<double>(i) / ns;
    double G = 0.0;
    double minG = 1e300;
    for (int i = ns - 1; i >= 0; --i) {
        G += integrate(f, knots[i], knots[i + 1], 1e-13);
        if (knots[i] < 1.0) minG = std::min(minG, G);
    }
    return minG > 1e-12;
}

}  // namespace frontlab
