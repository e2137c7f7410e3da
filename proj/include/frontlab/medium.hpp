#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "frontlab/core.hpp"

namespace frontlab {

enum class ReactionKind { bistable, ignition, kpp, periodic_bistable, table };

/// Reaction term f(x, s) with endpoint zeros f(x,0) = f(x,1) = 0.
/// Built-in kinds:
///   bistable(a):           f(s) = s (1-s) (s-a)
///   ignition(a):           f(s) = (s-a)(1-s) for s > a, else 0
///   kpp:                   f(s) = s (1-s)
///   periodic_bistable:     f(x,s) = s (1-s) (s - a(x)),  a(x) = a0 + amp sin(2 pi x1)
///   table:                 piecewise-linear f(s) from (s_i, f_i) knots on [0,1]
struct Reaction {
    ReactionKind kind = ReactionKind::bistable;
    double alpha = 0.25;
    double amp = 0.0;
    std::vector<double> knots_s, knots_f;
    std::string name;

    double f(Vec2 x, double s) const;
    double dfds(Vec2 x, double s) const;
    bool homogeneous() const { return kind != ReactionKind::periodic_bistable; }

    static Reaction bistable(double a);
    static Reaction ignition(double a);
    static Reaction kpp();
    static Reaction periodic_bistable(double a0, double amp);
    static Reaction table(std::vector<double> s, std::vector<double> f);
};

/// Symmetric diffusion matrix and drift evaluators used to build media.
using MatrixEval = std::function<void(Vec2 x, double& a11, double& a12, double& a22)>;
using VectorEval = std::function<Vec2(Vec2 x)>;

struct CoefficientField {
    MatrixEval A;
    VectorEval q;
    std::string a_name = "identity";
    std::string q_name = "none";

    static CoefficientField identity();
    static CoefficientField diag(double d1, double d2);
    /// diag(d1, d2) conjugated by a rotation of angle theta
    static CoefficientField rotated(double d1, double d2, double theta);
    /// a(x) I with a = base + amp sin(2 pi x1) sin(2 pi x2)
    static CoefficientField oscillating(double base, double amp);
    /// q = (beta sin 2 pi x2, beta sin 2 pi x1), divergence-free, zero average
    CoefficientField with_shear(double beta) const;
    /// q = (beta sin 2 pi x1 cos 2 pi x2, -beta cos 2 pi x1 sin 2 pi x2)
    CoefficientField with_cellular(double beta) const;
};

/// Periodic coefficients of the equation, sampled once on the unit cell at
/// resolution M (M samples per unit length; node k at k/M). Immutable after
/// construction; shares across threads freely.
struct PeriodicMedium {
    int dim = 2;
    int cell_res = 0;  // M
    double delta = 0.05;
    Reaction reaction;
    std::string a_name, q_name;

    // node samples on the cell, index j*M + i (j = 0 for dim 1)
    std::vector<double> a11, a12, a22;
    std::vector<double> q1, q2;
    // evaluator samples at coordinate 1 along each axis, kept for the
    // periodicity check: wrap_x[j] = fields(1, j/M), wrap_y[i] = fields(i/M, 1);
    // entry order (a11, a12, a22, q1, q2)
    std::vector<std::array<double, 5>> wrap_x, wrap_y;

    double lip_f = 0.0;   // bound on |df/ds| over cell x [0,1]
    double q_max = 0.0;   // bound on |q1| + |q2|
    double nu_max = 0.0;  // bound on the largest eigenvalue of A

    int n_samples() const { return dim == 1 ? cell_res : cell_res * cell_res; }
    bool homogeneous_coeffs() const;
    /// any sampled field or the reaction varies along the given axis (0/1)
    bool varies_along(int axis) const;
};

PeriodicMedium build_medium(int dim, int cell_res, const CoefficientField& coeffs,
                            const Reaction& reaction, double delta = 0.05);

struct CheckResult {
    std::string name;
    bool pass = false;
    double worst = 0.0;
    std::string where;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
    const CheckResult& check(const std::string& name) const;
};

struct MediumTolerances {
    double div = 1e-8;  // relative to max |q|
    double avg = 1e-8;
    double periodicity = 1e-12;
};

/// Checks ellipticity, discrete divergence-freeness and zero cell average of
/// q, 1-periodicity of all samples, and endpoint zeros of f. Deterministic
/// and idempotent.
ValidationReport validate_medium(const PeriodicMedium& m, const MediumTolerances& tol = {});

struct StabilityResult {
    bool ok = false;
    Vec2 witness_x{};
    double witness_s = -1.0;
};

/// True iff df/ds <= 0 on [0, delta] and < 0 on [1-delta, 1] at every cell
/// sample. The witness is the first violating (x, s).
StabilityResult check_weak_stability(const PeriodicMedium& m, double delta);

/// True iff f > 0 on some [theta, 1) and the tail integral of f from s to 1
/// is positive for every s in [0, 1). Requires a homogeneous reaction.
bool check_homogeneous_invasion(const Reaction& r);

}  // namespace frontlab
