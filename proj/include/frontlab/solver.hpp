#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "frontlab/grid.hpp"
#include "frontlab/medium.hpp"

namespace frontlab {

struct SolverParams {
    double cg_tol = 1e-10;       // relative residual of the implicit solve
    int cg_max_iter = 200000;
    double dt_cap = 0.0;         // 0 = no explicit cap
    double reaction_safety = 0.5;   // dt <= reaction_safety / Lip(f)
    double advection_cfl = 0.5;     // dt <= advection_cfl * h / max(|q|_1)
    double accuracy_factor = 0.5;   // dt <= accuracy_factor * h / sqrt(nu_max)
    double range_guard = 1e-6;      // hard failure beyond [0,1] by this much
};

/// Precomputed face coefficients and boundary handling for one (grid, medium,
/// bc) combination. The eigenvalue module reuses it with substituted face
/// velocities and wrap-around boundaries.
struct StencilPlan {
    int nx = 0, ny = 1;
    double h = 1.0;
    BoundaryConfig bc;
    bool mixed = false;      // any nonzero a12
    bool advective = false;  // any nonzero face velocity
    std::vector<double> axf;  // (nx+1) * ny   face values of a11
    std::vector<double> ayf;  // nx * (ny+1)   face values of a22 (2-D only)
    std::vector<double> a12n; // node values of a12 (2-D only)
    std::vector<double> q1f;  // (nx+1) * ny   face velocities, x
    std::vector<double> q2f;  // nx * (ny+1)   face velocities, y

    static StencilPlan build(const PeriodicMedium& m, const GridField& g,
                             const BoundaryConfig& bc);

    /// out = div(A grad v). ghosts: Dirichlet boundaries use `affine` values
    /// when with_boundary_values, else zero; Neumann zeroes the face flux.
    void apply_diffusion(const std::vector<double>& v, std::vector<double>& out,
                         bool with_boundary_values) const;
    /// out += flux-form first-order upwind of q . grad v (exact for div q = 0)
    void add_advection(const std::vector<double>& v, std::vector<double>& out,
                       bool with_boundary_values) const;
};

/// Discrete spatial operator div(A grad u) + q . grad u, reaction excluded.
GridField apply_operator(const PeriodicMedium& m, const GridField& u,
                         const BoundaryConfig& bc = {});

/// Stability/accuracy time step for the IMEX scheme.
double stable_dt(const PeriodicMedium& m, double h, const SolverParams& p = {});

/// One IMEX step: advection and reaction explicit, diffusion implicit via
/// conjugate gradients. No clamping: range preservation comes from the
/// scheme and is checked against params.range_guard.
GridField step(const PeriodicMedium& m, const GridField& u, double dt,
               const BoundaryConfig& bc = {}, const SolverParams& p = {});

using StepObserver = std::function<void(double t, const GridField& u)>;

/// Reusable stepping driver: keeps the stencil plan and solver workspace
/// alive across many advance() calls (strip runs, trackers).
class Stepper {
  public:
    Stepper(const PeriodicMedium& m, const GridField& proto, const BoundaryConfig& bc,
            const SolverParams& p = {});
    ~Stepper();
    Stepper(const Stepper&) = delete;
    Stepper& operator=(const Stepper&) = delete;

    /// Advances u by `span` using uniform internal steps of at most dt().
    void advance(GridField& u, double span);
    double dt() const { return dt_; }

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    double dt_ = 0.0;
};

/// Integrates to T, storing snapshots at output_times (plus none by default).
/// The observer, when given, runs after every step.
Trajectory simulate(const PeriodicMedium& m, const GridField& u0, double T,
                    const std::vector<double>& output_times, const BoundaryConfig& bc = {},
                    const SolverParams& p = {}, const StepObserver& observer = nullptr);

struct InvasionParams {
    double L = 20.0;
    double h = 0.25;
    double tol_inv = 0.01;
    SolverParams solver;
};

/// True iff min of u(T, .) over the query ball exceeds 1 - tol_inv, starting
/// from u0 = theta on B_rho (0 outside).
bool invasion_test(const PeriodicMedium& m, double theta, double rho, double T, double query_radius,
                   const InvasionParams& ip = {});

/// theta * indicator of a centered axis-aligned ellipse (ball when rx == ry).
GridField initial_ball(const GridField& proto, double theta, double rx, double ry);
GridField initial_step(const GridField& proto, Vec2 e, double x_front, double width = 0.0);
/// indicator of {x2 <= alpha |x1|} (2-D)
GridField initial_cone(const GridField& proto, double alpha);
GridField initial_uniform(const GridField& proto, double value);

}  // namespace frontlab
