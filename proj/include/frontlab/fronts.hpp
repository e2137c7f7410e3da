#pragma once

#include <utility>
#include <vector>

#include "frontlab/grid.hpp"
#include "frontlab/medium.hpp"
#include "frontlab/shooting.hpp"
#include "frontlab/solver.hpp"

namespace frontlab {

/// Pulsating front profile U(x, z), tabulated on cell bins (medium
/// resolution) times a uniform z-grid, decreasing in z, with the
/// cell-averaged profile passing through mu at z = 0.
struct FrontProfile {
    Vec2 e{1, 0};
    double c = 0.0;
    int cell_nx = 1, cell_ny = 1;
    double z0 = 0.0, dz = 1.0;
    int nz = 0;
    std::vector<double> U;       // [(jc * cell_nx + ic) * nz + iz]
    std::vector<double> counts;  // samples per bin (same layout)
    double mu = 0.5;
    double lambda0 = 0.0;  // fitted tail decay rate
    double C = 0.0;        // envelope: U(x, z) <= C exp(-lambda0 z) on the tail
    double tail_z_lo = 0.0;

    /// bilinear in the (wrapped) cell coordinate, linear in z, clamped ends
    double eval(Vec2 x, double z) const;
    /// front reconstruction phi(t, x) = U(x, x.e - c t)
    double phi(double t, Vec2 x) const;
    std::vector<double> cell_avg() const;
    /// largest violation of strict z-decrease over all bins (<= 0 when monotone)
    double monotonicity_defect() const;
    bool tail_envelope_holds(double slack = 1e-9) const;

    static FrontProfile from_shooting(const ShootingResult& s, Vec2 e);
};

enum class SpeedStatus { ok, no_front };

struct StripParams {
    double h = 0.0;              // 0: use 1/cell_res
    double length = 60.0;        // half-length of the box along the axis
    double start_offset = 8.0;   // initial front position: -length + offset
    double init_width = 1.0;     // tanh width of the initial step
    double guard = 8.0;          // stop when the level gets this close to +length
    double travel_target = 40.0; // stop once the level has advanced this far
    double max_T = 600.0;
    double track_stride = 0.5;   // time between level-position samples
    double level = 0.5;
    int max_snapshots = 64;      // ring buffer for profile extraction
    SolverParams solver;
};

struct SpeedEstimate {
    SpeedStatus status = SpeedStatus::no_front;
    double c = 0.0;
    double oscillation = 0.0;  // sup |p(t) - c t - b| on the fit window
    double intercept = 0.0;
    double fit_t_lo = 0.0, fit_t_hi = 0.0;
    std::vector<std::pair<double, double>> p_series;
};

struct StripRun {
    SpeedEstimate speed;
    Trajectory traj;        // retained late snapshots (frame of m_used)
    PeriodicMedium m_used;  // the medium actually simulated (rotated frame)
    Vec2 e_used{1, 0};
};

/// Simulates step-like data decreasing in direction e on an elongated box
/// with periodic transverse wrap, tracking the level-set position p(t) along
/// e (largest crossing). The speed is the least-squares slope of p(t) on the
/// second half of the run. Directions other than +x require homogeneous
/// coefficients (the problem is rotated onto the x-axis).
/// Throws when the level set exits the domain before the fit window closes.
StripRun run_front_strip(const PeriodicMedium& m, Vec2 e, const StripParams& sp = {});

SpeedEstimate pulsating_front_speed(const PeriodicMedium& m, Vec2 e, const StripParams& sp = {});

struct ProfileParams {
    double clip = 1e-4;      // tabulate where the averaged profile is in [clip, 1-clip]
    double tail_lo = 1e-3;   // tail-fit band of the averaged profile
    double tail_hi = 5e-2;
    double margin_cells = 2; // grid cells excluded near the x boundaries
};

/// Bins late snapshots by (x mod cell, z = x.e - c t), averages per bin,
/// normalizes the mid-level crossing to z = 0, clips to the resolved range,
/// and fits the exponential tail. Throws on insufficient z-coverage.
FrontProfile extract_front_profile(const PeriodicMedium& m, Vec2 e, double c,
                                   const Trajectory& traj, const ProfileParams& pp = {});

struct SpeedTable {
    std::vector<Vec2> directions;
    std::vector<double> speeds;
    std::vector<double> oscillations;
    std::vector<SpeedStatus> statuses;
    double max_adjacent_jump = 0.0;

    bool all_positive() const;
};

/// Pulsating speed per direction plus a continuity diagnostic (max jump
/// between angularly adjacent directions). Requires at least 8 directions
/// in two dimensions.
SpeedTable speed_table(const PeriodicMedium& m, const std::vector<Vec2>& directions,
                       const StripParams& sp = {});

struct FrontPipeline {
    SpeedEstimate speed;
    FrontProfile profile;  // valid when speed.status == ok
    Trajectory traj;       // late ring snapshots (frame of m_used)
    PeriodicMedium m_used;
    Vec2 e_used{1, 0};
};

/// Speed measurement followed by a deterministic re-run that feeds every
/// tracking tick into the profile bins. Stored snapshots alone can alias
/// the z-comb (c dt commensurate with the bin width); the per-tick pass
/// does not.
FrontPipeline run_front_pipeline(const PeriodicMedium& m, Vec2 e, const StripParams& sp = {},
                                 const ProfileParams& pp = {});

/// Sup-norm PDE residual of the reconstruction phi(t,x) = U(x, x.e - c t)
/// on a space-time patch with spacing h_patch (defaults to the cell spacing).
double front_residual(const PeriodicMedium& m, const FrontProfile& profile,
                      double h_patch = 0.0);

}  // namespace frontlab
