#pragma once

#include <vector>

#include "frontlab/fronts.hpp"
#include "frontlab/grid.hpp"

namespace frontlab {

struct RayCrossing {
    double t = 0.0;
    Vec2 x{};
    bool found = false;
};

/// Per-snapshot level crossing along the ray {s e : s > 0}; the largest
/// crossing is taken (the invasion edge). Snapshots without a crossing are
/// reported with found = false.
std::vector<RayCrossing> ray_tracker(const Trajectory& traj, Vec2 e, double lambda);

/// Space-time window: u(t, center + y) for |y| <= radius, sampled on the
/// grid nodes.
struct Window {
    double t = 0.0;
    Vec2 center{};
    double radius = 0.0;
    std::vector<Vec2> offsets;
    std::vector<double> values;
    bool valid = false;  // center inside the domain with margin radius
};

Window extract_window(const GridField& u, double t, Vec2 center, double radius);

struct FitParams {
    double radius_cells = 8.0;     // window radius in grid cells
    double front_threshold = 0.05;
    double bulk_threshold = 0.02;
    double coarse_z_step = 0.1;    // time-shift grid: coarse_z_step / c
    int refine_iters = 60;
};

enum class WindowClass { front, bulk_zero, bulk_one, unresolved };

struct FitResult {
    int candidate = -1;
    double time_shift = 0.0;
    Vec2 cell_shift{};
    double residual = 1e300;        // best sup-norm mismatch over candidates
    double const0_residual = 0.0;   // sup |u|
    double const1_residual = 0.0;   // sup |u - 1|
    WindowClass cls = WindowClass::unresolved;
};

/// Minimizes the sup-norm over the window of |u - phi_nu(s, . + y)| over
/// candidates nu, continuous time shift s, and cell shift y (coarse grid,
/// then golden-section refinement of the time shift).
FitResult front_fit(const Window& w, const std::vector<FrontProfile>& candidates,
                    const FitParams& fp = {});

struct CornerScanRow {
    double t = 0.0;
    Vec2 center{};
    std::vector<double> residuals;  // per minimizer candidate
    int best = -1;
};

struct CornerScanReport {
    std::vector<CornerScanRow> rows;
    std::vector<double> best_residual_per_candidate;
};

/// Sweeps window times along the corner direction and fits each window
/// against every minimizer profile. The sweep includes symmetric lateral
/// probes (crossings of slightly rotated rays, tightening like 1/sqrt(t)),
/// so sequences x_n with hat(x_n) -> e sample both flanks of a corner.
CornerScanReport corner_direction_scan(const Trajectory& traj, Vec2 e,
                                       const std::vector<FrontProfile>& minimizers,
                                       double lambda, const FitParams& fp = {},
                                       double probe_angle = 1.0);

}  // namespace frontlab
