#pragma once

#include <functional>
#include <vector>

#include "frontlab/core.hpp"

namespace frontlab {

/// Membership plus signed distance to the boundary (positive inside). The
/// signed distance is 1-Lipschitz, so ball inclusions reduce to center
/// queries: B_r(y) inside iff sdf(y) >= r.
struct ShapeRef {
    std::function<bool(Vec2)> inside;
    std::function<double(Vec2)> sdf;
    double slack = 0.0;  // resolution allowance of the underlying representation
};

/// Wulff shape of a speed envelope: radial function
///   w(e) = min over sampled xi with xi.e > 0 of c*(xi) / (xi.e),
/// with the per-direction minimizer set (ties within tie_tol retained).
struct WulffShape {
    std::vector<Vec2> speed_dirs;
    std::vector<double> speeds;
    std::vector<Vec2> eval_dirs;
    std::vector<double> radii;
    std::vector<std::vector<int>> minimizers;  // indices into speed_dirs
    std::vector<Vec2> vertices;                // radial polygon, CCW

    bool contains(Vec2 p) const;
    double signed_distance(Vec2 p) const;
    double min_radius() const;
    double max_radius() const;
    ShapeRef ref() const;
};

/// n_eval == 0 evaluates w on the speed directions themselves; otherwise on
/// a uniform grid of n_eval angles. Throws on non-positive speeds, fewer
/// than 8 directions, or angular gaps above pi/2.
WulffShape wulff_shape(const std::vector<Vec2>& directions, const std::vector<double>& speeds,
                       int n_eval = 0, double tie_tol_rel = 1e-6);

/// Intersection-of-halfspaces route: clips a bounding box by every
/// {x . xi <= c*(xi)} (Sutherland-Hodgman). Agrees with the radial polygon
/// within discretization.
std::vector<Vec2> halfspace_polygon(const std::vector<Vec2>& directions,
                                    const std::vector<double>& speeds);

/// piecewise-linear-in-angle interpolation of the speed table
double interpolate_speed(const std::vector<Vec2>& directions, const std::vector<double>& speeds,
                         Vec2 nu);

struct FgSample {
    Vec2 z;
    Vec2 nu;
    double residual;
    bool at_vertex;
};

struct FgReport {
    std::vector<FgSample> samples;
    double max_edge_residual = 0.0;
    double max_vertex_residual = 0.0;
};

/// Regular Freidlin-Gartner identity |z . nu - c*(nu)| on edge midpoints
/// (unique normals) and on the normal fan at vertices.
FgReport regular_fg_check(const WulffShape& shape, int n_samples);

/// Predicted invasion shape for unbounded initial supports: either the
/// c*-neighborhood of the cone {x2 <= alpha |x1|} or a halfspace
/// {x . e < c*}.
struct ShiftedShape {
    enum class Kind { cone, halfspace };
    Kind kind = Kind::cone;
    double alpha = -1.0;
    double cstar = 1.0;
    Vec2 e{0, 1};

    bool contains(Vec2 p) const;
    double signed_distance(Vec2 p) const;
    /// boundary polyline spanning |x1| <= extent (cone) or the segment of
    /// the boundary line (halfspace)
    std::vector<Vec2> boundary_polyline(double extent, int n = 256) const;
    ShapeRef ref() const;

    static ShiftedShape cone(double alpha, double cstar);
    static ShiftedShape halfspace(Vec2 e, double cstar);
};

struct ConeCheckRow {
    Vec2 z;
    double lambda;
    double margin;  // >= 0 passes
    bool pass;
};

struct ConeCheckReport {
    std::vector<ConeCheckRow> rows;
    double worst_margin = 0.0;
    bool all_pass = false;
};

/// Interior/exterior cone conditions: B_{(1-lambda) gamma}(lambda z) inside
/// the shape for lambda < 1 and B_{(lambda-1) gamma}(lambda z) outside for
/// lambda > 1, via the signed distance at the ball centers.
ConeCheckReport cone_conditions_check(const ShapeRef& shape, double gamma,
                                      const std::vector<Vec2>& boundary_samples,
                                      const std::vector<double>& lambdas);

struct BallProbe {
    bool interior = false;
    bool exterior = false;
    Vec2 normal{0, 0};  // valid when both hold
    double interior_margin = 0.0;
    double exterior_margin = 0.0;
};

/// Searches tangent candidates for interior/exterior balls of radius r
/// touching z; returns the common normal when both exist.
BallProbe ball_condition_probe(const ShapeRef& shape, Vec2 z, double r, int n_angles = 256);

}  // namespace frontlab
