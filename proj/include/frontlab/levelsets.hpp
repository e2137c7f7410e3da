#pragma once

#include <cstdint>
#include <vector>

#include "frontlab/grid.hpp"
#include "frontlab/wulff.hpp"

namespace frontlab {

struct RasterMask {
    double x0 = 0, y0 = 0, hr = 1;
    int nx = 0, ny = 0;
    std::vector<std::uint8_t> inside;

    bool at(int i, int j) const { return inside[static_cast<size_t>(j) * nx + i] != 0; }
    bool contains(Vec2 p) const;
};

/// Upper level set E_lambda = {u > lambda} (or any planar region): a raster
/// membership mask plus marching-squares boundary samples. Empty sets carry
/// the empty tag; point clouds carry boundary samples only.
struct PlanarSet {
    enum class Kind { empty, points, polygon, raster };
    Kind kind = Kind::empty;
    std::vector<Vec2> boundary;
    std::vector<Vec2> polygon;  // polygon kind: simple polygon vertices
    RasterMask mask;            // raster kind

    bool is_empty() const { return kind == Kind::empty; }
    bool contains(Vec2 p) const;
    PlanarSet scaled(double s) const;
    void bbox(Vec2& lo, Vec2& hi) const;

    static PlanarSet empty_set();
    static PlanarSet from_points(std::vector<Vec2> pts);
    static PlanarSet from_polygon(std::vector<Vec2> poly, int boundary_samples = 512);
};

/// Marching-squares contour of {u > lambda}; empty when no node exceeds
/// lambda, whole-domain raster when no node is below.
PlanarSet upper_level_set(const GridField& u, double lambda);

/// Hausdorff distance between sets (boundary + interior), computed on a
/// shared raster with a distance transform. Conventions: d(A, empty) = +inf
/// for nonempty A, d(empty, empty) = 0.
double hausdorff(const PlanarSet& A, const PlanarSet& B, int raster_n = 1024);

/// Same, with both sets clipped to the window box [lo, hi] first.
double hausdorff_windowed(const PlanarSet& A, const PlanarSet& B, Vec2 lo, Vec2 hi,
                          int raster_n = 1024);

struct ConvergencePoint {
    double t;
    double d;
};

struct LevelWindow {
    bool active = false;
    Vec2 lo{}, hi{};
};

/// Per-snapshot Hausdorff distance between the 1/t-rescaled upper level set
/// and a target region (optionally windowed, for unbounded initial data).
std::vector<ConvergencePoint> rescaled_convergence(const Trajectory& traj, double lambda,
                                                   const PlanarSet& target,
                                                   const LevelWindow& window = {},
                                                   int raster_n = 1024);

/// Measured invasion-shape estimate t^-1 E_lambda(t_final).
PlanarSet shape_from_levelset(const Trajectory& traj, double lambda, double t_final);

/// Signed-distance wrapper over a rasterized set (1024^2 by default): the
/// geometry checks of the wulff module run on measured shapes through this.
ShapeRef raster_shape_ref(const PlanarSet& set, int raster_n = 1024);

}  // namespace frontlab
