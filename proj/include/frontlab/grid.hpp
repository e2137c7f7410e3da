#pragma once

#include <string>
#include <vector>

#include "frontlab/core.hpp"

namespace frontlab {

enum class BC { neumann, dirichlet, periodic };

/// Per-axis boundary treatment. Dirichlet carries the far-field values at
/// the low/high side of the axis.
struct BoundaryConfig {
    BC x = BC::neumann;
    BC y = BC::neumann;
    double x_lo = 0.0, x_hi = 0.0;
    double y_lo = 0.0, y_hi = 0.0;

    static BoundaryConfig all_neumann() { return {}; }
    static BoundaryConfig dirichlet_x(double lo, double hi) {
        BoundaryConfig b;
        b.x = BC::dirichlet;
        b.x_lo = lo;
        b.x_hi = hi;
        return b;
    }
};

/// Scalar function sampled on a uniform node grid over [x0, x0+(nx-1)h] x
/// [y0, y0+(ny-1)h]. ny == 1 encodes a one-dimensional field. For periodic
/// axes the high-side node is not duplicated (the grid covers one period).
struct GridField {
    int nx = 0;
    int ny = 1;
    double x0 = 0.0;
    double y0 = 0.0;
    double h = 1.0;
    double time = 0.0;
    std::vector<double> v;

    bool is1d() const { return ny == 1; }
    int size() const { return nx * ny; }
    int idx(int i, int j) const { return j * nx + i; }
    double x(int i) const { return x0 + i * h; }
    double y(int j) const { return y0 + j * h; }
    double& at(int i, int j) { return v[idx(i, j)]; }
    double at(int i, int j) const { return v[idx(i, j)]; }

    static GridField make(int nx, int ny, double x0, double y0, double h, double fill = 0.0);
    /// Box [-L, L] in each active dimension; requires 1/h and L/h integral.
    static GridField box(double L, double h, int dim);

    double min() const { return kernels::min_value(v); }
    double max() const { return kernels::max_value(v); }

    /// Bilinear interpolation; clamps to the grid hull.
    double sample(Vec2 p) const;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<GridField> snaps;
    /// max drift of boundary-ring values from their initial values, per snapshot
    std::vector<double> ring_drift;

    void append(double t, GridField g);
    const GridField& at_time(double t) const;
    bool empty() const { return snaps.empty(); }
};

/// Throws std::invalid_argument unless 1/h is an integer (within 1e-12).
int cells_per_unit(double h);

}  // namespace frontlab
