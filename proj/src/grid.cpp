#include "frontlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace frontlab {

int cells_per_unit(double h) {
    if (h <= 0) throw std::invalid_argument("grid spacing must be positive");
    double m = 1.0 / h;
    double mr = std::round(m);
    if (std::abs(m - mr) > 1e-12 * m)
        throw std::invalid_argument("grid spacing must divide the unit cell exactly");
    return static_cast<int>(mr);
}

GridField GridField::make(int nx, int ny, double x0, double y0, double h, double fill) {
    GridField g;
    g.nx = nx;
    g.ny = ny;
    g.x0 = x0;
    g.y0 = y0;
    g.h = h;
    g.v.assign(static_cast<size_t>(nx) * ny, fill);
    return g;
}

GridField GridField::box(double L, double h, int dim) {
    cells_per_unit(h);
    double k = L / h;
    if (std::abs(k - std::round(k)) > 1e-9)
        throw std::invalid_argument("box half-width must be a multiple of h");
    int n = 2 * static_cast<int>(std::round(k)) + 1;
    if (dim == 1) return make(n, 1, -L, 0.0, h);
    return make(n, n, -L, -L, h);
}

double GridField::sample(Vec2 p) const {
    double fx = (p.x - x0) / h;
    double fy = is1d() ? 0.0 : (p.y - y0) / h;
    fx = std::clamp(fx, 0.0, static_cast<double>(nx - 1));
    fy = std::clamp(fy, 0.0, static_cast<double>(ny - 1));
    int i = std::min(static_cast<int>(fx), nx - 2 >= 0 ? nx - 2 : 0);
    int j = std::min(static_cast<int>(fy), ny - 2 >= 0 ? ny - 2 : 0);
    if (nx == 1) i = 0;
    if (ny == 1) j = 0;
    double tx = fx - i;
    double ty = fy - j;
    double v00 = at(i, j);
    double v10 = (i + 1 < nx) ? at(i + 1, j) : v00;
    double v01 = (j + 1 < ny) ? at(i, j + 1) : v00;
    double v11 = (i + 1 < nx && j + 1 < ny) ? at(i + 1, j + 1) : v10;
    return (1 - tx) * (1 - ty) * v00 + tx * (1 - ty) * v10 + (1 - tx) * ty * v01 + tx * ty * v11;
}

void Trajectory::append(double t, GridField g) {
    if (!times.empty() && t <= times.back())
        throw std::invalid_argument("trajectory times must be strictly increasing");
    times.push_back(t);
    snaps.push_back(std::move(g));
}

const GridField& Trajectory::at_time(double t) const {
    for (size_t k = 0; k < times.size(); ++k)
        if (std::abs(times[k] - t) <= 1e-9 * (1.0 + std::abs(t))) return snaps[k];
    throw std::invalid_argument("no snapshot at requested time");
}

}  // namespace frontlab
