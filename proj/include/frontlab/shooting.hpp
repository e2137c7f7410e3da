#pragma once

#include <vector>

#include "frontlab/medium.hpp"

namespace frontlab {

enum class FrontStatus { ok, no_positive_front };

/// Heteroclinic profile of  phi'' + c phi' + f(phi) = 0,  phi(-inf) = 1,
/// phi(+inf) = 0, tabulated on a uniform z-grid with phi(0) = 1/2.
struct ShootingResult {
    FrontStatus status = FrontStatus::no_positive_front;
    double c = 0.0;
    double z0 = 0.0;  // first tabulated z
    double dz = 0.0;
    std::vector<double> phi;
    double lambda0 = 0.0;  // decay rate of the leading tail
    double C = 0.0;        // envelope constant: phi(z) <= C exp(-lambda0 z)

    double eval(double z) const;  // clamped interpolation
};

/// Bisection on the wave speed c; each trial integrates the phase-plane
/// trajectory leaving the saddle (1, 0) and classifies over/undershoot.
/// Homogeneous bistable or ignition reactions only. Returns
/// no_positive_front when the shooting functional has no sign change for
/// c > 0 (then the invasion property fails).
ShootingResult planar_front_shooting(const Reaction& r, double tol = 1e-9);

}  // namespace frontlab
