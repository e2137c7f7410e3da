#pragma once

#include <vector>

#include "frontlab/grid.hpp"
#include "frontlab/medium.hpp"

namespace frontlab {

/// Principal eigenpair of the exponentially twisted cell operator
///   div(A grad phi) + (q - 2 lambda A e) . grad phi
///     + (lambda^2 eAe - lambda div(A e) - lambda q . e) phi = k phi
/// acting on periodic functions, with phi > 0 normalized to max phi = 1.
struct EigenPair {
    Vec2 e{1, 0};
    double lambda = 0.0;
    double k = 0.0;
    GridField phi;  // on the unit cell, wrap-around
    double residual = 0.0;
    double residual_threshold = 0.0;  // tol * operator scale at convergence
    int iterations = 0;
};

struct EigenParams {
    double tol = 1e-12;        // residual per unit operator scale
    int max_iter = 200;        // inverse-iteration sweeps
    double linear_tol = 1e-13; // BiCGstab relative residual
    int linear_max_iter = 50000;
};

/// Shifted inverse power iteration; the shift is the Gershgorin upper bound
/// of the operator plus one, which makes the principal eigenvalue dominant
/// for the inverted operator.
EigenPair principal_eigenvalue(const PeriodicMedium& m, Vec2 e, double lambda,
                               const EigenParams& p = {});

/// Sup-norm residual of the discrete eigen equation for a given pair.
double eigenfunction_residual(const EigenPair& pair, const PeriodicMedium& m);

/// The discrete twisted operator applied to a cell field (wrap-around).
std::vector<double> apply_cell_operator(const PeriodicMedium& m, Vec2 e, double lambda,
                                        const std::vector<double>& phi);

struct SlopeRow {
    double lambda;
    double k;
    double ratio;  // |k| / lambda
};

struct SlopeReport {
    std::vector<SlopeRow> rows;
    bool ratios_decreasing = false;
    double final_ratio = 0.0;
    double slope_tol = 0.0;
    bool pass = false;
};

/// Tabulates |k_e(lambda)| / lambda along a decreasing sequence; passes iff
/// the ratios decrease and the final one is at most slope_tol (default: half
/// of the first ratio).
SlopeReport slope_check(const PeriodicMedium& m, Vec2 e, const std::vector<double>& lambdas,
                        double slope_tol = 0.0, const EigenParams& p = {});

}  // namespace frontlab
