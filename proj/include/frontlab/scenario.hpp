#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frontlab/config.hpp"
#include "frontlab/eigenproblem.hpp"
#include "frontlab/fronts.hpp"
#include "frontlab/levelsets.hpp"
#include "frontlab/medium.hpp"
#include "frontlab/omega.hpp"
#include "frontlab/solver.hpp"
#include "frontlab/wulff.hpp"

namespace frontlab {

/// A fully resolved experiment: medium, initial datum, grid, horizon, and
/// the requested analysis stages.
struct Scenario {
    std::string name = "scenario";
    int dim = 2;

    std::string reaction_kind = "bistable";
    double alpha = 0.25;
    double amp = 0.0;
    std::string a_kind = "identity";
    double a_p1 = 1.0, a_p2 = 1.0, a_p3 = 0.0;
    std::string q_kind = "none";
    double q_beta = 0.0;
    int cell_res = 4;
    double delta = 0.05;

    std::string init_kind = "ball";  // ball | ellipse | step | cone | uniform | raster
    double theta = 0.8;
    double radius = 10.0, radius_y = 10.0;
    Vec2 init_e{1, 0};
    double x_front = 0.0, init_width = 1.0;
    double cone_alpha = -1.0;
    double uniform_value = 1.0;
    std::string raster_path;

    double L = 20.0, h = 0.25;
    std::string boundary = "neumann";  // neumann | dirichlet
    double bc_x_lo = 0, bc_x_hi = 0, bc_y_lo = 0, bc_y_hi = 0;

    double T = 50.0;
    std::vector<double> outputs;

    bool want_speeds = false, want_wulff = false, want_hausdorff = false, want_omega = false,
         want_eigen = false, want_cones = false;
    int n_directions = 16;
    double level = 0.5;
    Vec2 eigen_dir{1, 0};
    double eigen_lambda = 0.2;
    StripParams strip;
    SolverParams solver;

    Config raw;  // resolved provenance

    static Scenario from_config(const Config& c);
    void validate() const;
    PeriodicMedium build() const;
    GridField initial_datum() const;
    BoundaryConfig bc() const;
};

struct StageRecord {
    std::string name;
    bool ran = false;
    bool ok = false;
    std::string error;
};

struct OmegaRow {
    double t;
    Vec2 center;
    double residual;
    std::string cls;
};

struct ReportBundle {
    Scenario scn;
    std::vector<StageRecord> stages;

    ValidationReport validation;
    Trajectory traj;
    std::optional<SpeedTable> table;
    std::optional<WulffShape> wulff;
    std::optional<FrontProfile> profile;
    std::optional<SpeedEstimate> speed;
    std::vector<ConvergencePoint> hausdorff_series;
    std::vector<OmegaRow> omega_rows;
    std::optional<EigenPair> eigen;
    std::optional<ConeCheckReport> cones;
    PlanarSet measured_shape;
    double gamma = 0.0;  // measured spreading bound, when cones ran

    const StageRecord* stage(const std::string& name) const;
};

/// Executes the requested stages in dependency order; failed stages record
/// their error and downstream dependents are skipped.
ReportBundle run_scenario(const Scenario& s);

/// Largest radius with u >= 1 - tol on the whole sphere, divided by t, over
/// the late snapshots (the measured spreading bound gamma).
double measure_spreading_gamma(const Trajectory& traj, double tol = 0.01);

GridField load_snapshot_csv(const std::string& path);
void dump_snapshot_csv(const GridField& g, int dim, double L, const std::string& path);

}  // namespace frontlab
