#include "frontlab/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "frontlab/shooting.hpp"

namespace frontlab {

Scenario Scenario::from_config(const Config& c) {
    Scenario s;
    s.raw = c;
    s.name = c.get("scenario", "name", "scenario");
    s.dim = c.integer("scenario", "dimension", 2);

    s.reaction_kind = c.get("medium", "reaction", "bistable");
    s.alpha = c.number("medium", "alpha", 0.25);
    s.amp = c.number("medium", "amp", 0.0);
    s.a_kind = c.get("medium", "A", "identity");
    s.a_p1 = c.number("medium", "A_p1", 1.0);
    s.a_p2 = c.number("medium", "A_p2", 1.0);
    s.a_p3 = c.number("medium", "A_p3", 0.0);
    s.q_kind = c.get("medium", "q", "none");
    s.q_beta = c.number("medium", "q_beta", 0.0);
    s.cell_res = c.integer("medium", "cell_resolution", 4);
    s.delta = c.number("medium", "delta", 0.05);

    s.init_kind = c.get("initial", "kind", "ball");
    s.theta = c.number("initial", "theta", 0.8);
    s.radius = c.number("initial", "radius", 10.0);
    s.radius_y = c.number("initial", "radius_y", s.radius);
    s.init_e = {c.number("initial", "e_x", 1.0), c.number("initial", "e_y", 0.0)};
    s.x_front = c.number("initial", "x_front", 0.0);
    s.init_width = c.number("initial", "width", 1.0);
    s.cone_alpha = c.number("initial", "alpha", -1.0);
    s.uniform_value = c.number("initial", "value", 1.0);
    s.raster_path = c.get("initial", "path", "");

    s.L = c.number("grid", "L", 20.0);
    s.h = c.number("grid", "h", 0.25);
    s.boundary = c.get("grid", "boundary", "neumann");
    s.bc_x_lo = c.number("grid", "x_lo", 0.0);
    s.bc_x_hi = c.number("grid", "x_hi", 0.0);
    s.bc_y_lo = c.number("grid", "y_lo", 0.0);
    s.bc_y_hi = c.number("grid", "y_hi", 0.0);

    s.T = c.number("time", "T", 50.0);
    s.outputs = c.list("time", "outputs");

    s.want_speeds = c.flag("analysis", "speeds", false);
    s.want_wulff = c.flag("analysis", "wulff", false);
    s.want_hausdorff = c.flag("analysis", "hausdorff", false);
    s.want_omega = c.flag("analysis", "omega", false);
    s.want_eigen = c.flag("analysis", "eigen", false);
    s.want_cones = c.flag("analysis", "cones", false);
    s.n_directions = c.integer("analysis", "directions", 16);
    s.level = c.number("analysis", "level", 0.5);
    s.eigen_dir = {c.number("analysis", "eigen_ex", 1.0), c.number("analysis", "eigen_ey", 0.0)};
    s.eigen_lambda = c.number("analysis", "eigen_lambda", 0.2);

    s.strip.length = c.number("strip", "length", s.strip.length);
    s.strip.travel_target = c.number("strip", "travel", s.strip.travel_target);
    s.strip.h = c.number("strip", "h", 0.0);
    s.strip.max_T = c.number("strip", "max_T", s.strip.max_T);

    s.solver.cg_tol = c.number("solver", "cg_tol", s.solver.cg_tol);
    s.strip.solver = s.solver;
    return s;
}

void Scenario::validate() const {
    cells_per_unit(h);  // h divides the unit cell
    double k = L / h;
    if (std::abs(k - std::round(k)) > 1e-9)
        throw std::invalid_argument("grid: L must be a multiple of h");
    for (double t : outputs)
        if (t < 0 || t > T + 1e-12)
            throw std::invalid_argument("time: output times must lie in [0, T]");
    if (dim != 1 && dim != 2) throw std::invalid_argument("dimension must be 1 or 2");
}

PeriodicMedium Scenario::build() const {
    CoefficientField cf;
    if (a_kind == "identity")
        cf = CoefficientField::identity();
    else if (a_kind == "diag")
        cf = CoefficientField::diag(a_p1, a_p2);
    else if (a_kind == "rotated")
        cf = CoefficientField::rotated(a_p1, a_p2, a_p3);
    else if (a_kind == "oscillating")
        cf = CoefficientField::oscillating(a_p1, a_p2);
    else
        throw std::invalid_argument("unknown diffusion catalog entry: " + a_kind);

    if (q_kind == "shear")
        cf = cf.with_shear(q_beta);
    else if (q_kind == "cellular")
        cf = cf.with_cellular(q_beta);
    else if (q_kind != "none")
        throw std::invalid_argument("unknown drift catalog entry: " + q_kind);

    Reaction r = Reaction::bistable(0.25);
    if (reaction_kind == "bistable")
        r = Reaction::bistable(alpha);
    else if (reaction_kind == "ignition")
        r = Reaction::ignition(alpha);
    else if (reaction_kind == "kpp")
        r = Reaction::kpp();
    else if (reaction_kind == "periodic-bistable")
        r = Reaction::periodic_bistable(alpha, amp);
    else if (reaction_kind == "table")
        r = Reaction::table(raw.list("medium", "table_s"), raw.list("medium", "table_f"));
    else
        throw std::invalid_argument("unknown reaction kind: " + reaction_kind);

    int M = cells_per_unit(h);
    if (M != cell_res && cell_res != 0)
        M = cell_res;  // fine when the solver grid is not used (eigen only)
    return build_medium(dim, M, cf, r, delta);
}

GridField Scenario::initial_datum() const {
    GridField proto = GridField::box(L, h, dim);
    if (init_kind == "ball") return initial_ball(proto, theta, radius, radius);
    if (init_kind == "ellipse") return initial_ball(proto, theta, radius, radius_y);
    if (init_kind == "step") return initial_step(proto, hat(init_e), x_front, init_width);
    if (init_kind == "cone") return initial_cone(proto, cone_alpha);
    if (init_kind == "uniform") return initial_uniform(proto, uniform_value);
    if (init_kind == "raster") return load_snapshot_csv(raster_path);
    throw std::invalid_argument("unknown initial datum kind: " + init_kind);
}

BoundaryConfig Scenario::bc() const {
    BoundaryConfig b;
    if (boundary == "neumann") return b;
    if (boundary == "dirichlet") {
        b.x = BC::dirichlet;
        b.y = BC::dirichlet;
        b.x_lo = bc_x_lo;
        b.x_hi = bc_x_hi;
        b.y_lo = bc_y_lo;
        b.y_hi = bc_y_hi;
        return b;
    }
    throw std::invalid_argument("unknown boundary kind: " + boundary);
}

const StageRecord* ReportBundle::stage(const std::string& name) const {
    for (const auto& s : stages)
        if (s.name == name) return &s;
    return nullptr;
}

double measure_spreading_gamma(const Trajectory& traj, double tol) {
    double gamma = 1e300;
    bool any = false;
    size_t start = traj.times.size() / 2;
    for (size_t k = start; k < traj.times.size(); ++k) {
        double t = traj.times[k];
        if (t <= 0) continue;
        const GridField& u = traj.snaps[k];
        // largest radius whose full circle stays above 1 - tol
        double rmax = 0.0;
        double limit = std::min({std::abs(u.x0), std::abs(u.x(u.nx - 1)),
                                 u.is1d() ? 1e300 : std::abs(u.y0),
                                 u.is1d() ? 1e300 : std::abs(u.y(u.ny - 1))});
        for (double r = u.h; r < limit; r += u.h) {
            bool full = true;
            int nth = std::max(16, static_cast<int>(2 * 3.14159265 * r / u.h));
            for (int q = 0; q < nth; ++q) {
                double th = 2 * 3.14159265358979 * q / nth;
                Vec2 p{r * std::cos(th), u.is1d() ? 0.0 : r * std::sin(th)};
                if (u.is1d()) p = {q < nth / 2 ? r : -r, 0.0};
                if (u.sample(p) < 1.0 - tol) {
                    full = false;
                    break;
                }
            }
            if (!full) break;
            rmax = r;
        }
        if (rmax > 0) {
            gamma = std::min(gamma, rmax / t);
            any = true;
        }
    }
    return any ? gamma : 0.0;
}

ReportBundle run_scenario(const Scenario& s) {
    s.validate();
    ReportBundle b;
    b.scn = s;

    auto run_stage = [&](const std::string& name, bool wanted, auto&& fn) {
        StageRecord rec;
        rec.name = name;
        if (!wanted) {
            b.stages.push_back(rec);
            return;
        }
        rec.ran = true;
        try {
            fn();
            rec.ok = true;
        } catch (const std::exception& ex) {
            rec.error = ex.what();
        }
        b.stages.push_back(rec);
    };

    PeriodicMedium medium = s.build();

    run_stage("validate", true, [&] {
        b.validation = validate_medium(medium);
        if (!b.validation.all_pass()) throw std::runtime_error("medium validation failed");
        if (s.reaction_kind != "kpp" && !check_weak_stability(medium, s.delta).ok)
            throw std::runtime_error("weak stability fails at the configured delta");
    });
    bool valid = b.stages.back().ok;

    run_stage("simulate", valid, [&] {
        std::vector<double> outs = s.outputs;
        if (outs.empty()) outs = {s.T};
        b.traj = simulate(medium, s.initial_datum(), s.T, outs, s.bc(), s.solver);
    });
    bool simulated = b.stage("simulate")->ok;

    run_stage("speeds", valid && s.want_speeds, [&] {
        std::vector<Vec2> dirs;
        for (int k = 0; k < s.n_directions; ++k) {
            double th = 2 * 3.14159265358979323846 * k / s.n_directions;
            dirs.push_back({std::cos(th), std::sin(th)});
        }
        if (s.dim == 1) dirs = {{1, 0}, {-1, 0}};
        b.table = speed_table(medium, dirs, s.strip);
        if (!b.table->all_positive())
            throw std::runtime_error("speed table has non-positive entries; no Wulff shape");
    });

    run_stage("front", valid && (s.want_omega || s.want_hausdorff), [&] {
        FrontPipeline run = run_front_pipeline(medium, {1, 0}, s.strip);
        if (run.speed.status != SpeedStatus::ok)
            throw std::runtime_error("no pulsating front along the x-axis");
        b.speed = run.speed;
        b.profile = run.profile;
    });

    run_stage("wulff", s.want_wulff, [&] {
        if (!b.table || !b.table->all_positive())
            throw std::runtime_error("wulff stage needs a positive speed table");
        b.wulff = wulff_shape(b.table->directions, b.table->speeds, 256);
    });

    run_stage("hausdorff", simulated && s.want_hausdorff, [&] {
        if (!b.speed) throw std::runtime_error("hausdorff stage needs the front stage");
        PlanarSet target;
        LevelWindow window;
        if (s.init_kind == "ball" || s.init_kind == "ellipse") {
            if (b.wulff) {
                target = PlanarSet::from_polygon(b.wulff->vertices);
            } else {
                // homogeneous compact data: the disk of radius c*
                std::vector<Vec2> poly;
                for (int k = 0; k < 512; ++k) {
                    double th = 2 * 3.14159265358979323846 * k / 512;
                    poly.push_back({b.speed->c * std::cos(th), b.speed->c * std::sin(th)});
                }
                target = PlanarSet::from_polygon(poly);
            }
        } else if (s.init_kind == "step") {
            ShiftedShape hs = ShiftedShape::halfspace(hat(s.init_e), b.speed->c);
            std::vector<Vec2> line = hs.boundary_polyline(4 * b.speed->c, 128);
            // window box of side 4 c* centered on the boundary line
            Vec2 cmid = hat(s.init_e) * b.speed->c;
            window.active = true;
            window.lo = cmid - Vec2{2 * b.speed->c, 2 * b.speed->c};
            window.hi = cmid + Vec2{2 * b.speed->c, 2 * b.speed->c};
            std::vector<Vec2> poly = line;
            poly.push_back(line.back() - hat(s.init_e) * (8 * b.speed->c));
            poly.push_back(line.front() - hat(s.init_e) * (8 * b.speed->c));
            target = PlanarSet::from_polygon(poly);
        } else if (s.init_kind == "cone") {
            ShiftedShape cone = ShiftedShape::cone(s.cone_alpha, b.speed->c);
            double c = b.speed->c;
            // window on the right flank, clear of the smoothed apex
            double along = 3.5 * c;
            double inv = 1.0 / std::sqrt(1 + s.cone_alpha * s.cone_alpha);
            Vec2 dir{inv, s.cone_alpha * inv};
            Vec2 nu{-s.cone_alpha * inv, inv};
            Vec2 center = dir * along + nu * c;
            window.active = true;
            window.lo = center - Vec2{2 * c, 2 * c};
            window.hi = center + Vec2{2 * c, 2 * c};
            auto line = cone.boundary_polyline(10 * c, 512);
            std::vector<Vec2> poly = line;
            poly.push_back({line.back().x, line.back().y - 20 * c});
            poly.push_back({line.front().x, line.front().y - 20 * c});
            target = PlanarSet::from_polygon(poly, 2048);
        } else {
            throw std::runtime_error("no hausdorff target for this initial datum");
        }
        b.hausdorff_series = rescaled_convergence(b.traj, s.level, target, window);
    });

    run_stage("omega", simulated && s.want_omega, [&] {
        if (!b.profile) throw std::runtime_error("omega stage needs the front stage");
        auto crossings = ray_tracker(b.traj, {1, 0}, s.level);
        FitParams fp;
        for (size_t k = 0; k < crossings.size(); ++k) {
            if (!crossings[k].found) continue;
            Window w = extract_window(b.traj.snaps[k], crossings[k].t, crossings[k].x,
                                      fp.radius_cells * s.h);
            if (!w.valid) continue;
            FitResult fr = front_fit(w, {*b.profile}, fp);
            std::string cls = fr.cls == WindowClass::front        ? "front"
                              : fr.cls == WindowClass::bulk_one   ? "bulk1"
                              : fr.cls == WindowClass::bulk_zero  ? "bulk0"
                                                                  : "unresolved";
            b.omega_rows.push_back({crossings[k].t, crossings[k].x, fr.residual, cls});
        }
        if (b.omega_rows.empty()) throw std::runtime_error("no fittable windows along the ray");
    });

    run_stage("eigen", valid && s.want_eigen, [&] {
        b.eigen = principal_eigenvalue(medium, hat(s.eigen_dir), s.eigen_lambda);
    });

    run_stage("cones", simulated && s.want_cones, [&] {
        double t_final = b.traj.times.back();
        b.measured_shape = shape_from_levelset(b.traj, s.level, t_final);
        if (b.measured_shape.is_empty())
            throw std::runtime_error("empty invasion shape; no cone checks");
        b.gamma = measure_spreading_gamma(b.traj);
        if (!(b.gamma > 0)) throw std::runtime_error("no measurable spreading speed");
        auto ref = raster_shape_ref(b.measured_shape);
        std::vector<Vec2> samples;
        size_t nb = b.measured_shape.boundary.size();
        for (int k = 0; k < 16 && nb > 0; ++k)
            samples.push_back(b.measured_shape.boundary[k * nb / 16]);
        b.cones = cone_conditions_check(ref, b.gamma, samples, {0.25, 0.5, 0.75, 1.5, 2.0});
    });

    return b;
}

GridField load_snapshot_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open snapshot: " + path);
    std::string header, values;
    std::getline(f, header);
    std::getline(f, values);
    if (header != "t,L,h,N") throw std::runtime_error("bad snapshot header: " + header);
    std::istringstream hv(values);
    double t, L, h;
    int dim;
    char comma;
    hv >> t >> comma >> L >> comma >> h >> comma >> dim;
    GridField g = GridField::box(L, h, dim);
    g.time = t;
    for (int j = 0; j < g.ny; ++j) {
        std::string line;
        if (!std::getline(f, line)) throw std::runtime_error("snapshot truncated: " + path);
        std::istringstream row(line);
        for (int i = 0; i < g.nx; ++i) {
            std::string tok;
            if (!std::getline(row, tok, ',')) throw std::runtime_error("snapshot row short");
            g.at(i, j) = std::stod(tok);
        }
    }
    return g;
}

void dump_snapshot_csv(const GridField& g, int dim, double L, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write snapshot: " + path);
    f << "t,L,h,N\n";
    f << g.time << "," << L << "," << g.h << "," << dim << "\n";
    f.precision(17);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (i) f << ",";
            f << g.at(i, j);
        }
        f << "\n";
    }
}

}  // namespace frontlab
