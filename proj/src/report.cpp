#include "frontlab/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace frontlab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

json vec_json(Vec2 v) { return json::array({v.x, v.y}); }

std::string svg_header(double x0, double y0, double w, double h) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << x0 << " " << y0 << " " << w
       << " " << h << "\">\n";
    return os.str();
}

std::string polyline(const std::vector<Vec2>& pts, const std::string& color, double width,
                     bool close) {
    std::ostringstream os;
    os << "<path d=\"";
    for (size_t k = 0; k < pts.size(); ++k)
        os << (k == 0 ? "M" : "L") << pts[k].x << " " << -pts[k].y << " ";
    if (close) os << "Z";
    os << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width << "\"/>\n";
    return os.str();
}

}  // namespace

std::string summary_json(const ReportBundle& b) {
    json j;
    j["scenario"] = b.scn.name;
    j["config"] = b.scn.raw.dump();
    json stages = json::array();
    for (const auto& s : b.stages) {
        json e;
        e["name"] = s.name;
        e["ran"] = s.ran;
        e["ok"] = s.ok;
        if (!s.error.empty()) e["error"] = s.error;
        stages.push_back(e);
    }
    j["stages"] = stages;

    if (const auto* v = b.stage("validate"); v && v->ran) {
        json checks = json::array();
        for (const auto& c : b.validation.checks) {
            json e;
            e["name"] = c.name;
            e["pass"] = c.pass;
            e["worst"] = c.worst;
            checks.push_back(e);
        }
        j["validation"] = checks;
    }
    if (!b.traj.empty()) {
        j["simulate"]["snapshots"] = b.traj.times;
        j["simulate"]["ring_drift"] = b.traj.ring_drift;
    }
    if (b.speed) {
        j["front"]["c"] = b.speed->c;
        j["front"]["oscillation"] = b.speed->oscillation;
    }
    if (b.profile) {
        j["front"]["lambda0"] = b.profile->lambda0;
        j["front"]["C"] = b.profile->C;
        j["front"]["monotonicity_defect"] = b.profile->monotonicity_defect();
    }
    if (b.table) {
        json dirs = json::array(), sp = json::array();
        for (size_t k = 0; k < b.table->directions.size(); ++k) {
            dirs.push_back(vec_json(b.table->directions[k]));
            sp.push_back(b.table->speeds[k]);
        }
        j["speeds"]["directions"] = dirs;
        j["speeds"]["values"] = sp;
        j["speeds"]["max_adjacent_jump"] = b.table->max_adjacent_jump;
    }
    if (b.wulff) {
        j["wulff"]["min_radius"] = b.wulff->min_radius();
        j["wulff"]["max_radius"] = b.wulff->max_radius();
    }
    if (!b.hausdorff_series.empty()) {
        json t = json::array(), d = json::array();
        for (const auto& p : b.hausdorff_series) {
            t.push_back(p.t);
            d.push_back(p.d);
        }
        j["hausdorff"]["t"] = t;
        j["hausdorff"]["d"] = d;
    }
    if (!b.omega_rows.empty()) {
        json rows = json::array();
        for (const auto& r : b.omega_rows) {
            json e;
            e["t"] = r.t;
            e["center"] = vec_json(r.center);
            e["residual"] = r.residual;
            e["class"] = r.cls;
            rows.push_back(e);
        }
        j["omega"] = rows;
    }
    if (b.eigen) {
        j["eigen"]["k"] = b.eigen->k;
        j["eigen"]["lambda"] = b.eigen->lambda;
        j["eigen"]["residual"] = b.eigen->residual;
        j["eigen"]["iterations"] = b.eigen->iterations;
    }
    if (b.cones) {
        j["cones"]["all_pass"] = b.cones->all_pass;
        j["cones"]["worst_margin"] = b.cones->worst_margin;
        j["cones"]["gamma"] = b.gamma;
    }
    return j.dump(2) + "\n";
}

void write_shape_json(const WulffShape& shape, const std::string& path) {
    json j;
    json dirs = json::array(), radii = json::array(), verts = json::array(),
         mins = json::array();
    for (size_t k = 0; k < shape.eval_dirs.size(); ++k) {
        dirs.push_back(vec_json(shape.eval_dirs[k]));
        radii.push_back(shape.radii[k]);
        verts.push_back(vec_json(shape.vertices[k]));
        mins.push_back(shape.minimizers[k]);
    }
    j["directions"] = dirs;
    j["radii"] = radii;
    j["vertices"] = verts;
    j["minimizers"] = mins;
    write_text(path, j.dump(2) + "\n");
}

void write_shape_svg(const WulffShape& shape, const std::string& path) {
    double R = shape.max_radius() * 1.2;
    std::ostringstream os;
    os << svg_header(-R, -R, 2 * R, 2 * R);
    os << polyline(shape.vertices, "steelblue", R / 200, true);
    os << "<circle cx=\"0\" cy=\"0\" r=\"" << R / 100 << "\" fill=\"black\"/>\n";
    os << "</svg>\n";
    write_text(path, os.str());
}

void write_overlay_svg(const std::vector<Vec2>& target, const std::vector<Vec2>& measured,
                       const std::string& path) {
    double R = 1e-6;
    for (const auto& p : target) R = std::max({R, std::abs(p.x), std::abs(p.y)});
    for (const auto& p : measured) R = std::max({R, std::abs(p.x), std::abs(p.y)});
    R *= 1.2;
    std::ostringstream os;
    os << svg_header(-R, -R, 2 * R, 2 * R);
    if (!target.empty()) os << polyline(target, "black", R / 250, true);
    for (const auto& p : measured)
        os << "<circle cx=\"" << p.x << "\" cy=\"" << -p.y << "\" r=\"" << R / 300
           << "\" fill=\"crimson\"/>\n";
    os << "</svg>\n";
    write_text(path, os.str());
}

void emit_report(const ReportBundle& b, const std::string& outdir, const std::string& formats) {
    bool csv = formats.find("csv") != std::string::npos;
    bool js = formats.find("json") != std::string::npos;
    bool svg = formats.find("svg") != std::string::npos;

    fs::path root = fs::path(outdir) / b.scn.name;
    fs::create_directories(root);

    if (js) write_text((root / "summary.json").string(), summary_json(b));

    if (csv && !b.traj.empty()) {
        fs::create_directories(root / "simulate");
        for (size_t k = 0; k < b.traj.times.size(); ++k) {
            std::ostringstream name;
            name << "snapshot_" << b.traj.times[k] << ".csv";
            dump_snapshot_csv(b.traj.snaps[k], b.scn.dim, b.scn.L,
                              (root / "simulate" / name.str()).string());
        }
    }
    if (csv && b.table) {
        fs::create_directories(root / "speeds");
        std::ostringstream os;
        os << "ex,ey,c,oscillation\n";
        os.precision(17);
        for (size_t k = 0; k < b.table->directions.size(); ++k)
            os << b.table->directions[k].x << "," << b.table->directions[k].y << ","
               << b.table->speeds[k] << "," << b.table->oscillations[k] << "\n";
        write_text((root / "speeds" / "table.csv").string(), os.str());
    }
    if (b.wulff) {
        fs::create_directories(root / "wulff");
        if (js) write_shape_json(*b.wulff, (root / "wulff" / "shape.json").string());
        if (svg) write_shape_svg(*b.wulff, (root / "wulff" / "shape.svg").string());
    }
    if (csv && !b.hausdorff_series.empty()) {
        fs::create_directories(root / "hausdorff");
        std::ostringstream os;
        os << "t,d\n";
        os.precision(17);
        for (const auto& p : b.hausdorff_series) os << p.t << "," << p.d << "\n";
        write_text((root / "hausdorff" / "series.csv").string(), os.str());
    }
    if (svg && !b.measured_shape.is_empty()) {
        fs::create_directories(root / "hausdorff");
        std::vector<Vec2> target;
        if (b.wulff) target = b.wulff->vertices;
        write_overlay_svg(target, b.measured_shape.boundary,
                          (root / "hausdorff" / "overlay.svg").string());
    }
    if (csv && !b.omega_rows.empty()) {
        fs::create_directories(root / "omega");
        std::ostringstream os;
        os << "t,x,y,residual,class\n";
        os.precision(17);
        for (const auto& r : b.omega_rows)
            os << r.t << "," << r.center.x << "," << r.center.y << "," << r.residual << ","
               << r.cls << "\n";
        write_text((root / "omega" / "windows.csv").string(), os.str());
    }
    if (csv && b.profile) {
        fs::create_directories(root / "front");
        std::ostringstream os;
        os << "x_cell,y_cell,z,U\n";
        os.precision(17);
        const auto& p = *b.profile;
        for (int jc = 0; jc < p.cell_ny; ++jc)
            for (int ic = 0; ic < p.cell_nx; ++ic)
                for (int iz = 0; iz < p.nz; ++iz)
                    os << static_cast<double>(ic) / p.cell_nx << ","
                       << static_cast<double>(jc) / p.cell_ny << "," << p.z0 + iz * p.dz << ","
                       << p.U[(static_cast<size_t>(jc) * p.cell_nx + ic) * p.nz + iz] << "\n";
        write_text((root / "front" / "profile.csv").string(), os.str());
    }
    if (js && b.eigen) {
        fs::create_directories(root / "eigen");
        json j;
        j["k"] = b.eigen->k;
        j["residual"] = b.eigen->residual;
        j["iterations"] = b.eigen->iterations;
        write_text((root / "eigen" / "eigen.json").string(), j.dump(2) + "\n");
    }
}

}  // namespace frontlab
