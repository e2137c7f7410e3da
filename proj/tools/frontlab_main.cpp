#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frontlab/acceptance.hpp"
#include "frontlab/eigenproblem.hpp"
#include "frontlab/report.hpp"
#include "frontlab/scenario.hpp"
#include "frontlab/shooting.hpp"

using namespace frontlab;
using nlohmann::json;

namespace {

Vec2 parse_direction(const std::string& s) {
    std::istringstream ss(s);
    double x, y = 0;
    char comma;
    ss >> x;
    if (ss >> comma >> y) {
    }
    return hat({x, y});
}

Scenario load_scenario(const std::string& path) {
    Scenario s = Scenario::from_config(Config::parse_file(path));
    s.validate();
    return s;
}

int cmd_simulate(const std::string& config, const std::string& out) {
    Scenario s = load_scenario(config);
    ReportBundle b = run_scenario(s);
    emit_report(b, out);
    const auto* sim = b.stage("simulate");
    if (!sim->ok) {
        std::cerr << "simulate failed: " << sim->error << "\n";
        return 1;
    }
    std::cout << "wrote " << b.traj.times.size() << " snapshots under " << out << "/" << s.name
              << "\n";
    return 0;
}

int cmd_front_speed(const std::string& config, const std::string& dir, bool profile_csv,
                    const std::string& out) {
    Scenario s = load_scenario(config);
    PeriodicMedium m = s.build();
    Vec2 e = parse_direction(dir);
    FrontPipeline run = run_front_pipeline(m, e, s.strip);
    json j;
    if (run.speed.status != SpeedStatus::ok) {
        j["status"] = "no-front";
        std::cout << j.dump(2) << "\n";
        return 2;
    }
    const FrontProfile& prof = run.profile;
    j["status"] = "ok";
    j["c"] = run.speed.c;
    j["oscillation"] = run.speed.oscillation;
    j["lambda0"] = prof.lambda0;
    j["C"] = prof.C;
    std::cout << j.dump(2) << "\n";
    if (profile_csv) {
        std::ofstream f(out);
        f << "x_cell,y_cell,z,U\n";
        f.precision(17);
        for (int jc = 0; jc < prof.cell_ny; ++jc)
            for (int ic = 0; ic < prof.cell_nx; ++ic)
                for (int iz = 0; iz < prof.nz; ++iz)
                    f << static_cast<double>(ic) / prof.cell_nx << ","
                      << static_cast<double>(jc) / prof.cell_ny << ","
                      << prof.z0 + iz * prof.dz << ","
                      << prof.U[(static_cast<size_t>(jc) * prof.cell_nx + ic) * prof.nz + iz]
                      << "\n";
        std::cout << "profile written to " << out << "\n";
    }
    return 0;
}

int cmd_eigen(const std::string& config, const std::string& dir, double lambda) {
    Scenario s = load_scenario(config);
    PeriodicMedium m = s.build();
    EigenPair pair = principal_eigenvalue(m, parse_direction(dir), lambda);
    json j;
    j["k"] = pair.k;
    j["residual"] = pair.residual;
    j["iterations"] = pair.iterations;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_wulff(const std::string& speeds_csv, const std::string& out_json,
              const std::string& out_svg) {
    std::ifstream f(speeds_csv);
    if (!f) {
        std::cerr << "cannot open " << speeds_csv << "\n";
        return 1;
    }
    std::string line;
    std::getline(f, line);  // header ex,ey,c[,...]
    std::vector<Vec2> dirs;
    std::vector<double> speeds;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tok;
        std::vector<double> vals;
        while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
        if (vals.size() < 3) continue;
        dirs.push_back(hat({vals[0], vals[1]}));
        speeds.push_back(vals[2]);
    }
    auto w = wulff_shape(dirs, speeds, 256);
    if (!out_json.empty()) write_shape_json(w, out_json);
    if (!out_svg.empty()) write_shape_svg(w, out_svg);
    std::cout << "wulff shape: " << w.vertices.size() << " vertices, radii in ["
              << w.min_radius() << ", " << w.max_radius() << "]\n";
    return 0;
}

int cmd_verify(const std::string& what, const std::string& config, const std::string& out) {
    Scenario s = load_scenario(config);
    if (what == "hausdorff") s.want_hausdorff = true;
    if (what == "omega") s.want_omega = true;
    if (what == "cones") s.want_cones = true;
    ReportBundle b = run_scenario(s);
    if (!out.empty()) emit_report(b, out);

    bool ok = true;
    for (const auto& st : b.stages)
        if (st.ran && !st.ok) {
            ok = false;
            std::cout << st.name << ": FAIL (" << st.error << ")\n";
        }
    if (what == "hausdorff") {
        for (const auto& p : b.hausdorff_series)
            std::cout << "t=" << p.t << " d_H=" << p.d << "\n";
    } else if (what == "omega") {
        for (const auto& r : b.omega_rows)
            std::cout << "t=" << r.t << " residual=" << r.residual << " class=" << r.cls << "\n";
    } else if (what == "cones" && b.cones) {
        std::cout << "gamma=" << b.gamma << " worst margin=" << b.cones->worst_margin << " "
                  << (b.cones->all_pass ? "PASS" : "FAIL") << "\n";
        ok = ok && b.cones->all_pass;
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"frontlab: periodic reaction-diffusion front laboratory"};
    app.require_subcommand(1);

    std::string config, outdir = "out", direction = "1,0", speeds_csv, out_json, out_svg,
                profile_out = "profile.csv";
    double lambda = 0.2;
    std::vector<std::string> ids;

    auto* sim = app.add_subcommand("simulate", "integrate a scenario and dump snapshots");
    sim->add_option("--config", config)->required();
    sim->add_option("--out", outdir);

    auto* fs = app.add_subcommand("front-speed", "pulsating front speed along a direction");
    fs->add_option("--config", config)->required();
    fs->add_option("--direction", direction);

    auto* fp = app.add_subcommand("front-profile", "extract and dump the front profile");
    fp->add_option("--config", config)->required();
    fp->add_option("--direction", direction);
    fp->add_option("--out", profile_out);

    auto* eig = app.add_subcommand("eigen", "cell principal eigenvalue");
    eig->add_option("--config", config)->required();
    eig->add_option("--direction", direction);
    eig->add_option("--lambda", lambda);

    auto* wf = app.add_subcommand("wulff", "build the Wulff shape from a speed table");
    wf->add_option("--speeds", speeds_csv)->required();
    wf->add_option("--out", out_json);
    wf->add_option("--svg", out_svg);

    auto* ver = app.add_subcommand("verify", "run verification pipelines");
    std::string what;
    ver->add_option("what", what)->check(CLI::IsMember({"hausdorff", "omega", "cones"}))
        ->required();
    ver->add_option("--config", config)->required();
    ver->add_option("--out", outdir);

    auto* acc = app.add_subcommand("acceptance", "run the acceptance criteria");
    acc->add_option("ids", ids);

    auto* rep = app.add_subcommand("report", "run a scenario and emit all artifacts");
    rep->add_option("--config", config)->required();
    rep->add_option("--out", outdir);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(config, outdir);
        if (fs->parsed()) return cmd_front_speed(config, direction, false, profile_out);
        if (fp->parsed()) return cmd_front_speed(config, direction, true, profile_out);
        if (eig->parsed()) return cmd_eigen(config, direction, lambda);
        if (wf->parsed()) return cmd_wulff(speeds_csv, out_json, out_svg);
        if (ver->parsed()) return cmd_verify(what, config, outdir);
        if (acc->parsed()) return run_acceptance(ids, std::cout) == 0 ? 0 : 1;
        if (rep->parsed()) {
            Scenario s = load_scenario(config);
            ReportBundle b = run_scenario(s);
            emit_report(b, outdir);
            std::cout << "report written under " << outdir << "/" << s.name << "\n";
            return 0;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
