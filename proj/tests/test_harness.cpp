#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "frontlab/config.hpp"
#include "frontlab/report.hpp"
#include "frontlab/scenario.hpp"

using namespace frontlab;

namespace {

const char* kSmallScenario = R"(
# small invading ball
[scenario]
name = unit-ball
dimension = 2

[medium]
reaction = bistable
alpha = 0.25
A = identity
q = none
cell_resolution = 4

[initial]
kind = ball
theta = 0.8
radius = 5

[grid]
L = 14
h = 0.25

[time]
T = 24
outputs = 12,24

[analysis]
hausdorff = on
omega = on
cones = on

[strip]
length = 40
travel = 20
)";

}  // namespace

TEST_CASE("config parses sections, values, lists and comments") {
    auto c = Config::parse("[a]\nx = 1.5 # trailing\nlist = 1,2.5,3\nflag = on\n\n[b]\ns = hi\n");
    CHECK(c.number("a", "x", 0) == 1.5);
    CHECK(c.list("a", "list") == std::vector<double>{1.0, 2.5, 3.0});
    CHECK(c.flag("a", "flag", false));
    CHECK(c.get("b", "s", "") == "hi");
    CHECK(c.get("b", "missing", "dflt") == "dflt");
    CHECK_THROWS_AS(Config::parse("novalue\n"), std::invalid_argument);
    CHECK_THROWS_AS(c.require("a", "absent"), std::invalid_argument);
}

TEST_CASE("scenario validation catches bad grids") {
    auto c = Config::parse(kSmallScenario);
    c.set("grid", "h", "0.3");  // does not divide the unit cell
    Scenario s = Scenario::from_config(c);
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);

    auto c2 = Config::parse(kSmallScenario);
    c2.set("time", "outputs", "8,40");  // beyond T
    Scenario s2 = Scenario::from_config(c2);
    CHECK_THROWS_AS(s2.validate(), std::invalid_argument);
}

TEST_CASE("full pipeline bundle with deterministic summaries") {
    Scenario s = Scenario::from_config(Config::parse(kSmallScenario));
    s.validate();
    ReportBundle b1 = run_scenario(s);

    CHECK(b1.stage("validate")->ok);
    CHECK(b1.stage("simulate")->ok);
    CHECK(b1.stage("front")->ok);
    CHECK(b1.stage("hausdorff")->ok);
    CHECK(b1.stage("omega")->ok);
    CHECK(b1.stage("cones")->ok);
    CHECK_FALSE(b1.stage("eigen")->ran);
    REQUIRE_FALSE(b1.hausdorff_series.empty());
    REQUIRE_FALSE(b1.omega_rows.empty());
    CHECK(b1.gamma > 0.0);

    ReportBundle b2 = run_scenario(s);
    CHECK(summary_json(b1) == summary_json(b2));  // byte-identical rerun
}

TEST_CASE("extinction scenario flags the empty invasion shape") {
    auto c = Config::parse(kSmallScenario);
    c.set("initial", "theta", "0.1");
    c.set("initial", "radius", "1");
    c.set("time", "T", "30");
    c.set("time", "outputs", "30");
    c.set("analysis", "hausdorff", "off");
    c.set("analysis", "omega", "off");
    Scenario s = Scenario::from_config(c);
    ReportBundle b = run_scenario(s);
    CHECK(b.stage("simulate")->ok);
    CHECK(b.stage("cones")->ran);
    CHECK_FALSE(b.stage("cones")->ok);  // empty shape reported as stage error
    CHECK(b.stage("cones")->error.find("empty") != std::string::npos);
}

TEST_CASE("report emission writes the artifact tree") {
    namespace fs = std::filesystem;
    Scenario s = Scenario::from_config(Config::parse(kSmallScenario));
    ReportBundle b = run_scenario(s);
    fs::path out = fs::temp_directory_path() / "frontlab_report_test";
    fs::remove_all(out);
    emit_report(b, out.string());
    CHECK(fs::exists(out / "unit-ball" / "summary.json"));
    CHECK(fs::exists(out / "unit-ball" / "simulate" / "snapshot_24.csv"));
    CHECK(fs::exists(out / "unit-ball" / "hausdorff" / "series.csv"));
    CHECK(fs::exists(out / "unit-ball" / "omega" / "windows.csv"));

    // snapshot round trip
    GridField g = load_snapshot_csv((out / "unit-ball" / "simulate" / "snapshot_24.csv").string());
    CHECK(g.nx == b.traj.snaps.back().nx);
    double worst = 0;
    for (size_t k = 0; k < g.v.size(); ++k)
        worst = std::max(worst, std::abs(g.v[k] - b.traj.snaps.back().v[k]));
    CHECK(worst == 0.0);
    fs::remove_all(out);
}

TEST_CASE("scenario with positive-speed gate: balanced reaction fails speeds") {
    auto c = Config::parse(kSmallScenario);
    c.set("medium", "alpha", "0.5");
    c.set("analysis", "hausdorff", "off");
    c.set("analysis", "omega", "off");
    c.set("analysis", "cones", "off");
    c.set("analysis", "speeds", "on");
    c.set("analysis", "directions", "8");
    c.set("strip", "max_T", "40");
    Scenario s = Scenario::from_config(c);
    ReportBundle b = run_scenario(s);
    CHECK(b.stage("speeds")->ran);
    CHECK_FALSE(b.stage("speeds")->ok);
}
