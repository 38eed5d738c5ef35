#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

#include "socplan/experiment.hpp"
#include "socplan/io.hpp"
#include "socplan/svg.hpp"

using namespace socplan;
namespace fs = std::filesystem;

namespace {

fs::path make_temp_dir(const std::string& tag) {
  const fs::path dir =
      fs::temp_directory_path() / ("socplan_test_" + tag + "_" +
                                   std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Roadmap tiny_roadmap() {
  const SinglePendulumModel model(0.2, 8.0, 5.0);
  const Soc1Interpolator soc1;
  PlannerConfig cfg;
  cfg.n_iterations = 400;
  cfg.x_init = State::single(0.0, 0.0);
  cfg.goal_state = State::single(kPi, 0.0);
  cfg.rng_seed = 4;
  return plan(model, soc1, cfg).roadmap;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SOCPLAN_CLI_PATH) + " " + args +
                          " > /dev/null 2> /dev/null";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("config text parsing") {
  const std::string text =
      "# experiment\n"
      "tau_max = 5.0\n"
      "\n"
      "interp= soc1\n"
      "seeds = 1..3\n";
  const auto entries = io::parse_config_text(text);
  REQUIRE(entries.size() == 3);
  CHECK(entries[0].key == "tau_max");
  CHECK(entries[0].value == "5.0");
  CHECK(entries[0].line == 2);
  CHECK(entries[1].value == "soc1");

  CHECK_THROWS_WITH_AS(io::parse_config_text("tau_max\n"),
                       doctest::Contains("line 1"), std::runtime_error);
}

TEST_CASE("spec applies config entries with diagnostics") {
  ExperimentSpec spec;
  spec.apply("tau_max", "7.5");
  CHECK(spec.tau_max == 7.5);
  spec.apply("seeds", "2..4");
  CHECK(spec.seeds == std::vector<std::uint64_t>{2, 3, 4});
  spec.apply("seeds", "5,9");
  CHECK(spec.seeds == std::vector<std::uint64_t>{5, 9});
  spec.apply("soc_scales", "0.2,0.1,0.05");
  CHECK(spec.soc_scales.size() == 3);
  CHECK_THROWS_AS(spec.apply("no_such_key", "1"), std::invalid_argument);
  CHECK_THROWS_AS(spec.apply("tau_max", "banana"), std::invalid_argument);
  CHECK_THROWS_AS(spec.apply("budget", "10.5"), std::invalid_argument);
}

TEST_CASE("spec validation rejects nonsense") {
  ExperimentSpec spec;
  spec.interp = "spline";
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = ExperimentSpec{};
  spec.tau_max = -1;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = ExperimentSpec{};
  spec.soc_scales = {0.1, 0.2};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("roadmap CSV round trip preserves every row exactly") {
  const Roadmap roadmap = tiny_roadmap();
  const std::string csv =
      io::roadmap_to_csv(roadmap, {{"tau_max", "5"}, {"seed", "4"}});
  CHECK(csv.rfind(io::kRoadmapHeader, 0) == 0);

  const io::RoadmapTable table = io::roadmap_from_csv(csv);
  table.validate();
  REQUIRE(static_cast<int>(table.rows.size()) == roadmap.size());
  for (int i = 0; i < roadmap.size(); ++i) {
    const Node& n = roadmap.node(i);
    const io::RoadmapRow& r = table.rows[i];
    CHECK(r.id == n.id);
    CHECK(r.parent_id == (n.parent ? *n.parent : -1));
    // %.17g round-trips doubles bit-exactly.
    CHECK(r.theta == n.state.q()[0]);
    CHECK(r.theta_dot == n.state.qd()[0]);
    CHECK(r.iteration_added == n.iteration_added);
  }
}

TEST_CASE("roadmap CSV parse errors name the offending row") {
  const std::string good =
      std::string(io::kRoadmapHeader) +
      "\nid,parent_id,theta,theta_dot,iteration_added\n0,-1,0,0,0\n";
  CHECK_NOTHROW(io::roadmap_from_csv(good));

  CHECK_THROWS_WITH_AS(io::roadmap_from_csv(good + "1,0,bad,0,4\n"),
                       doctest::Contains("line 4"), std::runtime_error);
  CHECK_THROWS_WITH_AS(io::roadmap_from_csv("id,parent\n"),
                       doctest::Contains("header"), std::runtime_error);

  // Structure violations are invariant errors, not parse errors.
  io::RoadmapTable table = io::roadmap_from_csv(good);
  table.rows.push_back({1, 5, 0.0, 0.0, 1});  // parent does not precede node
  CHECK_THROWS_AS(table.validate(), std::logic_error);
}

TEST_CASE("solution dump round trip") {
  const SinglePendulumModel model(0.2, 8.0, 50.0);
  const Soc1Interpolator soc1;
  PlannerConfig cfg;
  cfg.n_iterations = 5000;
  cfg.x_init = State::single(0.0, 0.0);
  cfg.goal_state = State::single(kPi, 0.0);
  cfg.rng_seed = 2;
  const PlanResult result = plan(model, soc1, cfg);
  REQUIRE(result.status == PlanStatus::solved);

  const std::string dump = io::solution_to_string(
      *result.solution, {{"seed", "2"}, {"interpolator", "soc1"}});
  CHECK(dump.rfind(io::kSolutionHeader, 0) == 0);

  std::map<std::string, std::string> meta;
  const Trajectory parsed = io::solution_from_string(dump, &meta);
  CHECK(meta.at("seed") == "2");
  REQUIRE(parsed.size() == result.solution->size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    CHECK(parsed.segment(i).duration == result.solution->segment(i).duration);
    CHECK(parsed.segment(i).coeffs == result.solution->segment(i).coeffs);
  }

  CHECK_THROWS_AS(io::solution_from_string("{}"), std::runtime_error);
}

TEST_CASE("svg: root-only roadmap renders a single node point") {
  io::RoadmapTable table;
  table.rows.push_back({0, -1, 0.0, 0.0, 0});
  const std::string svg_doc = svg::render_phase_portrait(table, nullptr);
  CHECK(svg_doc.find("<circle") != std::string::npos);
  CHECK(svg_doc.find("<circle", svg_doc.find("<circle") + 1) ==
        std::string::npos);
  // Deterministic output.
  CHECK(svg_doc == svg::render_phase_portrait(table, nullptr));
}

TEST_CASE("svg: solution overlay and seam-crossing edges") {
  io::RoadmapTable table;
  table.rows.push_back({0, -1, 3.0, 1.0, 0});
  table.rows.push_back({1, 0, -3.0, 1.5, 1});  // crosses the seam
  std::vector<std::pair<double, double>> polyline = {{3.0, 1.0}, {3.2, 1.2},
                                                     {-3.1, 1.4}};
  svg::PhasePortraitStyle style;
  style.omega_range = 5.0;
  const std::string doc = svg::render_phase_portrait(table, &polyline, style);
  CHECK(doc.find(style.solution_color) != std::string::npos);
  // The seam edge is drawn as two shifted stubs.
  CHECK(doc.find("<line") != std::string::npos);
}

TEST_CASE("band density ratio counts the velocity bands") {
  io::RoadmapTable table;
  for (int i = 0; i < 90; ++i) table.rows.push_back({i, i ? 0 : -1, 0.0, 1.0, 0});
  for (int i = 90; i < 100; ++i) table.rows.push_back({i, 0, 0.0, 10.0, 0});
  // 90 nodes in |w|<=2 (area 4*2pi), 10 in 5<|w|<15 (area 20*2pi):
  // densities 90/4 vs 10/20 per 2pi => ratio 45.
  CHECK(svg::band_density_ratio(table) == doctest::Approx(45.0));
}

TEST_CASE("run_experiment writes the documented artifacts") {
  const fs::path dir = make_temp_dir("exp");
  ExperimentSpec spec;
  spec.tau_max = 50.0;
  spec.budget = 3000;
  spec.seeds = {3};
  spec.soc_pairs = 20;
  spec.quiet = true;
  spec.out_dir = dir.string();
  const ExperimentResult result = run_experiment(spec);
  REQUIRE(result.rows.size() == 1);
  CHECK(result.solved_count == 1);
  // High torque can swing up directly, so zero sign changes is legitimate.
  CHECK(result.rows[0].swings >= 0);
  CHECK(fs::exists(dir / "summary.csv"));
  CHECK(fs::exists(dir / "soc_report.txt"));
  CHECK(fs::exists(dir / "soc_report.kv"));
  CHECK(fs::exists(dir / "seed_3" / "roadmap.csv"));
  CHECK(fs::exists(dir / "seed_3" / "solution.json"));

  // The dumped roadmap re-validates and matches the reported node count.
  const io::RoadmapTable table = io::roadmap_from_csv(
      io::read_file((dir / "seed_3" / "roadmap.csv").string()));
  table.validate();
  CHECK(static_cast<long>(table.rows.size()) == result.rows[0].nodes);
  fs::remove_all(dir);
}

TEST_CASE("run_experiment with a zero budget reports budget_exhausted") {
  const fs::path dir = make_temp_dir("zero");
  ExperimentSpec spec;
  spec.budget = 0;
  spec.seeds = {1, 2};
  spec.soc_pairs = 20;
  spec.quiet = true;
  spec.out_dir = dir.string();
  const ExperimentResult result = run_experiment(spec);
  CHECK(result.solved_count == 0);
  for (const RunSummaryRow& row : result.rows) {
    CHECK(row.status == PlanStatus::budget_exhausted);
    CHECK(row.extensions == 0);
    CHECK(row.nodes == 1);
  }
  fs::remove_all(dir);
}

TEST_CASE("cli: plan, validate, plot, verify-soc round trip with exit codes") {
  const fs::path dir = make_temp_dir("cli");
  const std::string out = (dir / "run").string();

  // Usage errors.
  CHECK(run_cli("definitely-not-a-subcommand") == 1);
  CHECK(run_cli("plan --tau-max banana --out " + out) == 1);
  CHECK(run_cli("plan --budget 10 --seed 1") == 1);  // no output directory

  // A quick solvable experiment.
  CHECK(run_cli("plan --quiet --seed 3 --budget 3000 --tau-max 50"
                " --soc-pairs 20 --out " + out) == 0);
  const std::string roadmap_path = out + "/seed_3/roadmap.csv";
  CHECK(run_cli("validate --roadmap " + roadmap_path) == 0);

  // Plot twice; byte-identical SVGs.
  CHECK(run_cli("plot --quiet --roadmap " + roadmap_path + " --solution " +
                out + "/seed_3/solution.json --out " + out + "/a.svg") == 0);
  CHECK(run_cli("plot --quiet --roadmap " + roadmap_path + " --solution " +
                out + "/seed_3/solution.json --out " + out + "/b.svg") == 0);
  CHECK(io::read_file(out + "/a.svg") == io::read_file(out + "/b.svg"));

  // I/O errors: missing and malformed inputs.
  CHECK(run_cli("validate --roadmap " + out + "/nope.csv") == 2);
  io::write_file(out + "/broken.csv", "not a roadmap\n");
  CHECK(run_cli("validate --roadmap " + out + "/broken.csv") == 2);

  // Invariant violations in a structurally corrupt roadmap.
  std::string csv = io::read_file(roadmap_path);
  csv += "99999,100000,0,0,1\n";
  io::write_file(out + "/corrupt.csv", csv);
  CHECK(run_cli("validate --roadmap " + out + "/corrupt.csv") == 3);

  // verify-soc writes reports and succeeds.
  CHECK(run_cli("verify-soc --quiet --interp quad --soc-pairs 20 --out " +
                out + "/soc") == 0);
  CHECK(fs::exists(out + "/soc/soc_report.kv"));

  // Config file + flag override: the flag wins.
  io::write_file((dir / "exp.conf").string(),
                 "tau_max = 50\nbudget = 200\nseed = 3\nsoc_pairs = 20\n");
  CHECK(run_cli("plan --quiet --config " + (dir / "exp.conf").string() +
                " --budget 3000 --out " + out + "/cfg") == 0);
  const std::string summary = io::read_file(out + "/cfg/summary.csv");
  CHECK(summary.find("# budget = 3000") != std::string::npos);

  // Config file diagnostics name the line.
  io::write_file((dir / "bad.conf").string(), "tau_max = 5\nwhat = 1\n");
  CHECK(run_cli("plan --config " + (dir / "bad.conf").string() + " --out " +
                out + "/bad") == 1);

  fs::remove_all(dir);
}
