#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "socplan/experiment.hpp"
#include "socplan/io.hpp"
#include "socplan/svg.hpp"

namespace {

// Exit codes: 0 success, 1 usage error, 2 I/O error, 3 invariant violation.
constexpr int kOk = 0;
constexpr int kUsageError = 1;
constexpr int kIoError = 2;
constexpr int kInvariantError = 3;

// Every config-file key is mirrored by a --flag of the same name (dashes for
// underscores). Flags override file values, which override defaults.
struct SpecFlags {
  std::vector<std::pair<std::string, std::string>> pending;

  void add(CLI::App* cmd, const std::string& key,
           const std::string& description) {
    std::string flag = "--" + key;
    for (auto& c : flag) {
      if (c == '_') c = '-';
    }
    cmd->add_option_function<std::string>(
        flag,
        [this, key](const std::string& value) {
          pending.emplace_back(key, value);
        },
        description);
  }

  void apply_to(socplan::ExperimentSpec& spec) const {
    for (const auto& [key, value] : pending) {
      spec.apply(key, value);
    }
  }
};

void add_model_flags(CLI::App* cmd, SpecFlags& flags) {
  flags.add(cmd, "length", "pendulum length [m]");
  flags.add(cmd, "mass", "pendulum mass [kg]");
  flags.add(cmd, "gravity", "gravity [m/s^2]");
  flags.add(cmd, "tau_max", "torque limit [N m]");
  flags.add(cmd, "interp", "interpolator: bezier | soc1 | quad");
  flags.add(cmd, "bezier_T", "fixed Bezier segment duration [s]");
}

void add_planner_flags(CLI::App* cmd, SpecFlags& flags) {
  flags.add(cmd, "budget", "extension iterations per run");
  flags.add(cmd, "k_parents", "nearest neighbors tried per extension");
  flags.add(cmd, "goal_bias_period", "steer to the goal every m-th iteration");
  flags.add(cmd, "theta_init", "initial angle [rad]");
  flags.add(cmd, "omega_init", "initial velocity [rad/s]");
  flags.add(cmd, "goal_theta", "goal angle [rad]");
  flags.add(cmd, "goal_tolerance", "goal ball radius (state distance)");
  flags.add(cmd, "omega_max", "sampled velocity bound [rad/s]");
  flags.add(cmd, "adm_checks", "torque checks per segment");
  flags.add(cmd, "velocity_weight", "metric weight on velocity components");
  flags.add(cmd, "seed", "single RNG seed");
  flags.add(cmd, "seeds", "seed list: A..B or comma-separated");
}

void add_soc_flags(CLI::App* cmd, SpecFlags& flags) {
  flags.add(cmd, "soc_scales", "pair separations, comma-separated, decreasing");
  flags.add(cmd, "soc_pairs", "pairs per scale");
  flags.add(cmd, "region_vmin", "region speed band lower edge [rad/s]");
  flags.add(cmd, "region_vmax", "region speed band upper edge [rad/s]");
  flags.add(cmd, "soc_seed", "SOC verification RNG seed");
}

int run(int argc, char** argv) {
  CLI::App app{"socplan: kinodynamic RRT with state-based steering for "
               "torque-limited pendulums"};
  app.require_subcommand(1);

  std::string config_path;
  socplan::ExperimentSpec spec;

  // --- plan ---------------------------------------------------------------
  CLI::App* plan_cmd = app.add_subcommand(
      "plan", "run seeded planning experiments and dump results");
  SpecFlags plan_flags;
  plan_cmd->add_option("--config", config_path, "config file (key = value)");
  add_model_flags(plan_cmd, plan_flags);
  add_planner_flags(plan_cmd, plan_flags);
  add_soc_flags(plan_cmd, plan_flags);
  plan_flags.add(plan_cmd, "out", "output directory");
  plan_cmd->add_flag_callback(
      "--quiet", [&] { plan_flags.pending.emplace_back("quiet", "true"); },
      "suppress per-seed progress lines");

  // --- plot ---------------------------------------------------------------
  CLI::App* plot_cmd =
      app.add_subcommand("plot", "render a phase portrait SVG from dumps");
  std::string roadmap_path, solution_path, svg_path, title;
  double omega_range = 0.0;
  bool plot_quiet = false;
  plot_cmd->add_option("--roadmap", roadmap_path, "roadmap CSV")->required();
  plot_cmd->add_option("--solution", solution_path, "solution dump (optional)");
  plot_cmd->add_option("--out", svg_path, "output SVG path")->required();
  plot_cmd->add_option("--omega-range", omega_range,
                       "vertical half-range [rad/s]; 0 fits the data");
  plot_cmd->add_option("--title", title, "plot title");
  plot_cmd->add_flag("--quiet", plot_quiet, "suppress the density summary");

  // --- verify-soc ---------------------------------------------------------
  CLI::App* verify_cmd = app.add_subcommand(
      "verify-soc", "numerically check the interpolation assumptions");
  SpecFlags verify_flags;
  verify_cmd->add_option("--config", config_path, "config file (key = value)");
  add_model_flags(verify_cmd, verify_flags);
  add_soc_flags(verify_cmd, verify_flags);
  verify_flags.add(verify_cmd, "out", "directory for soc_report.{txt,kv}");
  verify_cmd->add_flag_callback(
      "--quiet", [&] { verify_flags.pending.emplace_back("quiet", "true"); },
      "suppress the text report");

  // --- validate -----------------------------------------------------------
  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "re-check the tree invariants of a roadmap dump");
  std::string validate_path;
  validate_cmd->add_option("--roadmap", validate_path, "roadmap CSV")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);  // prints help or the parse diagnostic
    return rc == 0 ? kOk : kUsageError;
  }

  if (plan_cmd->parsed()) {
    if (!config_path.empty()) spec.apply_file(config_path);
    plan_flags.apply_to(spec);
    const socplan::ExperimentResult result = socplan::run_experiment(spec);
    if (!spec.quiet) {
      std::printf("%d/%zu solved; outputs in %s\n", result.solved_count,
                  result.rows.size(), spec.out_dir.c_str());
    }
    return kOk;
  }

  if (plot_cmd->parsed()) {
    const socplan::io::RoadmapTable table =
        socplan::io::roadmap_from_csv(socplan::io::read_file(roadmap_path));
    table.validate();
    std::vector<std::pair<double, double>> polyline;
    if (!solution_path.empty()) {
      const socplan::Trajectory sol = socplan::io::solution_from_string(
          socplan::io::read_file(solution_path));
      polyline = socplan::solution_polyline(sol);
    }
    socplan::svg::PhasePortraitStyle style;
    style.omega_range = omega_range;
    style.title = title;
    socplan::io::write_file(
        svg_path, socplan::svg::render_phase_portrait(
                      table, polyline.empty() ? nullptr : &polyline, style));
    if (!plot_quiet) {
      std::printf("%zu nodes; low/high speed density ratio %.2f; wrote %s\n",
                  table.rows.size(), socplan::svg::band_density_ratio(table),
                  svg_path.c_str());
    }
    return kOk;
  }

  if (verify_cmd->parsed()) {
    if (!config_path.empty()) spec.apply_file(config_path);
    verify_flags.apply_to(spec);
    const socplan::SOCReport report = socplan::run_soc_verification(spec);
    if (!spec.quiet) std::fputs(report.to_text().c_str(), stdout);
    if (!spec.out_dir.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(spec.out_dir, ec);
      if (ec) {
        throw std::ios_base::failure("cannot create " + spec.out_dir);
      }
      socplan::io::write_file(spec.out_dir + "/soc_report.txt",
                              report.to_text());
      socplan::io::write_file(spec.out_dir + "/soc_report.kv", report.to_kv());
    }
    return report.conclusive ? kOk : kInvariantError;
  }

  if (validate_cmd->parsed()) {
    const socplan::io::RoadmapTable table =
        socplan::io::roadmap_from_csv(socplan::io::read_file(validate_path));
    table.validate();
    std::printf("ok: %zu nodes, tree invariants hold\n", table.rows.size());
    return kOk;
  }

  return kUsageError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kUsageError;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kUsageError;
  } catch (const std::ios_base::failure& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kIoError;
  } catch (const std::logic_error& e) {
    std::fprintf(stderr, "invariant violation: %s\n", e.what());
    return kInvariantError;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kIoError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInvariantError;
  }
}
