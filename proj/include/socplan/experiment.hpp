#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "socplan/dynamics.hpp"
#include "socplan/interp.hpp"
#include "socplan/io.hpp"
#include "socplan/planner.hpp"
#include "socplan/soc_verifier.hpp"

namespace socplan {

// Full description of a seeded pendulum experiment: model parameters,
// interpolator choice, planner configuration, SOC-verification knobs and
// output location. Mirrors the flat "key = value" config-file format 1:1.
struct ExperimentSpec {
  // model
  double length = 0.2;    // m
  double mass = 8.0;      // kg
  double gravity = 9.81;  // m/s^2
  double tau_max = 5.0;   // N m

  // interpolator
  std::string interp = "soc1";  // bezier | soc1 | quad
  double bezier_T = 1.0;        // s

  // planner
  long budget = 150000;
  int k_parents = 10;
  int goal_bias_period = 100;
  double theta_init = 0.0;
  double omega_init = 0.0;
  double goal_theta = kPi;
  double goal_tolerance = 0.1;
  double omega_max = 25.0;
  int adm_checks = 32;
  double velocity_weight = 1.0;

  // runs
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

  // SOC verification
  std::vector<double> soc_scales = default_soc_scales();
  int soc_pairs = 200;
  double region_vmin = 0.5;
  double region_vmax = 20.0;
  std::uint64_t soc_seed = 1;

  // output
  std::string out_dir;
  bool quiet = false;

  void validate() const;

  // Applies one config entry; throws std::invalid_argument on unknown keys
  // or unparseable values (message excludes location; callers add it).
  void apply(const std::string& key, const std::string& value);
  void apply_file(const std::string& path);

  // Fully resolved key/value view (sorted by key) for provenance embedding.
  std::vector<std::pair<std::string, std::string>> to_provenance() const;

  std::unique_ptr<SinglePendulumModel> make_model() const;
  std::unique_ptr<Interpolator> make_interpolator() const;
  PlannerConfig make_planner_config(std::uint64_t seed) const;
  SocRegion make_region() const;
};

struct RunSummaryRow {
  std::uint64_t seed = 0;
  PlanStatus status = PlanStatus::budget_exhausted;
  long extensions = 0;
  long nodes = 0;
  double wall_seconds = 0.0;  // plan() only, excludes file I/O
  int swings = -1;            // sign changes of theta_dot along the solution
};

struct ExperimentResult {
  std::vector<RunSummaryRow> rows;
  int solved_count = 0;
  std::string summary_csv;
};

// Runs plan() for every seed; writes per-seed roadmap CSV and solution dump,
// the SOC report for the chosen interpolator, and a summary CSV under
// spec.out_dir. Prints one summary line per seed unless spec.quiet.
ExperimentResult run_experiment(const ExperimentSpec& spec);

// Runs the SOC verifier with the spec's interpolator, region and scales.
SOCReport run_soc_verification(const ExperimentSpec& spec);

// Sampled (theta, theta_dot) polyline of a solution trajectory for plotting.
std::vector<std::pair<double, double>> solution_polyline(const Trajectory& traj,
                                                         int points_per_segment = 64);

// Sign changes of theta_dot along a solution (diagnostic).
int count_swings(const Trajectory& traj, int samples_per_segment = 128);

}  // namespace socplan
