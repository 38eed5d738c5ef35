#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "socplan/dynamics.hpp"
#include "socplan/interp.hpp"
#include "socplan/rng.hpp"
#include "socplan/statespace.hpp"

namespace socplan {

// Roadmap node. The root has no parent and no segment; every other node
// stores the steering segment from its parent, whose endpoint state equals
// the node's state (exact-connection steering).
struct Node {
  int id = 0;
  State state;
  std::optional<int> parent;
  std::optional<TrajectorySegment> segment;
  long iteration_added = 0;
};

// Rooted tree of states built by the planner; node 0 is the initial state.
struct Roadmap {
  std::vector<Node> nodes;

  int size() const { return static_cast<int>(nodes.size()); }
  const Node& node(int id) const { return nodes.at(id); }

  // Checks the tree invariants: parent ids in range, exactly one root (node
  // 0), acyclicity/reachability, and non-root segment endpoints matching the
  // node state. Throws std::logic_error on violation.
  void validate() const;
};

// Per-joint sampling box: theta in (-pi, pi], |theta_dot| <= omega_max.
struct SampleBounds {
  double omega_max = 25.0;
};

struct PlannerConfig {
  long n_iterations = 150000;
  int k_parents = 10;
  int goal_bias_period = 100;  // every m-th iteration targets the goal
  State x_init;
  State goal_state;
  double goal_tolerance = 0.1;
  SampleBounds sample_bounds;
  int admissibility_checks = 32;
  std::uint64_t rng_seed = 1;
  double velocity_weight = 1.0;

  void validate(int dof) const;
};

enum class PlanStatus { solved, budget_exhausted };

struct PlanResult {
  PlanStatus status = PlanStatus::budget_exhausted;
  Roadmap roadmap;
  std::optional<Trajectory> solution;
  std::optional<int> goal_node;
  long extensions_used = 0;
  long nodes_created = 0;
};

// Uniform sample over the box; deterministic given the rng state.
State sample(const SampleBounds& bounds, int dof, Rng& rng);

// Ids of the min(k, |V|) roadmap nodes closest to x, ascending by
// (state_distance, id). Reference linear-scan implementation; plan() uses an
// equivalent spatial index internally.
std::vector<int> parents(const State& x, const Roadmap& roadmap, int k,
                         double velocity_weight = 1.0);

enum class SteerFailure { none, interpolation, inadmissible };

struct SteerResult {
  std::optional<TrajectorySegment> segment;
  SteerFailure failure = SteerFailure::none;
  double max_torque_ratio = 0.0;

  explicit operator bool() const { return segment.has_value(); }
};

// Interpolate x -> xp and accept iff the required torques stay admissible at
// `checks` samples. On success the new node adopts xp exactly.
SteerResult steer(const DynamicsModel& model, const Interpolator& interp,
                  const State& x, const State& xp, int checks);

// Randomized tree extension: every iteration draws a target (the goal on
// each goal_bias_period-th iteration, otherwise a fresh uniform sample;
// goal-targeted iterations consume no sample) and tries to steer from the k
// nearest nodes in ascending-distance order until one connects. Steering is
// exact-connection, so later parents would reproduce the same state; the
// vertex set gains at most one node per iteration. Terminates early once a
// new node lies within goal_tolerance of the goal. Deterministic given the
// seed.
PlanResult plan(const DynamicsModel& model, const Interpolator& interp,
                const PlannerConfig& config);

// Concatenation of the steering segments along the root -> goal_node path,
// with per-segment constant offsets so the result is continuous in unwrapped
// coordinates (a seam-crossing connection shifts by 2 pi). Returns the empty
// trajectory for the root itself.
Trajectory extract_solution(const Roadmap& roadmap, int goal_node);

struct VelocityBand {
  double max_node_speed = 0.0;  // max |theta_dot| over roadmap nodes
  double band_bound = 0.0;      // K T^2 tau_max / 6 with K = 1/I
  double swingup_threshold = 0.0;  // sqrt(6 g / l) for the rod model
};

// Diagnostic for roadmaps built with fixed-duration steering: compares the
// observed speed range against the analytic band that bounds reachable
// steering endpoints, and against the speed needed to swing up at all.
VelocityBand velocity_band_diagnostic(const Roadmap& roadmap,
                                      const SinglePendulumModel& model,
                                      double T);

}  // namespace socplan
