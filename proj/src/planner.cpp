#include "socplan/planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "socplan/neighbors.hpp"

namespace socplan {

void Roadmap::validate() const {
  if (nodes.empty()) throw std::logic_error("roadmap: empty");
  for (int i = 0; i < size(); ++i) {
    const Node& n = nodes[i];
    if (n.id != i) throw std::logic_error("roadmap: id/index mismatch");
    if (i == 0) {
      if (n.parent || n.segment) {
        throw std::logic_error("roadmap: root must have no parent/segment");
      }
      continue;
    }
    if (!n.parent || !n.segment) {
      throw std::logic_error("roadmap: non-root node " + std::to_string(i) +
                             " missing parent or segment");
    }
    // Append order guarantees acyclicity as long as parents precede children.
    if (*n.parent < 0 || *n.parent >= i) {
      throw std::logic_error("roadmap: bad parent id at node " +
                             std::to_string(i));
    }
    const State end = n.segment->end_state();
    if (state_distance(end, n.state) > 1e-9) {
      throw std::logic_error("roadmap: segment endpoint mismatch at node " +
                             std::to_string(i));
    }
  }
}

void PlannerConfig::validate(int dof) const {
  if (n_iterations < 0) {
    throw std::invalid_argument("PlannerConfig: n_iterations must be >= 0");
  }
  if (k_parents < 1 || goal_bias_period < 1 || admissibility_checks < 2) {
    throw std::invalid_argument("PlannerConfig: counts must be >= 1");
  }
  if (!(goal_tolerance > 0.0)) {
    throw std::invalid_argument("PlannerConfig: goal_tolerance must be > 0");
  }
  if (!(sample_bounds.omega_max > 0.0)) {
    throw std::invalid_argument("PlannerConfig: omega_max must be > 0");
  }
  if (x_init.dof() != dof || goal_state.dof() != dof) {
    throw std::invalid_argument("PlannerConfig: state dimension mismatch");
  }
  for (int j = 0; j < dof; ++j) {
    if (std::abs(x_init.qd()[j]) > sample_bounds.omega_max) {
      throw std::invalid_argument("PlannerConfig: x_init outside bounds");
    }
  }
}

State sample(const SampleBounds& bounds, int dof, Rng& rng) {
  Eigen::VectorXd q(dof), qd(dof);
  for (int j = 0; j < dof; ++j) {
    q[j] = rng.uniform(-kPi, kPi);
    qd[j] = rng.uniform(-bounds.omega_max, bounds.omega_max);
  }
  return State(std::move(q), std::move(qd));
}

std::vector<int> parents(const State& x, const Roadmap& roadmap, int k,
                         double velocity_weight) {
  if (roadmap.nodes.empty()) {
    throw std::domain_error("parents: empty roadmap");
  }
  if (k < 1) throw std::domain_error("parents: k must be >= 1");
  std::vector<std::pair<double, int>> cand;
  cand.reserve(roadmap.nodes.size());
  for (const Node& n : roadmap.nodes) {
    cand.emplace_back(state_distance(n.state, x, velocity_weight), n.id);
  }
  std::sort(cand.begin(), cand.end());
  const int take = std::min<int>(k, static_cast<int>(cand.size()));
  std::vector<int> out(take);
  for (int i = 0; i < take; ++i) out[i] = cand[i].second;
  return out;
}

SteerResult steer(const DynamicsModel& model, const Interpolator& interp,
                  const State& x, const State& xp, int checks) {
  SteerResult result;
  std::optional<Trajectory> traj = interp.interpolate(x, xp);
  if (!traj) {
    result.failure = SteerFailure::interpolation;
    return result;
  }
  const AdmissibilityResult adm = is_admissible(model, *traj, checks);
  result.max_torque_ratio = adm.max_ratio;
  if (!adm.admissible) {
    result.failure = SteerFailure::inadmissible;
    return result;
  }
  result.segment = traj->segment(0);
  return result;
}

PlanResult plan(const DynamicsModel& model, const Interpolator& interp,
                const PlannerConfig& config) {
  const int dof = model.dof();
  config.validate(dof);

  PlanResult result;
  Roadmap& roadmap = result.roadmap;
  roadmap.nodes.push_back(Node{0, config.x_init, std::nullopt, std::nullopt, 0});

  // Grid sized to cover sampled velocities and the initial state.
  double omega_cap = config.sample_bounds.omega_max;
  for (int j = 0; j < dof; ++j) {
    omega_cap = std::max(omega_cap, std::abs(config.x_init.qd()[j]));
  }
  KnnIndex index(dof, omega_cap, config.velocity_weight);
  index.insert(0, config.x_init);

  const auto goal_distance = [&](const State& s) {
    // The wrapped metric makes the two seam representatives of an upright
    // goal (+-pi) equidistant automatically.
    return state_distance(s, config.goal_state, config.velocity_weight);
  };

  if (goal_distance(config.x_init) <= config.goal_tolerance) {
    result.status = PlanStatus::solved;
    result.solution = Trajectory();
    result.goal_node = 0;
    return result;
  }

  Rng rng(config.rng_seed);
  for (long it = 1; it <= config.n_iterations; ++it) {
    result.extensions_used = it;
    const bool to_goal = (it % config.goal_bias_period == 0);
    // Goal-targeted iterations consume no sample, keeping the random stream
    // aligned with the iteration count.
    const State target =
        to_goal ? config.goal_state : sample(config.sample_bounds, dof, rng);

    const std::vector<int> parent_ids = index.nearest(target, config.k_parents);
    for (const int pid : parent_ids) {
      SteerResult sr = steer(model, interp, roadmap.nodes[pid].state, target,
                             config.admissibility_checks);
      if (!sr) continue;
      const int nid = roadmap.size();
      roadmap.nodes.push_back(
          Node{nid, target, pid, std::move(sr.segment), it});
      index.insert(nid, target);
      ++result.nodes_created;
      if (goal_distance(target) <= config.goal_tolerance) {
        result.status = PlanStatus::solved;
        result.goal_node = nid;
        result.solution = extract_solution(roadmap, nid);
        return result;
      }
      // With exact-connection steering every further successful parent
      // produces the same state; the vertex set union adds it only once, and
      // a tree keeps a single parent edge. Remaining parents are candidates,
      // not extra nodes.
      break;
    }
  }
  result.status = PlanStatus::budget_exhausted;
  return result;
}

Trajectory extract_solution(const Roadmap& roadmap, int goal_node) {
  if (goal_node < 0 || goal_node >= roadmap.size()) {
    throw std::domain_error("extract_solution: node id out of range");
  }
  std::vector<int> chain;
  for (int id = goal_node; roadmap.node(id).parent;
       id = *roadmap.node(id).parent) {
    chain.push_back(id);
    if (static_cast<int>(chain.size()) > roadmap.size()) {
      throw std::domain_error("extract_solution: parent chain does not reach root");
    }
  }
  std::reverse(chain.begin(), chain.end());

  if (chain.empty()) return Trajectory();

  std::vector<TrajectorySegment> segments;
  segments.reserve(chain.size());
  // Each stored segment starts at its parent's wrapped position. Shift the
  // constant coefficients so consecutive segments agree in unwrapped
  // coordinates; velocities are unaffected and the result is C^1.
  Eigen::VectorXd anchor =
      roadmap.node(*roadmap.node(chain.front()).parent).state.q();
  for (const int id : chain) {
    TrajectorySegment seg = *roadmap.node(id).segment;
    seg.coeffs.col(0) += anchor - seg.position(0.0);
    anchor = seg.position(seg.duration);
    segments.push_back(std::move(seg));
  }
  return Trajectory(std::move(segments));
}

VelocityBand velocity_band_diagnostic(const Roadmap& roadmap,
                                      const SinglePendulumModel& model,
                                      double T) {
  if (!(T > 0.0)) {
    throw std::domain_error("velocity_band_diagnostic: T must be > 0");
  }
  VelocityBand band;
  for (const Node& n : roadmap.nodes) {
    if (n.state.dof() != 1) {
      throw std::domain_error("velocity_band_diagnostic: 1-DOF roadmap required");
    }
    band.max_node_speed = std::max(band.max_node_speed, std::abs(n.state.qd()[0]));
  }
  const double K = 1.0 / model.inertia();
  band.band_bound = K * T * T * model.bounds().tau_max[0] / 6.0;
  band.swingup_threshold = model.swingup_speed_threshold();
  return band;
}

}  // namespace socplan
