#pragma once

#include <vector>

#include "socplan/statespace.hpp"

namespace socplan {

// Incremental exact k-nearest-neighbor index under the wrapped state metric.
// For 1-DOF states a uniform grid over (theta, theta_dot) with ring search
// keeps queries fast on roadmaps of tens of thousands of nodes; higher
// dimensions fall back to a linear scan. Results are identical to brute
// force: ascending (distance, id) with ties broken by lower id.
class KnnIndex {
 public:
  // omega_max bounds |theta_dot| of inserted states (1-DOF grid sizing).
  KnnIndex(int dof, double omega_max, double velocity_weight = 1.0);

  void insert(int id, const State& s);
  int size() const { return static_cast<int>(states_.size()); }

  // Up to k nearest ids, ascending by (distance, id).
  std::vector<int> nearest(const State& query, int k) const;

 private:
  struct Entry {
    int id;
    double theta;
    double omega;
  };

  double dist1(double theta, double omega, double q_theta,
               double q_omega) const;
  std::vector<int> nearest_linear(const State& query, int k) const;
  std::vector<int> nearest_grid(const State& query, int k) const;

  int dof_;
  double velocity_weight_;
  std::vector<State> states_;  // by insertion order; ids must be 0,1,2,...

  // 1-DOF grid
  bool use_grid_ = false;
  double omega_cap_ = 0.0;
  int n_theta_ = 0, n_omega_ = 0;
  double w_theta_ = 0.0, w_omega_ = 0.0;
  std::vector<std::vector<Entry>> cells_;

  int theta_cell(double theta) const;
  int omega_cell(double omega) const;
};

}  // namespace socplan
