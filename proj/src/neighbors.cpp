#include "socplan/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace socplan {

namespace {
constexpr int kGridCellsTheta = 64;
constexpr int kGridCellsOmega = 64;
}  // namespace

KnnIndex::KnnIndex(int dof, double omega_max, double velocity_weight)
    : dof_(dof), velocity_weight_(velocity_weight) {
  if (dof < 1 || !(omega_max > 0.0)) {
    throw std::domain_error("KnnIndex: dof >= 1 and omega_max > 0 required");
  }
  if (dof == 1) {
    use_grid_ = true;
    omega_cap_ = omega_max;
    n_theta_ = kGridCellsTheta;
    n_omega_ = kGridCellsOmega;
    w_theta_ = kTwoPi / n_theta_;
    w_omega_ = 2.0 * omega_cap_ / n_omega_;
    cells_.resize(static_cast<std::size_t>(n_theta_) * n_omega_);
  }
}

int KnnIndex::theta_cell(double theta) const {
  const int i = static_cast<int>(std::floor((theta + kPi) / w_theta_));
  return std::clamp(i, 0, n_theta_ - 1);
}

int KnnIndex::omega_cell(double omega) const {
  const int i = static_cast<int>(std::floor((omega + omega_cap_) / w_omega_));
  return std::clamp(i, 0, n_omega_ - 1);
}

void KnnIndex::insert(int id, const State& s) {
  if (id != static_cast<int>(states_.size())) {
    throw std::invalid_argument("KnnIndex: ids must be inserted in order");
  }
  if (s.dof() != dof_) {
    throw std::domain_error("KnnIndex: state dimension mismatch");
  }
  states_.push_back(s);
  if (use_grid_) {
    const double theta = s.q()[0];
    const double omega = s.qd()[0];
    cells_[static_cast<std::size_t>(theta_cell(theta)) * n_omega_ +
           omega_cell(omega)]
        .push_back(Entry{id, theta, omega});
  }
}

double KnnIndex::dist1(double theta, double omega, double q_theta,
                       double q_omega) const {
  // Same arithmetic as state_distance() for one joint, so grid and linear
  // paths produce bit-identical distances.
  const double dq = wrap_angle(theta - q_theta);
  const double dv = velocity_weight_ * (omega - q_omega);
  return std::sqrt(dq * dq + dv * dv);
}

std::vector<int> KnnIndex::nearest_linear(const State& query, int k) const {
  std::vector<std::pair<double, int>> cand;
  cand.reserve(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) {
    cand.emplace_back(state_distance(states_[i], query, velocity_weight_),
                      static_cast<int>(i));
  }
  std::sort(cand.begin(), cand.end());
  const int take = std::min<int>(k, static_cast<int>(cand.size()));
  std::vector<int> out(take);
  for (int i = 0; i < take; ++i) out[i] = cand[i].second;
  return out;
}

std::vector<int> KnnIndex::nearest_grid(const State& query, int k) const {
  const double q_theta = query.q()[0];
  const double q_omega = query.qd()[0];
  const int ci = theta_cell(q_theta);
  const int cj = omega_cell(q_omega);
  // Canonical wrapped theta offsets: every column exactly once. For an even
  // grid the offsets -n/2 and +n/2 are the same column, so the low end is
  // exclusive.
  const int di_hi = n_theta_ / 2;
  const int di_lo = (n_theta_ % 2 == 0) ? -di_hi + 1 : -di_hi;
  const int max_ring = std::max(di_hi, n_omega_);
  const double min_cell = std::min(w_theta_, w_omega_ * velocity_weight_);

  std::vector<std::pair<double, int>> cand;
  double kth_best = std::numeric_limits<double>::infinity();

  auto scan_cell = [&](int dtheta, int domega) {
    const int j = cj + domega;
    if (j < 0 || j >= n_omega_) return;
    int i = (ci + dtheta) % n_theta_;
    if (i < 0) i += n_theta_;
    for (const Entry& e :
         cells_[static_cast<std::size_t>(i) * n_omega_ + j]) {
      cand.emplace_back(dist1(e.theta, e.omega, q_theta, q_omega), e.id);
    }
  };

  for (int r = 0; r <= max_ring; ++r) {
    // Any cell in ring r or beyond is at least (r-1) * min_cell away; once
    // the kth best distance beats that, no farther ring can contribute.
    if (static_cast<int>(cand.size()) >= k && r > 0 &&
        static_cast<double>(r - 1) * min_cell > kth_best) {
      break;
    }
    if (r == 0) {
      scan_cell(0, 0);
    } else {
      // Full columns at theta offset +-r (when those columns exist).
      if (r <= di_hi) {
        for (int dj = -r; dj <= r; ++dj) scan_cell(r, dj);
      }
      if (-r >= di_lo) {
        for (int dj = -r; dj <= r; ++dj) scan_cell(-r, dj);
      }
      // Remaining ring cells at omega offset +-r, interior theta columns.
      for (int di = std::max(-(r - 1), di_lo); di <= std::min(r - 1, di_hi);
           ++di) {
        scan_cell(di, r);
        scan_cell(di, -r);
      }
    }
    if (static_cast<int>(cand.size()) >= k) {
      std::nth_element(cand.begin(), cand.begin() + (k - 1), cand.end());
      kth_best = cand[k - 1].first;
    }
  }

  std::sort(cand.begin(), cand.end());
  const int take = std::min<int>(k, static_cast<int>(cand.size()));
  std::vector<int> out(take);
  for (int i = 0; i < take; ++i) out[i] = cand[i].second;
  return out;
}

std::vector<int> KnnIndex::nearest(const State& query, int k) const {
  if (k < 1) throw std::domain_error("KnnIndex: k must be >= 1");
  if (query.dof() != dof_) {
    throw std::domain_error("KnnIndex: query dimension mismatch");
  }
  if (states_.empty()) return {};
  return use_grid_ ? nearest_grid(query, k) : nearest_linear(query, k);
}

}  // namespace socplan
