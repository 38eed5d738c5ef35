#include "socplan/statespace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace socplan {

double wrap_angle(double theta) {
  if (!std::isfinite(theta)) {
    throw std::domain_error("wrap_angle: non-finite input");
  }
  // remainder() lands in [-pi, pi]; fold the open end onto +pi.
  double w = std::remainder(theta, kTwoPi);
  if (w <= -kPi) w += kTwoPi;
  return w;
}

State::State(Eigen::VectorXd q, Eigen::VectorXd qd)
    : q_(std::move(q)), qd_(std::move(qd)) {
  if (q_.size() == 0 || q_.size() != qd_.size()) {
    throw std::domain_error("State: q and qd must have equal nonzero length");
  }
  for (Eigen::Index i = 0; i < q_.size(); ++i) {
    if (!std::isfinite(qd_[i])) {
      throw std::domain_error("State: non-finite velocity component");
    }
    q_[i] = wrap_angle(q_[i]);  // also rejects non-finite positions
  }
}

State State::single(double theta, double theta_dot) {
  Eigen::VectorXd q(1), qd(1);
  q << theta;
  qd << theta_dot;
  return State(std::move(q), std::move(qd));
}

double state_distance(const State& a, const State& b, double velocity_weight) {
  if (a.dof() != b.dof()) {
    throw std::domain_error("state_distance: dimension mismatch");
  }
  double acc = 0.0;
  for (int j = 0; j < a.dof(); ++j) {
    const double dq = wrap_angle(a.q()[j] - b.q()[j]);
    acc += dq * dq;
  }
  for (int j = 0; j < a.dof(); ++j) {
    const double dv = velocity_weight * (a.qd()[j] - b.qd()[j]);
    acc += dv * dv;
  }
  return std::sqrt(acc);
}

TrajectorySegment::TrajectorySegment(double duration_s,
                                     Eigen::MatrixXd coefficients)
    : duration(duration_s), coeffs(std::move(coefficients)) {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw std::domain_error("TrajectorySegment: duration must be positive");
  }
  if (coeffs.rows() < 1 || coeffs.cols() != 4 || !coeffs.allFinite()) {
    throw std::domain_error("TrajectorySegment: coeffs must be n_dof x 4, finite");
  }
}

Eigen::VectorXd TrajectorySegment::position(double t) const {
  const Eigen::Index n = coeffs.rows();
  Eigen::VectorXd out(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out[j] = ((coeffs(j, 3) * t + coeffs(j, 2)) * t + coeffs(j, 1)) * t +
             coeffs(j, 0);
  }
  return out;
}

Eigen::VectorXd TrajectorySegment::velocity(double t) const {
  const Eigen::Index n = coeffs.rows();
  Eigen::VectorXd out(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out[j] = (3.0 * coeffs(j, 3) * t + 2.0 * coeffs(j, 2)) * t + coeffs(j, 1);
  }
  return out;
}

Eigen::VectorXd TrajectorySegment::acceleration(double t) const {
  const Eigen::Index n = coeffs.rows();
  Eigen::VectorXd out(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out[j] = 6.0 * coeffs(j, 3) * t + 2.0 * coeffs(j, 2);
  }
  return out;
}

void TrajectorySegment::eval_joint(int joint, double t, double* q, double* qd,
                                   double* qdd) const {
  const double c0 = coeffs(joint, 0);
  const double c1 = coeffs(joint, 1);
  const double c2 = coeffs(joint, 2);
  const double c3 = coeffs(joint, 3);
  if (q) *q = ((c3 * t + c2) * t + c1) * t + c0;
  if (qd) *qd = (3.0 * c3 * t + 2.0 * c2) * t + c1;
  if (qdd) *qdd = 6.0 * c3 * t + 2.0 * c2;
}

State TrajectorySegment::start_state() const {
  return State(position(0.0), velocity(0.0));
}

State TrajectorySegment::end_state() const {
  return State(position(duration), velocity(duration));
}

Trajectory::Trajectory(std::vector<TrajectorySegment> segments)
    : segments_(std::move(segments)) {
  knots_.reserve(segments_.size());
  double total = 0.0;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const TrajectorySegment& seg = segments_[i];
    if (seg.dof() != segments_[0].dof()) {
      throw std::invalid_argument("Trajectory: mixed segment dimensions");
    }
    if (i > 0) {
      const TrajectorySegment& prev = segments_[i - 1];
      const Eigen::VectorXd dq =
          prev.position(prev.duration) - seg.position(0.0);
      const Eigen::VectorXd dv =
          prev.velocity(prev.duration) - seg.velocity(0.0);
      if (dq.lpNorm<Eigen::Infinity>() > kKnotTolerance ||
          dv.lpNorm<Eigen::Infinity>() > kKnotTolerance) {
        throw std::invalid_argument(
            "Trajectory: C0/C1 mismatch at knot " + std::to_string(i));
      }
    }
    total += seg.duration;
    knots_.push_back(total);
  }
}

TrajectoryPoint Trajectory::eval(double t) const {
  if (empty()) {
    throw std::domain_error("Trajectory::eval: empty trajectory");
  }
  if (!(t >= 0.0) || t > duration()) {
    throw std::domain_error("Trajectory::eval: t out of range");
  }
  // First segment whose end time is >= t; an exact knot hit selects the
  // left segment.
  std::size_t i = 0;
  while (i + 1 < knots_.size() && t > knots_[i]) ++i;
  const double local = t - (i == 0 ? 0.0 : knots_[i - 1]);
  const TrajectorySegment& seg = segments_[i];
  return TrajectoryPoint{seg.position(local), seg.velocity(local),
                         seg.acceleration(local)};
}

double dist_to_trajectory(const State& x, const Trajectory& traj,
                          int resolution, double velocity_weight) {
  if (traj.empty()) {
    throw std::domain_error("dist_to_trajectory: empty trajectory");
  }
  if (resolution < 2) {
    throw std::domain_error("dist_to_trajectory: resolution must be >= 2");
  }
  const double total = traj.duration();
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < resolution; ++i) {
    const double t = total * static_cast<double>(i) /
                     static_cast<double>(resolution - 1);
    const TrajectoryPoint p = traj.eval(t);
    best = std::min(best, state_distance(State(p.q, p.qd), x, velocity_weight));
  }
  return best;
}

}  // namespace socplan
