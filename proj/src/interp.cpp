#include "socplan/interp.hpp"

#include <cmath>
#include <stdexcept>

namespace socplan {

Eigen::VectorXd wrapped_displacement(const State& x, const State& xp) {
  if (x.dof() != xp.dof()) {
    throw std::domain_error("wrapped_displacement: dimension mismatch");
  }
  Eigen::VectorXd dq(x.dof());
  for (int j = 0; j < x.dof(); ++j) {
    dq[j] = wrap_angle(xp.q()[j] - x.q()[j]);
  }
  return dq;
}

BezierInterpolator::BezierInterpolator(double duration_s)
    : duration_(duration_s) {
  if (!(duration_ > 0.0) || !std::isfinite(duration_)) {
    throw std::domain_error("BezierInterpolator: duration must be positive");
  }
}

std::optional<Trajectory> BezierInterpolator::interpolate(
    const State& x, const State& xp) const {
  const double T = duration_;
  const Eigen::VectorXd dq = wrapped_displacement(x, xp);
  const int n = x.dof();
  Eigen::MatrixXd c(n, 4);
  for (int j = 0; j < n; ++j) {
    const double qd = x.qd()[j];
    const double qdp = xp.qd()[j];
    c(j, 0) = x.q()[j];
    c(j, 1) = qd;
    c(j, 2) = (3.0 * dq[j] - T * (2.0 * qd + qdp)) / (T * T);
    c(j, 3) = (-2.0 * dq[j] + T * (qd + qdp)) / (T * T * T);
  }
  return Trajectory({TrajectorySegment(T, std::move(c))});
}

std::optional<Trajectory> Soc1Interpolator::interpolate(const State& x,
                                                        const State& xp) const {
  if (x.dof() != 1 || xp.dof() != 1) {
    throw std::domain_error("Soc1Interpolator: 1-DOF states required");
  }
  const double qd = x.qd()[0];
  const double qdp = xp.qd()[0];
  const double qd_avg = 0.5 * (qd + qdp);
  if (std::abs(qd_avg) < kMinAvgSpeed) return std::nullopt;

  const double dq0 = wrap_angle(xp.q()[0] - x.q()[0]);
  // The displacement is defined modulo 2 pi; the complement reaches the same
  // configuration the other way around the joint. Their signs differ, so at
  // most one candidate moves with qd_avg and yields a positive duration.
  double complement;
  if (dq0 > 0.0) complement = dq0 - kTwoPi;
  else if (dq0 < 0.0) complement = dq0 + kTwoPi;
  else complement = (qd_avg > 0.0 ? kTwoPi : -kTwoPi);
  const double candidates[2] = {dq0, complement};
  for (const double dq : candidates) {
    const double dt = dq / qd_avg;
    if (dt > 0.0 && dt <= kMaxSegmentDuration) {
      Eigen::MatrixXd c(1, 4);
      c(0, 0) = x.q()[0];
      c(0, 1) = qd;
      c(0, 2) = 0.5 * (qdp - qd) / dt;
      c(0, 3) = 0.0;
      return Trajectory({TrajectorySegment(dt, std::move(c))});
    }
  }
  return std::nullopt;
}

std::optional<Trajectory> QuadInterpolator::interpolate(const State& x,
                                                        const State& xp) const {
  const Eigen::VectorXd dq = wrapped_displacement(x, xp);
  const double speed = x.qd().norm();
  const double dist = dq.norm();
  if (speed < kMinAvgSpeed || dist < kMinDisplacement) return std::nullopt;
  const double dt = dist / speed;
  if (dt > kMaxSegmentDuration) return std::nullopt;

  const int n = x.dof();
  Eigen::MatrixXd c(n, 4);
  for (int j = 0; j < n; ++j) {
    const double dqd = xp.qd()[j] - x.qd()[j];
    c(j, 0) = x.q()[j];
    c(j, 1) = dq[j] / dt - 0.5 * dqd;
    c(j, 2) = 0.5 * dqd / dt;
    c(j, 3) = 0.0;
  }
  return Trajectory({TrajectorySegment(dt, std::move(c))});
}

}  // namespace socplan
