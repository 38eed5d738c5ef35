#include "socplan/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

#include "socplan/rng.hpp"

namespace socplan {

TorqueBounds::TorqueBounds(Eigen::VectorXd limits) : tau_max(std::move(limits)) {
  if (tau_max.size() == 0 || !tau_max.allFinite() || (tau_max.array() <= 0.0).any()) {
    throw std::domain_error("TorqueBounds: limits must be positive and finite");
  }
}

TorqueBounds TorqueBounds::single(double tau) {
  Eigen::VectorXd v(1);
  v << tau;
  return TorqueBounds(v);
}

Eigen::VectorXd DynamicsModel::inverse_dynamics(const Eigen::VectorXd& q,
                                                const Eigen::VectorXd& qd,
                                                const Eigen::VectorXd& qdd) const {
  if (q.size() != dof() || qd.size() != dof() || qdd.size() != dof()) {
    throw std::domain_error("inverse_dynamics: dimension mismatch");
  }
  return mass_matrix(q) * qdd + coriolis_matrix(q, qd) * qd + gravity_term(q);
}

Eigen::VectorXd DynamicsModel::forward_dynamics(const Eigen::VectorXd& q,
                                                const Eigen::VectorXd& qd,
                                                const Eigen::VectorXd& u) const {
  if (q.size() != dof() || qd.size() != dof() || u.size() != dof()) {
    throw std::domain_error("forward_dynamics: dimension mismatch");
  }
  const Eigen::MatrixXd M = mass_matrix(q);
  const Eigen::VectorXd rhs = u - coriolis_matrix(q, qd) * qd - gravity_term(q);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  if (!lu.isInvertible()) {
    // Cannot occur for the pendulum models; checked anyway.
    throw std::runtime_error("forward_dynamics: singular mass matrix");
  }
  return lu.solve(rhs);
}

Eigen::VectorXd DynamicsModel::forward_dynamics(const State& x,
                                                const Eigen::VectorXd& u) const {
  return forward_dynamics(x.q(), x.qd(), u);
}

SinglePendulumModel::SinglePendulumModel(double length_m, double mass_kg,
                                         double tau_max, double gravity)
    : length_(length_m), mass_(mass_kg), gravity_(gravity),
      bounds_(TorqueBounds::single(tau_max)) {
  if (!(length_ > 0.0) || !(mass_ > 0.0)) {
    throw std::domain_error("SinglePendulumModel: l and m must be positive");
  }
}

Eigen::MatrixXd SinglePendulumModel::mass_matrix(const Eigen::VectorXd&) const {
  Eigen::MatrixXd M(1, 1);
  M(0, 0) = inertia();
  return M;
}

Eigen::MatrixXd SinglePendulumModel::coriolis_matrix(const Eigen::VectorXd&,
                                                     const Eigen::VectorXd&) const {
  return Eigen::MatrixXd::Zero(1, 1);
}

Eigen::VectorXd SinglePendulumModel::gravity_term(const Eigen::VectorXd& q) const {
  Eigen::VectorXd g(1);
  g << gravity_gain() * std::sin(q[0]);
  return g;
}

double SinglePendulumModel::swingup_speed_threshold() const {
  return std::sqrt(6.0 * gravity_ / length_);
}

DoublePendulumModel::DoublePendulumModel(double length_m, double mass_kg,
                                         double tau_max, double gravity)
    : length_(length_m), mass_(mass_kg), gravity_(gravity),
      bounds_(TorqueBounds((Eigen::VectorXd(2) << tau_max, tau_max).finished())) {
  if (!(length_ > 0.0) || !(mass_ > 0.0)) {
    throw std::domain_error("DoublePendulumModel: l and m must be positive");
  }
}

Eigen::MatrixXd DoublePendulumModel::mass_matrix(const Eigen::VectorXd& q) const {
  const double ml2 = mass_ * length_ * length_;
  const double c2 = std::cos(q[1]);
  Eigen::MatrixXd M(2, 2);
  M(0, 0) = ml2 * (5.0 / 3.0 + c2);
  M(0, 1) = M(1, 0) = ml2 * (1.0 / 3.0 + 0.5 * c2);
  M(1, 1) = ml2 / 3.0;
  return M;
}

Eigen::MatrixXd DoublePendulumModel::coriolis_matrix(const Eigen::VectorXd& q,
                                                     const Eigen::VectorXd& qd) const {
  const double h = -0.5 * mass_ * length_ * length_ * std::sin(q[1]);
  Eigen::MatrixXd C(2, 2);
  C(0, 0) = h * qd[1];
  C(0, 1) = h * (qd[0] + qd[1]);
  C(1, 0) = -h * qd[0];
  C(1, 1) = 0.0;
  return C;
}

Eigen::VectorXd DoublePendulumModel::gravity_term(const Eigen::VectorXd& q) const {
  const double k = 0.5 * mass_ * gravity_ * length_;
  const double s1 = std::sin(q[0]);
  const double s12 = std::sin(q[0] + q[1]);
  Eigen::VectorXd g(2);
  g << k * (s1 + s12), k * s12;
  return g;
}

AdmissibilityResult is_admissible(const DynamicsModel& model,
                                  const Trajectory& traj, int n_checks) {
  if (n_checks < 2) {
    throw std::domain_error("is_admissible: n_checks must be >= 2");
  }
  const Eigen::VectorXd& tau = model.bounds().tau_max;
  double max_ratio = 0.0;
  const int n = model.dof();
  Eigen::VectorXd q(n), qd(n), qdd(n);
  for (const TrajectorySegment& seg : traj.segments()) {
    for (int i = 0; i < n_checks; ++i) {
      const double t = seg.duration * static_cast<double>(i) /
                       static_cast<double>(n_checks - 1);
      for (int j = 0; j < n; ++j) {
        seg.eval_joint(j, t, &q[j], &qd[j], &qdd[j]);
      }
      const Eigen::VectorXd u = model.inverse_dynamics(q, qd, qdd);
      for (int j = 0; j < n; ++j) {
        max_ratio = std::max(max_ratio, std::abs(u[j]) / tau[j]);
      }
    }
  }
  return AdmissibilityResult{max_ratio <= 1.0, max_ratio};
}

std::vector<IntegrationSample> integrate(
    const DynamicsModel& model, const State& x0,
    const std::function<Eigen::VectorXd(double)>& control, double dt_max,
    double T) {
  if (!(T > 0.0) || !(dt_max > 0.0)) {
    throw std::domain_error("integrate: T and dt_max must be positive");
  }
  const int n_steps = static_cast<int>(std::ceil(T / dt_max));
  const double dt = T / n_steps;
  const int n = model.dof();

  Eigen::VectorXd q = x0.q(), qd = x0.qd();
  std::vector<IntegrationSample> samples;
  samples.reserve(n_steps + 1);
  samples.push_back({0.0, x0});

  Eigen::VectorXd k1q(n), k1v(n), k2q(n), k2v(n), k3q(n), k3v(n), k4q(n), k4v(n);
  for (int step = 0; step < n_steps; ++step) {
    const double t = dt * step;
    k1q = qd;
    k1v = model.forward_dynamics(q, qd, control(t));
    k2q = qd + 0.5 * dt * k1v;
    k2v = model.forward_dynamics(q + 0.5 * dt * k1q, k2q, control(t + 0.5 * dt));
    k3q = qd + 0.5 * dt * k2v;
    k3v = model.forward_dynamics(q + 0.5 * dt * k2q, k3q, control(t + 0.5 * dt));
    k4q = qd + dt * k3v;
    k4v = model.forward_dynamics(q + dt * k3q, k4q, control(t + dt));
    q += dt / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
    qd += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    if (!q.allFinite() || !qd.allFinite()) {
      throw std::runtime_error("integrate: non-finite state encountered");
    }
    samples.push_back({dt * (step + 1), State(q, qd)});
  }
  return samples;
}

LipschitzEstimate estimate_lipschitz(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& fn,
    const DomainBox& box, int n_samples, std::uint64_t seed) {
  const Eigen::Index dim = box.lo.size();
  if (dim == 0 || box.hi.size() != dim) {
    throw std::domain_error("estimate_lipschitz: malformed box");
  }
  if (!box.lo.allFinite() || !box.hi.allFinite() ||
      ((box.hi - box.lo).array() <= 0.0).any()) {
    throw std::domain_error("estimate_lipschitz: degenerate box");
  }
  if (n_samples < 2) {
    throw std::domain_error("estimate_lipschitz: n_samples must be >= 2");
  }

  Rng rng(seed);
  const double diameter = (box.hi - box.lo).norm();
  LipschitzEstimate est;
  est.sample_count = n_samples;

  Eigen::VectorXd a(dim), b(dim), dir(dim);
  for (int i = 0; i < n_samples; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      a[j] = rng.uniform(box.lo[j], box.hi[j]);
    }
    if (i % 2 == 0) {
      for (Eigen::Index j = 0; j < dim; ++j) {
        b[j] = rng.uniform(box.lo[j], box.hi[j]);
      }
    } else {
      // Local pair: log-uniform separation picks up steep small-scale ratios.
      const double r =
          std::exp(rng.uniform(std::log(1e-6 * diameter), std::log(diameter)));
      for (Eigen::Index j = 0; j < dim; ++j) dir[j] = rng.normal();
      const double norm = dir.norm();
      if (norm == 0.0) continue;
      b = a + (r / norm) * dir;
      for (Eigen::Index j = 0; j < dim; ++j) {
        b[j] = std::clamp(b[j], box.lo[j], box.hi[j]);
      }
    }
    const double sep = (a - b).norm();
    if (sep <= 0.0) continue;
    const double ratio = (fn(a) - fn(b)).norm() / sep;
    est.K = std::max(est.K, ratio);
    est.max_separation = std::max(est.max_separation, sep);
  }
  return est;
}

double spectral_norm(const Eigen::MatrixXd& m) {
  return m.jacobiSvd().singularValues()(0);
}

}  // namespace socplan
