#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "socplan/statespace.hpp"

namespace socplan {

// Per-joint torque limits, strictly positive and finite.
struct TorqueBounds {
  Eigen::VectorXd tau_max;

  TorqueBounds() = default;
  explicit TorqueBounds(Eigen::VectorXd limits);
  static TorqueBounds single(double tau);
};

// Manipulator dynamics  M(q) qdd + C(q, qd) qd + g(q) = u  with torque
// bounds. Positions enter only through sines/cosines, so all methods accept
// raw (possibly unwrapped) joint angles. inverse_dynamics is the exact
// algebraic inverse of forward_dynamics in the acceleration argument.
class DynamicsModel {
 public:
  virtual ~DynamicsModel() = default;

  virtual int dof() const = 0;
  virtual const TorqueBounds& bounds() const = 0;

  virtual Eigen::MatrixXd mass_matrix(const Eigen::VectorXd& q) const = 0;
  virtual Eigen::MatrixXd coriolis_matrix(const Eigen::VectorXd& q,
                                          const Eigen::VectorXd& qd) const = 0;
  virtual Eigen::VectorXd gravity_term(const Eigen::VectorXd& q) const = 0;

  // u = M(q) qdd + C(q, qd) qd + g(q)
  Eigen::VectorXd inverse_dynamics(const Eigen::VectorXd& q,
                                   const Eigen::VectorXd& qd,
                                   const Eigen::VectorXd& qdd) const;

  // qdd = M(q)^-1 (u - C(q, qd) qd - g(q))
  Eigen::VectorXd forward_dynamics(const Eigen::VectorXd& q,
                                   const Eigen::VectorXd& qd,
                                   const Eigen::VectorXd& u) const;
  Eigen::VectorXd forward_dynamics(const State& x,
                                   const Eigen::VectorXd& u) const;
};

// Uniform rod pivoted at one end: I = (1/3) m l^2, gravity torque
// (1/2) m g l sin(theta). theta = 0 hangs down, theta = +-pi is upright.
class SinglePendulumModel : public DynamicsModel {
 public:
  SinglePendulumModel(double length_m, double mass_kg, double tau_max,
                      double gravity = 9.81);

  int dof() const override { return 1; }
  const TorqueBounds& bounds() const override { return bounds_; }
  Eigen::MatrixXd mass_matrix(const Eigen::VectorXd& q) const override;
  Eigen::MatrixXd coriolis_matrix(const Eigen::VectorXd& q,
                                  const Eigen::VectorXd& qd) const override;
  Eigen::VectorXd gravity_term(const Eigen::VectorXd& q) const override;

  double length() const { return length_; }
  double mass() const { return mass_; }
  double gravity() const { return gravity_; }
  double inertia() const { return mass_ * length_ * length_ / 3.0; }
  // Peak static gravity torque (1/2) m g l, reached at theta = +-pi/2.
  double gravity_gain() const { return 0.5 * mass_ * gravity_ * length_; }
  // Speed at the bottom that carries the rod to upright with zero torque:
  // (1/2) I w^2 = m g l  =>  w = sqrt(6 g / l).
  double swingup_speed_threshold() const;

  // Scalar fast paths for the steering hot loop.
  double torque(double theta, double theta_ddot) const {
    return inertia() * theta_ddot + gravity_gain() * std::sin(theta);
  }

 private:
  double length_, mass_, gravity_;
  TorqueBounds bounds_;
};

// Planar two-link pendulum, both links of mass m and length l. The inertial
// and Coriolis terms are those of uniform-rod links; the gravity term is
//   g(th1, th2) = (m g l / 2) [ sin th1 + sin(th1 + th2), sin(th1 + th2) ],
// which is Lipschitz with constant K_g <= 2 m g l (the rod-link gravity
// vector exceeds that ceiling). Used by verification suites only.
class DoublePendulumModel : public DynamicsModel {
 public:
  DoublePendulumModel(double length_m, double mass_kg, double tau_max,
                      double gravity = 9.81);

  int dof() const override { return 2; }
  const TorqueBounds& bounds() const override { return bounds_; }
  Eigen::MatrixXd mass_matrix(const Eigen::VectorXd& q) const override;
  Eigen::MatrixXd coriolis_matrix(const Eigen::VectorXd& q,
                                  const Eigen::VectorXd& qd) const override;
  Eigen::VectorXd gravity_term(const Eigen::VectorXd& q) const override;

  double length() const { return length_; }
  double mass() const { return mass_; }
  double gravity() const { return gravity_; }
  // Analytic ceilings used as hard bounds in tests.
  double gravity_lipschitz_bound() const {
    return 2.0 * mass_ * gravity_ * length_;
  }
  double mass_matrix_norm_bound() const {
    return 3.0 * mass_ * length_ * length_;
  }

 private:
  double length_, mass_, gravity_;
  TorqueBounds bounds_;
};

struct AdmissibilityResult {
  bool admissible = false;
  // max over checked times and joints of |u_i(t)| / tau_max_i
  double max_ratio = 0.0;
};

struct IntegrationSample {
  double t = 0.0;
  State x;
};

// True iff inverse dynamics along traj stays within the torque bounds at
// n_checks uniformly spaced times per segment (endpoints included).
AdmissibilityResult is_admissible(const DynamicsModel& model,
                                  const Trajectory& traj, int n_checks);

// RK4 integration of x_dot = f(x, u(t)) with step <= dt_max over [0, T].
// Returns states at step boundaries (including t = 0 and t = T). Throws
// std::runtime_error if the state leaves the finite range.
std::vector<IntegrationSample> integrate(
    const DynamicsModel& model, const State& x0,
    const std::function<Eigen::VectorXd(double)>& control, double dt_max,
    double T);

// Sampled lower-bound estimate of a Lipschitz constant: max over random
// pairs in the box of ||f(a) - f(b)|| / ||a - b||. Deterministic given seed;
// the estimate is nondecreasing in n_samples for a fixed seed.
struct LipschitzEstimate {
  double K = 0.0;
  int sample_count = 0;
  double max_separation = 0.0;
};

struct DomainBox {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
};

LipschitzEstimate estimate_lipschitz(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& fn,
    const DomainBox& box, int n_samples, std::uint64_t seed);

// Spectral norm (largest singular value); test/verification helper.
double spectral_norm(const Eigen::MatrixXd& m);

}  // namespace socplan
