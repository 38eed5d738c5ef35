#pragma once

#include <Eigen/Core>
#include <vector>

namespace socplan {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Tolerance for position/velocity continuity at trajectory knots (rad, rad/s).
inline constexpr double kKnotTolerance = 1e-9;

// Wrap a revolute coordinate to (-pi, pi]. The boundary -pi maps to +pi.
// Throws std::domain_error on non-finite input.
double wrap_angle(double theta);

// Configuration + velocity point x = (q, qd) in the 2n-dimensional state
// space. Revolute coordinates are stored wrapped to (-pi, pi]; all components
// are finite. Immutable after construction.
class State {
 public:
  State() = default;
  State(Eigen::VectorXd q, Eigen::VectorXd qd);

  // 1-DOF convenience.
  static State single(double theta, double theta_dot);

  int dof() const { return static_cast<int>(q_.size()); }
  const Eigen::VectorXd& q() const { return q_; }
  const Eigen::VectorXd& qd() const { return qd_; }

 private:
  Eigen::VectorXd q_;
  Eigen::VectorXd qd_;
};

// Euclidean norm over (wrapped angle difference, weighted velocity
// difference) per joint. velocity_weight scales the velocity components;
// the default 1 weighs positions and velocities equally.
double state_distance(const State& a, const State& b,
                      double velocity_weight = 1.0);

// One polynomial piece of a trajectory: per-joint position polynomials of
// degree <= 3 in local time t in [0, duration],
//   q_j(t) = c0 + c1 t + c2 t^2 + c3 t^3,   coeffs row j = (c0, c1, c2, c3).
struct TrajectorySegment {
  double duration = 0.0;
  Eigen::MatrixXd coeffs;  // n_dof x 4

  TrajectorySegment() = default;
  TrajectorySegment(double duration_s, Eigen::MatrixXd coefficients);

  int dof() const { return static_cast<int>(coeffs.rows()); }

  Eigen::VectorXd position(double t) const;
  Eigen::VectorXd velocity(double t) const;
  Eigen::VectorXd acceleration(double t) const;

  // Scalar fast path for hot loops (no temporaries).
  void eval_joint(int joint, double t, double* q, double* qd,
                  double* qdd) const;

  State start_state() const;
  State end_state() const;
};

struct TrajectoryPoint {
  Eigen::VectorXd q;
  Eigen::VectorXd qd;
  Eigen::VectorXd qdd;
};

// Piecewise-polynomial C^1 path. Adjacent segments must match in position
// and velocity within kKnotTolerance; acceleration may jump. An empty
// trajectory (zero segments, zero duration) is allowed and represents a
// degenerate path such as "already at the goal".
class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(std::vector<TrajectorySegment> segments);

  bool empty() const { return segments_.empty(); }
  std::size_t size() const { return segments_.size(); }
  double duration() const { return knots_.empty() ? 0.0 : knots_.back(); }
  const std::vector<TrajectorySegment>& segments() const { return segments_; }
  const TrajectorySegment& segment(std::size_t i) const {
    return segments_[i];
  }

  // Position/velocity/acceleration at time t in [0, duration]. At interior
  // knots the left segment's value is used. Throws std::domain_error when t
  // is out of range or the trajectory is empty.
  TrajectoryPoint eval(double t) const;

 private:
  std::vector<TrajectorySegment> segments_;
  std::vector<double> knots_;  // cumulative end times
};

// Minimum state distance between x and (gamma, gamma_dot)(t_i) over a
// uniform grid of `resolution` >= 2 points spanning the whole trajectory.
// Upper-bounds the true continuous minimum. Diagnostics only; not used in
// the planner hot loop.
double dist_to_trajectory(const State& x, const Trajectory& traj,
                          int resolution, double velocity_weight = 1.0);

}  // namespace socplan
