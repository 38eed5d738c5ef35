#pragma once

#include <optional>
#include <string_view>

#include "socplan/statespace.hpp"

namespace socplan {

// Degenerate-pair rejection thresholds shared by the SOC1 and quadratic
// interpolators. Pairs whose implied duration is nonpositive, unbounded or
// above the cap are reported as steering failures.
inline constexpr double kMinAvgSpeed = 1e-3;      // rad/s
inline constexpr double kMinDisplacement = 1e-6;  // rad
inline constexpr double kMaxSegmentDuration = 1.0;  // s  // s

// State-to-state trajectory generator. A disengaged result means the pair is
// not connectable by this interpolator (never an error). Implementations are
// immutable and callable concurrently.
class Interpolator {
 public:
  virtual ~Interpolator() = default;
  virtual std::string_view name() const = 0;
  virtual std::optional<Trajectory> interpolate(const State& x,
                                                const State& xp) const = 0;
};

// Cubic Hermite segment of fixed duration T matching position and velocity
// at both ends:
//   B(t) = q + qd t + (3 dq - T (2 qd + qd')) / T^2 t^2
//            + (-2 dq + T (qd + qd')) / T^3 t^3,
// with dq the wrapped per-joint displacement. Never fails; admissibility is
// checked separately.
class BezierInterpolator : public Interpolator {
 public:
  explicit BezierInterpolator(double duration_s = 1.0);

  std::string_view name() const override { return "bezier"; }
  double duration() const { return duration_; }
  std::optional<Trajectory> interpolate(const State& x,
                                        const State& xp) const override;

 private:
  double duration_;
};

// Constant-acceleration 1-DOF segment
//   C(t) = q + qd t + (t^2 / 2) (dqd / dt_C),   dt_C = dq / qd_avg,
// qd_avg = (qd + qd') / 2. Matches position and velocity at both ends. The
// displacement dq is seam-aware: both the wrapped difference and its 2 pi
// complement are tried, preferring the one whose sign agrees with qd_avg;
// the pair fails when neither yields a duration in (0, kMaxSegmentDuration].
class Soc1Interpolator : public Interpolator {
 public:
  std::string_view name() const override { return "soc1"; }
  std::optional<Trajectory> interpolate(const State& x,
                                        const State& xp) const override;
};

// Constant-acceleration n-DOF segment with duration dt = ||dq|| / ||qd||:
//   G(t) = (dqd / (2 dt)) t^2 + (dq / dt - dqd / 2) t + q.
// Matches position at both ends and has acceleration exactly equal to the
// discrete acceleration dqd / dt; endpoint velocities are dq/dt -+ dqd/2,
// not qd and qd' in general. Serves as the zero-residual reference in SOC
// verification; not used by the planner.
class QuadInterpolator : public Interpolator {
 public:
  std::string_view name() const override { return "quad"; }
  std::optional<Trajectory> interpolate(const State& x,
                                        const State& xp) const override;
};

// Wrapped per-joint configuration displacement xp.q - x.q.
Eigen::VectorXd wrapped_displacement(const State& x, const State& xp);

}  // namespace socplan
