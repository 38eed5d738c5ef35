#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "socplan/rng.hpp"
#include "socplan/statespace.hpp"

using namespace socplan;

TEST_CASE("wrap_angle maps into (-pi, pi]") {
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(wrap_angle(3.0 * kPi) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(wrap_angle(-1.5 * kPi) == doctest::Approx(0.5 * kPi).epsilon(1e-15));
  CHECK(wrap_angle(kPi) == kPi);
  CHECK(wrap_angle(-kPi) == kPi);  // boundary folds onto +pi
  CHECK(wrap_angle(kTwoPi) == 0.0);
}

TEST_CASE("wrap_angle is idempotent and congruent mod 2pi") {
  Rng rng(42);
  for (int i = 0; i < 10000; ++i) {
    const double theta = rng.uniform(-50.0, 50.0);
    const double w = wrap_angle(theta);
    CHECK(w > -kPi);
    CHECK(w <= kPi);
    CHECK(wrap_angle(w) == w);
    CHECK(std::remainder(theta - w, kTwoPi) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("wrap_angle rejects non-finite input") {
  CHECK_THROWS_AS(wrap_angle(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(wrap_angle(INFINITY), std::domain_error);
}

TEST_CASE("state_distance basics") {
  const State a = State::single(0.0, 0.0);
  CHECK(state_distance(a, a) == 0.0);

  // 3 rad < pi is false only above pi; 3 < pi fails, so no wrapping occurs
  // and the distance is the plain Euclidean 5.
  const State b = State::single(3.0, 4.0);
  CHECK(state_distance(a, b) == doctest::Approx(5.0).epsilon(1e-12));

  // Wraps across the +-pi seam.
  const State c = State::single(kPi - 0.1, 0.0);
  const State d = State::single(-kPi + 0.1, 0.0);
  CHECK(state_distance(c, d) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("state_distance velocity weight") {
  const State a = State::single(0.0, 0.0);
  const State b = State::single(0.0, 2.0);
  CHECK(state_distance(a, b, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("state_distance dimension mismatch") {
  const State a = State::single(0.0, 0.0);
  const State b(Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(2));
  CHECK_THROWS_AS(state_distance(a, b), std::domain_error);
}

TEST_CASE("state_distance is symmetric and satisfies the triangle inequality") {
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const State a = State::single(rng.uniform(-10, 10), rng.uniform(-5, 5));
    const State b = State::single(rng.uniform(-10, 10), rng.uniform(-5, 5));
    const State c = State::single(rng.uniform(-10, 10), rng.uniform(-5, 5));
    CHECK(state_distance(a, b) == state_distance(b, a));
    CHECK(state_distance(a, c) <=
          state_distance(a, b) + state_distance(b, c) + 1e-12);
  }
}

TEST_CASE("State wraps coordinates and validates") {
  const State s = State::single(3.0 * kPi, 1.0);
  CHECK(s.q()[0] == doctest::Approx(kPi).epsilon(1e-15));
  CHECK_THROWS_AS(State::single(std::nan(""), 0.0), std::domain_error);
  CHECK_THROWS_AS(State::single(0.0, INFINITY), std::domain_error);
  CHECK_THROWS_AS(State(Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(1)),
                  std::domain_error);
}

namespace {

TrajectorySegment constant_segment(double q0, double duration) {
  Eigen::MatrixXd c(1, 4);
  c << q0, 0.0, 0.0, 0.0;
  return TrajectorySegment(duration, c);
}

}  // namespace

TEST_CASE("eval on a constant segment") {
  const Trajectory traj({constant_segment(0.7, 2.0)});
  for (const double t : {0.0, 0.3, 2.0}) {
    const TrajectoryPoint p = traj.eval(t);
    CHECK(p.q[0] == 0.7);
    CHECK(p.qd[0] == 0.0);
    CHECK(p.qdd[0] == 0.0);
  }
}

TEST_CASE("eval of q(t) = t^2") {
  Eigen::MatrixXd c(1, 4);
  c << 0.0, 0.0, 1.0, 0.0;
  const Trajectory traj({TrajectorySegment(1.0, c)});
  const TrajectoryPoint p = traj.eval(0.5);
  CHECK(p.q[0] == doctest::Approx(0.25));
  CHECK(p.qd[0] == doctest::Approx(1.0));
  CHECK(p.qdd[0] == doctest::Approx(2.0));
}

TEST_CASE("eval picks the correct stacked segment and local time") {
  // q(t) = t^2 on [0, 1], then continues C^1 as 1 + 2 t - t^2 on [0, 1].
  Eigen::MatrixXd c1(1, 4), c2(1, 4);
  c1 << 0.0, 0.0, 1.0, 0.0;
  c2 << 1.0, 2.0, -1.0, 0.0;
  const Trajectory traj({TrajectorySegment(1.0, c1), TrajectorySegment(1.0, c2)});
  CHECK(traj.duration() == doctest::Approx(2.0));

  const TrajectoryPoint p = traj.eval(1.5);  // local time 0.5 of segment 2
  CHECK(p.q[0] == doctest::Approx(1.0 + 1.0 - 0.25));
  CHECK(p.qd[0] == doctest::Approx(2.0 - 1.0));

  // At the knot the left segment's value is used; only the acceleration
  // distinguishes the two C^1-matched segments.
  const TrajectoryPoint knot = traj.eval(1.0);
  CHECK(knot.qdd[0] == doctest::Approx(2.0));
}

TEST_CASE("eval domain errors") {
  const Trajectory traj({constant_segment(0.0, 1.0)});
  CHECK_THROWS_AS(traj.eval(-0.1), std::domain_error);
  CHECK_THROWS_AS(traj.eval(1.1), std::domain_error);
  CHECK_THROWS_AS(Trajectory().eval(0.0), std::domain_error);
}

TEST_CASE("Trajectory rejects discontinuous stacks") {
  Eigen::MatrixXd c1(1, 4), c2(1, 4);
  c1 << 0.0, 0.0, 1.0, 0.0;   // ends at q=1, qd=2
  c2 << 1.5, 2.0, 0.0, 0.0;   // starts at q=1.5
  CHECK_THROWS_AS(
      Trajectory({TrajectorySegment(1.0, c1), TrajectorySegment(1.0, c2)}),
      std::invalid_argument);
  c2(0, 0) = 1.0;
  c2(0, 1) = 0.5;  // velocity mismatch
  CHECK_THROWS_AS(
      Trajectory({TrajectorySegment(1.0, c1), TrajectorySegment(1.0, c2)}),
      std::invalid_argument);
}

TEST_CASE("TrajectorySegment rejects bad durations") {
  Eigen::MatrixXd c(1, 4);
  c.setZero();
  CHECK_THROWS_AS(TrajectorySegment(0.0, c), std::domain_error);
  CHECK_THROWS_AS(TrajectorySegment(-1.0, c), std::domain_error);
}

TEST_CASE("dist_to_trajectory") {
  const Trajectory stationary({constant_segment(0.0, 1.0)});

  // x on the trajectory at a grid point.
  CHECK(dist_to_trajectory(State::single(0.0, 0.0), stationary, 8) == 0.0);

  // Start displaced by (0.3, 0.4) from a stationary trajectory.
  CHECK(dist_to_trajectory(State::single(0.3, 0.4), stationary, 8) ==
        doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(dist_to_trajectory(State::single(0, 0), stationary, 1),
                  std::domain_error);
  CHECK_THROWS_AS(dist_to_trajectory(State::single(0, 0), Trajectory(), 8),
                  std::domain_error);
}

TEST_CASE("dist_to_trajectory never increases under nested grid refinement") {
  // Moving trajectory: q(t) = t - 0.5 t^2 over [0, 2].
  Eigen::MatrixXd c(1, 4);
  c << 0.0, 1.0, -0.5, 0.0;
  const Trajectory traj({TrajectorySegment(2.0, c)});
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const State x = State::single(rng.uniform(-2, 2), rng.uniform(-2, 2));
    // Grids of size r and 2r-1 are nested, so the min over the finer grid
    // cannot be larger.
    for (const int r : {2, 5, 33}) {
      CHECK(dist_to_trajectory(x, traj, 2 * r - 1) <=
            dist_to_trajectory(x, traj, r) + 1e-15);
    }
  }
}
