#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "socplan/interp.hpp"
#include "socplan/statespace.hpp"

namespace socplan {

// Sampling region for SOC verification: per-joint angle range plus a speed
// band applied to every joint with random sign. The band must stay away from
// zero speed, where the discrete acceleration dqd / (||dq|| / ||qd||) is
// undefined.
struct SocRegion {
  Eigen::VectorXd q_lo;
  Eigen::VectorXd q_hi;
  double speed_lo = 0.5;
  double speed_hi = 20.0;

  static SocRegion single_joint(double speed_lo, double speed_hi);
};

struct SocOptions {
  int grid_points = 65;            // trajectory sample points per pair
  double accel_max = 0.0;          // pair discrete-acceleration range; 0 => 2 * speed_hi
  double slope_tol = 0.1;          // allowed growth exponent across scales
  double residual_tolerance = 1.0; // ceiling on the smallest-scale residual
};

struct SocScaleStats {
  double scale = 0.0;
  int pairs_ok = 0;
  int pairs_failed = 0;
  double eta_ratio = 0.0;   // max_t ||(g, g_dot)(t) - x|| / ||dx||
  double nu_ratio = 0.0;    // max_t ||g_ddot(t) - dqd/dt_disc|| / ||dx||
  double residual = 0.0;    // max_t ||g_ddot(t) - dqd/dt_disc||, unnormalized
};

// Result of the numeric check of the local-boundedness and
// discrete-acceleration-convergence assumptions. eta_hat and nu_hat are the
// largest observed ratios; "pass" requires both ratios to stay bounded as the
// pair separation shrinks (growth exponent <= slope_tol via a Theil-Sen fit
// against log(1/scale)) and the unnormalized acceleration residual to vanish
// linearly in the separation.
struct SOCReport {
  std::string interpolator;
  double eta_hat = 0.0;
  double nu_hat = 0.0;
  double residual_floor = 0.0;
  bool pass = false;
  bool conclusive = true;
  int samples = 0;  // successful pair evaluations over all scales
  std::vector<double> scales;
  std::uint64_t seed = 0;
  double eta_slope = 0.0;
  double nu_slope = 0.0;
  double residual_slope = 0.0;
  std::vector<SocScaleStats> per_scale;

  std::string to_text() const;
  // Machine-readable "key = value" lines.
  std::string to_kv() const;
};

// Samples pairs_per_scale (x, x') pairs at each separation in `scales`
// (strictly decreasing). Pairs model downstream displacements: x' is the
// state reached from x after a short time under a bounded random constant
// acceleration, rescaled so that ||x' - x|| equals the scale exactly. Pair
// index i uses the same base state and displacement direction at every scale
// (seeded sub-streams), so ratios are directly comparable across scales.
SOCReport verify_soc(const Interpolator& interp, const SocRegion& region,
                     const std::vector<double>& scales, int pairs_per_scale,
                     std::uint64_t seed, const SocOptions& options = {});

// Default scale ladder {0.1, 0.05, 0.02, 0.01, 0.005}.
std::vector<double> default_soc_scales();

// Median-of-pairwise-slopes estimator, robust to outliers in the per-scale
// maxima. xs must be strictly increasing.
double theil_sen_slope(const std::vector<double>& xs,
                       const std::vector<double>& ys);

}  // namespace socplan
