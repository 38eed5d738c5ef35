#include "socplan/soc_verifier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "socplan/rng.hpp"

namespace socplan {

namespace {

constexpr double kZeroRatio = 1e-12;     // ratios below this count as exactly zero
constexpr double kZeroResidual = 1e-9;   // residual floor for by-construction-exact interpolators

struct PairSample {
  State x;
  Eigen::VectorXd dq_dir;   // unit displacement direction, configuration part
  Eigen::VectorXd dqd_dir;  // unit displacement direction, velocity part
};

PairSample draw_pair(const SocRegion& region, double accel_max, Rng& rng) {
  const int n = static_cast<int>(region.q_lo.size());
  Eigen::VectorXd q(n), qd(n), a(n);
  for (int j = 0; j < n; ++j) {
    q[j] = rng.uniform(region.q_lo[j], region.q_hi[j]);
    const double sign = rng.uniform01() < 0.5 ? -1.0 : 1.0;
    qd[j] = sign * rng.uniform(region.speed_lo, region.speed_hi);
    a[j] = rng.uniform(-accel_max, accel_max);
  }
  // Downstream displacement after time h under constant acceleration a:
  // (dq, dqd) = h (qd, a) + O(h^2). Normalizing (qd, a) gives a unit state
  // direction whose discrete acceleration dqd / (||dq|| / ||qd||) equals a.
  const double norm = std::sqrt(qd.squaredNorm() + a.squaredNorm());
  return PairSample{State(q, qd), qd / norm, a / norm};
}

}  // namespace

SocRegion SocRegion::single_joint(double speed_lo, double speed_hi) {
  SocRegion r;
  r.q_lo = Eigen::VectorXd::Constant(1, -kPi);
  r.q_hi = Eigen::VectorXd::Constant(1, kPi);
  r.speed_lo = speed_lo;
  r.speed_hi = speed_hi;
  return r;
}

std::vector<double> default_soc_scales() {
  return {0.1, 0.05, 0.02, 0.01, 0.005};
}

double theil_sen_slope(const std::vector<double>& xs,
                       const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::domain_error("theil_sen_slope: need >= 2 points");
  }
  std::vector<double> slopes;
  slopes.reserve(xs.size() * (xs.size() - 1) / 2);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      slopes.push_back((ys[j] - ys[i]) / (xs[j] - xs[i]));
    }
  }
  std::sort(slopes.begin(), slopes.end());
  const std::size_t m = slopes.size();
  return (m % 2 == 1) ? slopes[m / 2]
                      : 0.5 * (slopes[m / 2 - 1] + slopes[m / 2]);
}

SOCReport verify_soc(const Interpolator& interp, const SocRegion& region,
                     const std::vector<double>& scales, int pairs_per_scale,
                     std::uint64_t seed, const SocOptions& options) {
  const int n = static_cast<int>(region.q_lo.size());
  if (n == 0 || region.q_hi.size() != n ||
      ((region.q_hi - region.q_lo).array() <= 0.0).any()) {
    throw std::domain_error("verify_soc: malformed region");
  }
  if (!(region.speed_lo > 0.0) || !(region.speed_hi > region.speed_lo)) {
    throw std::domain_error("verify_soc: speed band must satisfy 0 < lo < hi");
  }
  if (scales.size() < 2 || pairs_per_scale < 10) {
    throw std::domain_error("verify_soc: need >= 2 scales and >= 10 pairs");
  }
  for (std::size_t k = 0; k + 1 < scales.size(); ++k) {
    if (!(scales[k] > scales[k + 1]) || !(scales.back() > 0.0)) {
      throw std::domain_error("verify_soc: scales must decrease toward 0");
    }
  }
  const double accel_max =
      options.accel_max > 0.0 ? options.accel_max : 2.0 * region.speed_hi;
  const int grid = std::max(options.grid_points, 3);

  SOCReport report;
  report.interpolator = std::string(interp.name());
  report.scales = scales;
  report.seed = seed;
  report.per_scale.resize(scales.size());

  for (int i = 0; i < pairs_per_scale; ++i) {
    Rng rng(Rng::mix(seed, static_cast<std::uint64_t>(i)));
    const PairSample pair = draw_pair(region, accel_max, rng);

    for (std::size_t k = 0; k < scales.size(); ++k) {
      const double s = scales[k];
      SocScaleStats& stats = report.per_scale[k];
      stats.scale = s;

      const State xp(pair.x.q() + s * pair.dq_dir,
                     pair.x.qd() + s * pair.dqd_dir);
      const auto traj = interp.interpolate(pair.x, xp);
      if (!traj) {
        ++stats.pairs_failed;
        continue;
      }

      // Discrete acceleration of the pair, dqd / dt_disc with
      // dt_disc = ||dq|| / ||qd||.
      const Eigen::VectorXd dq = wrapped_displacement(pair.x, xp);
      const Eigen::VectorXd dqd = xp.qd() - pair.x.qd();
      const double dt_disc = dq.norm() / pair.x.qd().norm();
      const Eigen::VectorXd disc_acc = dqd / dt_disc;

      double eta_ratio = 0.0, residual = 0.0;
      const double total = traj->duration();
      for (int gi = 0; gi < grid; ++gi) {
        const double t = total * gi / (grid - 1);
        const TrajectoryPoint p = traj->eval(t);
        eta_ratio = std::max(
            eta_ratio, state_distance(State(p.q, p.qd), pair.x) / s);
        residual = std::max(residual, (p.qdd - disc_acc).norm());
      }
      ++stats.pairs_ok;
      stats.eta_ratio = std::max(stats.eta_ratio, eta_ratio);
      stats.residual = std::max(stats.residual, residual);
      stats.nu_ratio = std::max(stats.nu_ratio, residual / s);
    }
  }

  std::vector<double> log_inv_scale, log_eta, log_nu, log_res;
  bool all_scales_ok = true;
  for (const SocScaleStats& st : report.per_scale) {
    report.samples += st.pairs_ok;
    if (st.pairs_ok == 0) {
      all_scales_ok = false;
      continue;
    }
    report.eta_hat = std::max(report.eta_hat, st.eta_ratio);
    report.nu_hat = std::max(report.nu_hat, st.nu_ratio);
    log_inv_scale.push_back(std::log(1.0 / st.scale));
    log_eta.push_back(std::log(std::max(st.eta_ratio, kZeroRatio)));
    log_nu.push_back(std::log(std::max(st.nu_ratio, kZeroRatio)));
    log_res.push_back(std::log(std::max(st.residual, kZeroRatio)));
  }
  report.residual_floor = report.per_scale.back().residual;
  report.conclusive = all_scales_ok;

  if (!all_scales_ok || log_inv_scale.size() < 2) {
    report.conclusive = false;
    report.pass = false;
    return report;
  }

  // Growth exponents of the per-scale maxima against log(1/scale): a bounded
  // constant shows up as slope ~ 0; a 1/scale blow-up as slope ~ +1.
  report.eta_slope = report.eta_hat <= kZeroRatio
                         ? 0.0
                         : theil_sen_slope(log_inv_scale, log_eta);
  report.nu_slope = report.nu_hat <= kZeroRatio
                        ? 0.0
                        : theil_sen_slope(log_inv_scale, log_nu);
  report.residual_slope = theil_sen_slope(log_inv_scale, log_res);

  const bool eta_bounded = report.eta_slope <= options.slope_tol;
  const bool nu_bounded = report.nu_slope <= options.slope_tol;
  // Residual must vanish linearly in the scale (decay exponent ~ -1 against
  // log(1/scale)), or already be zero by construction.
  const bool residual_vanishes =
      report.residual_floor <= kZeroResidual ||
      (report.residual_slope <= -(1.0 - options.slope_tol) &&
       report.residual_floor <= options.residual_tolerance);
  report.pass = eta_bounded && nu_bounded && residual_vanishes;
  return report;
}

std::string SOCReport::to_text() const {
  std::ostringstream os;
  os.setf(std::ios::fmtflags(0), std::ios::floatfield);
  os.precision(6);
  os << "SOC verification: interpolator '" << interpolator << "'\n"
     << "  verdict:        " << (pass ? "PASS" : "FAIL")
     << (conclusive ? "" : " (inconclusive: no connectable pairs at some scale)")
     << "\n"
     << "  eta_hat:        " << eta_hat << "  (growth slope " << eta_slope
     << ")\n"
     << "  nu_hat:         " << nu_hat << "  (growth slope " << nu_slope
     << ")\n"
     << "  residual_floor: " << residual_floor << "  (decay slope "
     << residual_slope << ")\n"
     << "  samples:        " << samples << ", seed " << seed << "\n"
     << "  scale     pairs_ok  eta_ratio     nu_ratio      residual\n";
  for (const SocScaleStats& st : per_scale) {
    os << "  " << st.scale << "\t" << st.pairs_ok << "\t" << st.eta_ratio
       << "\t" << st.nu_ratio << "\t" << st.residual << "\n";
  }
  return os.str();
}

std::string SOCReport::to_kv() const {
  std::ostringstream os;
  os.precision(17);
  os << "interpolator = " << interpolator << "\n"
     << "eta_hat = " << eta_hat << "\n"
     << "nu_hat = " << nu_hat << "\n"
     << "residual_floor = " << residual_floor << "\n"
     << "pass = " << (pass ? "true" : "false") << "\n"
     << "conclusive = " << (conclusive ? "true" : "false") << "\n"
     << "samples = " << samples << "\n"
     << "seed = " << seed << "\n";
  os << "scales = ";
  for (std::size_t i = 0; i < scales.size(); ++i) {
    os << (i ? "," : "") << scales[i];
  }
  os << "\n";
  return os.str();
}

}  // namespace socplan
