#include "socplan/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "socplan/svg.hpp"

namespace socplan {

namespace {

double parse_double(const std::string& v) {
  std::size_t pos = 0;
  const double d = std::stod(v, &pos);
  if (pos != v.size() || !std::isfinite(d)) {
    throw std::invalid_argument("bad numeric value '" + v + "'");
  }
  return d;
}

long parse_long(const std::string& v) {
  long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw std::invalid_argument("bad integer value '" + v + "'");
  }
  return out;
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument("bad boolean value '" + v + "'");
}

// "A..B" inclusive range or comma-separated list.
std::vector<std::uint64_t> parse_seeds(const std::string& v) {
  std::vector<std::uint64_t> seeds;
  const auto dots = v.find("..");
  if (dots != std::string::npos) {
    const long a = parse_long(v.substr(0, dots));
    const long b = parse_long(v.substr(dots + 2));
    if (a < 0 || b < a) throw std::invalid_argument("bad seed range '" + v + "'");
    for (long s = a; s <= b; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
    return seeds;
  }
  std::istringstream is(v);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    seeds.push_back(static_cast<std::uint64_t>(parse_long(tok)));
  }
  if (seeds.empty()) throw std::invalid_argument("empty seed list");
  return seeds;
}

std::vector<double> parse_scales(const std::string& v) {
  std::vector<double> scales;
  std::istringstream is(v);
  std::string tok;
  while (std::getline(is, tok, ',')) scales.push_back(parse_double(tok));
  if (scales.empty()) throw std::invalid_argument("empty scale list");
  return scales;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += (i ? "," : "") + io::format_double(v[i]);
  }
  return out;
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += (i ? "," : "") + std::to_string(v[i]);
  }
  return out;
}

}  // namespace

void ExperimentSpec::validate() const {
  if (!(length > 0.0) || !(mass > 0.0) || !(gravity > 0.0) || !(tau_max > 0.0)) {
    throw std::invalid_argument("spec: l, m, g, tau_max must be positive");
  }
  if (interp != "bezier" && interp != "soc1" && interp != "quad") {
    throw std::invalid_argument("spec: interp must be bezier, soc1 or quad");
  }
  if (!(bezier_T > 0.0)) {
    throw std::invalid_argument("spec: bezier_T must be positive");
  }
  if (budget < 0 || k_parents < 1 || goal_bias_period < 1 || adm_checks < 2 ||
      soc_pairs < 10) {
    throw std::invalid_argument("spec: invalid counts");
  }
  if (!(goal_tolerance > 0.0) || !(omega_max > 0.0)) {
    throw std::invalid_argument("spec: goal_tolerance and omega_max must be positive");
  }
  if (seeds.empty()) throw std::invalid_argument("spec: seed list empty");
  if (!(region_vmin > 0.0) || !(region_vmax > region_vmin)) {
    throw std::invalid_argument("spec: SOC region requires 0 < vmin < vmax");
  }
  for (std::size_t i = 0; i + 1 < soc_scales.size(); ++i) {
    if (!(soc_scales[i] > soc_scales[i + 1])) {
      throw std::invalid_argument("spec: soc_scales must decrease");
    }
  }
  if (soc_scales.size() < 2 || !(soc_scales.back() > 0.0)) {
    throw std::invalid_argument("spec: need >= 2 positive soc_scales");
  }
}

void ExperimentSpec::apply(const std::string& key, const std::string& value) {
  if (key == "length") length = parse_double(value);
  else if (key == "mass") mass = parse_double(value);
  else if (key == "gravity") gravity = parse_double(value);
  else if (key == "tau_max") tau_max = parse_double(value);
  else if (key == "interp") interp = value;
  else if (key == "bezier_T") bezier_T = parse_double(value);
  else if (key == "budget") budget = parse_long(value);
  else if (key == "k_parents") k_parents = static_cast<int>(parse_long(value));
  else if (key == "goal_bias_period") goal_bias_period = static_cast<int>(parse_long(value));
  else if (key == "theta_init") theta_init = parse_double(value);
  else if (key == "omega_init") omega_init = parse_double(value);
  else if (key == "goal_theta") goal_theta = parse_double(value);
  else if (key == "goal_tolerance") goal_tolerance = parse_double(value);
  else if (key == "omega_max") omega_max = parse_double(value);
  else if (key == "adm_checks") adm_checks = static_cast<int>(parse_long(value));
  else if (key == "velocity_weight") velocity_weight = parse_double(value);
  else if (key == "seed") seeds = {static_cast<std::uint64_t>(parse_long(value))};
  else if (key == "seeds") seeds = parse_seeds(value);
  else if (key == "soc_scales") soc_scales = parse_scales(value);
  else if (key == "soc_pairs") soc_pairs = static_cast<int>(parse_long(value));
  else if (key == "region_vmin") region_vmin = parse_double(value);
  else if (key == "region_vmax") region_vmax = parse_double(value);
  else if (key == "soc_seed") soc_seed = static_cast<std::uint64_t>(parse_long(value));
  else if (key == "out") out_dir = value;
  else if (key == "quiet") quiet = parse_bool(value);
  else throw std::invalid_argument("unknown key '" + key + "'");
}

void ExperimentSpec::apply_file(const std::string& path) {
  const std::string text = io::read_file(path);
  for (const io::ConfigEntry& e : io::parse_config_text(text)) {
    try {
      apply(e.key, e.value);
    } catch (const std::invalid_argument& err) {
      throw std::invalid_argument(path + " line " + std::to_string(e.line) +
                                  ": " + err.what());
    }
  }
}

std::vector<std::pair<std::string, std::string>> ExperimentSpec::to_provenance()
    const {
  std::vector<std::pair<std::string, std::string>> kv = {
      {"adm_checks", std::to_string(adm_checks)},
      {"bezier_T", io::format_double(bezier_T)},
      {"budget", std::to_string(budget)},
      {"goal_bias_period", std::to_string(goal_bias_period)},
      {"goal_theta", io::format_double(goal_theta)},
      {"goal_tolerance", io::format_double(goal_tolerance)},
      {"gravity", io::format_double(gravity)},
      {"interp", interp},
      {"k_parents", std::to_string(k_parents)},
      {"length", io::format_double(length)},
      {"mass", io::format_double(mass)},
      {"omega_init", io::format_double(omega_init)},
      {"omega_max", io::format_double(omega_max)},
      {"region_vmax", io::format_double(region_vmax)},
      {"region_vmin", io::format_double(region_vmin)},
      {"seeds", join(seeds)},
      {"soc_pairs", std::to_string(soc_pairs)},
      {"soc_scales", join(soc_scales)},
      {"soc_seed", std::to_string(soc_seed)},
      {"tau_max", io::format_double(tau_max)},
      {"theta_init", io::format_double(theta_init)},
      {"velocity_weight", io::format_double(velocity_weight)},
  };
  return kv;
}

std::unique_ptr<SinglePendulumModel> ExperimentSpec::make_model() const {
  return std::make_unique<SinglePendulumModel>(length, mass, tau_max, gravity);
}

std::unique_ptr<Interpolator> ExperimentSpec::make_interpolator() const {
  if (interp == "bezier") return std::make_unique<BezierInterpolator>(bezier_T);
  if (interp == "soc1") return std::make_unique<Soc1Interpolator>();
  if (interp == "quad") return std::make_unique<QuadInterpolator>();
  throw std::invalid_argument("unknown interpolator '" + interp + "'");
}

PlannerConfig ExperimentSpec::make_planner_config(std::uint64_t seed) const {
  PlannerConfig cfg;
  cfg.n_iterations = budget;
  cfg.k_parents = k_parents;
  cfg.goal_bias_period = goal_bias_period;
  cfg.x_init = State::single(theta_init, omega_init);
  cfg.goal_state = State::single(goal_theta, 0.0);
  cfg.goal_tolerance = goal_tolerance;
  cfg.sample_bounds.omega_max = omega_max;
  cfg.admissibility_checks = adm_checks;
  cfg.rng_seed = seed;
  cfg.velocity_weight = velocity_weight;
  return cfg;
}

SocRegion ExperimentSpec::make_region() const {
  return SocRegion::single_joint(region_vmin, region_vmax);
}

SOCReport run_soc_verification(const ExperimentSpec& spec) {
  spec.validate();
  const auto interp = spec.make_interpolator();
  return verify_soc(*interp, spec.make_region(), spec.soc_scales,
                    spec.soc_pairs, spec.soc_seed);
}

std::vector<std::pair<double, double>> solution_polyline(
    const Trajectory& traj, int points_per_segment) {
  std::vector<std::pair<double, double>> pts;
  for (const TrajectorySegment& seg : traj.segments()) {
    for (int i = 0; i < points_per_segment; ++i) {
      const double t = seg.duration * i / (points_per_segment - 1);
      double q, qd;
      seg.eval_joint(0, t, &q, &qd, nullptr);
      pts.emplace_back(q, qd);
    }
  }
  return pts;
}

int count_swings(const Trajectory& traj, int samples_per_segment) {
  int swings = 0;
  double prev_sign = 0.0;
  for (const TrajectorySegment& seg : traj.segments()) {
    for (int i = 0; i < samples_per_segment; ++i) {
      const double t = seg.duration * i / (samples_per_segment - 1);
      double qd;
      seg.eval_joint(0, t, nullptr, &qd, nullptr);
      const double sign = qd > 0.0 ? 1.0 : (qd < 0.0 ? -1.0 : 0.0);
      if (sign != 0.0) {
        if (prev_sign != 0.0 && sign != prev_sign) ++swings;
        prev_sign = sign;
      }
    }
  }
  return swings;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  if (spec.out_dir.empty()) {
    throw std::invalid_argument("run_experiment: output directory required");
  }
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(spec.out_dir, ec);
  if (ec) {
    throw std::ios_base::failure("cannot create output directory " +
                                 spec.out_dir + ": " + ec.message());
  }

  const auto model = spec.make_model();
  const auto interp = spec.make_interpolator();
  const auto provenance = spec.to_provenance();

  // One SOC report per experiment for the chosen interpolator.
  const SOCReport soc = run_soc_verification(spec);
  io::write_file(spec.out_dir + "/soc_report.txt", soc.to_text());
  io::write_file(spec.out_dir + "/soc_report.kv", soc.to_kv());

  ExperimentResult result;
  std::ostringstream summary;
  summary << "# socplan-summary v1\n";
  for (const auto& [key, value] : provenance) {
    summary << "# " << key << " = " << value << "\n";
  }
  summary << "seed,status,extensions,nodes,wall_seconds,swings\n";

  for (const std::uint64_t seed : spec.seeds) {
    const PlannerConfig cfg = spec.make_planner_config(seed);

    const auto t0 = std::chrono::steady_clock::now();
    const PlanResult plan_result = plan(*model, *interp, cfg);
    const auto t1 = std::chrono::steady_clock::now();

    RunSummaryRow row;
    row.seed = seed;
    row.status = plan_result.status;
    row.extensions = plan_result.extensions_used;
    row.nodes = plan_result.roadmap.size();
    row.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    if (plan_result.status == PlanStatus::solved) {
      ++result.solved_count;
      row.swings = count_swings(*plan_result.solution);
    }

    const std::string seed_dir = spec.out_dir + "/seed_" + std::to_string(seed);
    fs::create_directories(seed_dir, ec);
    if (ec) {
      throw std::ios_base::failure("cannot create " + seed_dir + ": " +
                                   ec.message());
    }
    auto run_provenance = provenance;
    run_provenance.emplace_back("run_seed", std::to_string(seed));
    io::write_file(seed_dir + "/roadmap.csv",
                   io::roadmap_to_csv(plan_result.roadmap, run_provenance));
    if (plan_result.solution && !plan_result.solution->empty()) {
      std::vector<std::pair<std::string, std::string>> meta = run_provenance;
      meta.emplace_back("extensions", std::to_string(row.extensions));
      meta.emplace_back("nodes", std::to_string(row.nodes));
      meta.emplace_back("swings", std::to_string(row.swings));
      io::write_file(seed_dir + "/solution.json",
                     io::solution_to_string(*plan_result.solution, meta));
    }

    const char* status_str =
        plan_result.status == PlanStatus::solved ? "solved" : "budget_exhausted";
    summary << seed << ',' << status_str << ',' << row.extensions << ','
            << row.nodes << ',' << io::format_double(row.wall_seconds) << ','
            << row.swings << "\n";
    if (!spec.quiet) {
      std::printf("seed %llu: %s, %ld extensions, %ld nodes, %.2fs%s\n",
                  static_cast<unsigned long long>(seed), status_str,
                  row.extensions, row.nodes, row.wall_seconds,
                  row.swings >= 0
                      ? (", " + std::to_string(row.swings) + " swings").c_str()
                      : "");
      std::fflush(stdout);
    }
    result.rows.push_back(row);
  }

  result.summary_csv = summary.str();
  io::write_file(spec.out_dir + "/summary.csv", result.summary_csv);
  return result;
}

}  // namespace socplan
