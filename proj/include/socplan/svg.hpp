#pragma once

#include <string>
#include <vector>

#include "socplan/io.hpp"

namespace socplan::svg {

struct PhasePortraitStyle {
  int width = 900;
  int height = 640;
  int margin = 50;
  double omega_range = 25.0;  // vertical half-range; 0 => fit to data
  double node_radius = 1.0;
  std::string edge_color = "#b0b0b0";
  std::string node_color = "#1f3552";
  std::string solution_color = "#c0392b";
  std::string title;
};

// Phase-space portrait: theta on the horizontal axis over (-pi, pi],
// theta_dot vertical; edges as parent->child line segments, nodes as points,
// optional solution polyline in a distinct stroke. Output is deterministic
// for fixed inputs (no timestamps, fixed formatting).
std::string render_phase_portrait(
    const io::RoadmapTable& roadmap,
    const std::vector<std::pair<double, double>>* solution_polyline,
    const PhasePortraitStyle& style = {});

// Node density (count per unit phase-space area) in the |theta_dot| <= 2
// band divided by density in the 5 < |theta_dot| < 15 band. Infinite when
// the outer band is empty. Quantifies the low-speed concentration of
// fixed-duration steering roadmaps.
double band_density_ratio(const io::RoadmapTable& roadmap,
                          double inner_halfwidth = 2.0, double outer_lo = 5.0,
                          double outer_hi = 15.0);

}  // namespace socplan::svg
