#include "socplan/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "socplan/statespace.hpp"

namespace socplan::svg {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct Mapper {
  double x0, y0, w, h;      // plot viewport in pixels
  double omega_range;

  double px(double theta) const {
    return x0 + (theta + kPi) / kTwoPi * w;
  }
  double py(double omega) const {
    return y0 + (1.0 - (omega + omega_range) / (2.0 * omega_range)) * h;
  }
};

void draw_polyline_wrapped(std::ostringstream& os,
                           const std::vector<std::pair<double, double>>& pts,
                           const Mapper& m, const std::string& color,
                           double stroke_width) {
  // Split the path where it crosses the theta seam so no stroke spans the
  // plot horizontally.
  std::ostringstream d;
  bool open = false;
  double prev_theta = 0.0;
  for (const auto& [theta, omega] : pts) {
    const double th = wrap_angle(theta);
    if (open && std::abs(th - prev_theta) > kPi) {
      open = false;  // seam crossing: start a new subpath
    }
    d << (open ? " L " : " M ") << fmt(m.px(th)) << ' ' << fmt(m.py(omega));
    open = true;
    prev_theta = th;
  }
  os << "<path fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
     << fmt(stroke_width) << "\" d=\"" << d.str() << "\"/>\n";
}

}  // namespace

std::string render_phase_portrait(
    const io::RoadmapTable& roadmap,
    const std::vector<std::pair<double, double>>* solution_polyline,
    const PhasePortraitStyle& style) {
  double omega_range = style.omega_range;
  if (omega_range <= 0.0) {
    omega_range = 1.0;
    for (const io::RoadmapRow& r : roadmap.rows) {
      omega_range = std::max(omega_range, std::abs(r.theta_dot) * 1.05);
    }
  }
  const Mapper m{static_cast<double>(style.margin),
                 static_cast<double>(style.margin),
                 static_cast<double>(style.width - 2 * style.margin),
                 static_cast<double>(style.height - 2 * style.margin),
                 omega_range};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.width
     << "\" height=\"" << style.height << "\" viewBox=\"0 0 " << style.width
     << ' ' << style.height << "\">\n";
  os << "<rect width=\"" << style.width << "\" height=\"" << style.height
     << "\" fill=\"white\"/>\n";

  // Frame and axes through the origin.
  os << "<rect x=\"" << fmt(m.x0) << "\" y=\"" << fmt(m.y0) << "\" width=\""
     << fmt(m.w) << "\" height=\"" << fmt(m.h)
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << fmt(m.px(-kPi)) << "\" y1=\"" << fmt(m.py(0))
     << "\" x2=\"" << fmt(m.px(kPi)) << "\" y2=\"" << fmt(m.py(0))
     << "\" stroke=\"#e0e0e0\"/>\n";
  os << "<line x1=\"" << fmt(m.px(0)) << "\" y1=\"" << fmt(m.y0) << "\" x2=\""
     << fmt(m.px(0)) << "\" y2=\"" << fmt(m.y0 + m.h)
     << "\" stroke=\"#e0e0e0\"/>\n";
  os << "<text x=\"" << fmt(m.x0 + m.w / 2) << "\" y=\""
     << fmt(m.y0 + m.h + 32)
     << "\" text-anchor=\"middle\" font-size=\"13\">theta [rad]</text>\n";
  os << "<text x=\"14\" y=\"" << fmt(m.y0 + m.h / 2)
     << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 14 "
     << fmt(m.y0 + m.h / 2) << ")\">theta_dot [rad/s]</text>\n";
  for (const double tick : {-kPi, -kPi / 2, 0.0, kPi / 2, kPi}) {
    os << "<line x1=\"" << fmt(m.px(tick)) << "\" y1=\"" << fmt(m.y0 + m.h)
       << "\" x2=\"" << fmt(m.px(tick)) << "\" y2=\"" << fmt(m.y0 + m.h + 5)
       << "\" stroke=\"black\"/>\n";
  }
  if (!style.title.empty()) {
    os << "<text x=\"" << fmt(m.x0 + m.w / 2)
       << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << style.title
       << "</text>\n";
  }

  os << "<g clip-path=\"url(#plot)\">\n"
     << "<clipPath id=\"plot\"><rect x=\"" << fmt(m.x0) << "\" y=\""
     << fmt(m.y0) << "\" width=\"" << fmt(m.w) << "\" height=\"" << fmt(m.h)
     << "\"/></clipPath>\n";

  // Edges. A seam-crossing edge is drawn twice, shifted by +-2 pi, so both
  // stubs appear at the correct side of the plot (clipped at the frame).
  os << "<g stroke=\"" << style.edge_color << "\" stroke-width=\"0.4\">\n";
  for (const io::RoadmapRow& r : roadmap.rows) {
    if (r.parent_id < 0) continue;
    const io::RoadmapRow& p = roadmap.rows[r.parent_id];
    double dtheta = r.theta - p.theta;
    if (std::abs(dtheta) > kPi) {
      const double shift = (dtheta > 0.0 ? -kTwoPi : kTwoPi);
      os << "<line x1=\"" << fmt(m.px(p.theta)) << "\" y1=\""
         << fmt(m.py(p.theta_dot)) << "\" x2=\"" << fmt(m.px(r.theta + shift))
         << "\" y2=\"" << fmt(m.py(r.theta_dot)) << "\"/>\n";
      os << "<line x1=\"" << fmt(m.px(p.theta - shift)) << "\" y1=\""
         << fmt(m.py(p.theta_dot)) << "\" x2=\"" << fmt(m.px(r.theta))
         << "\" y2=\"" << fmt(m.py(r.theta_dot)) << "\"/>\n";
    } else {
      os << "<line x1=\"" << fmt(m.px(p.theta)) << "\" y1=\""
         << fmt(m.py(p.theta_dot)) << "\" x2=\"" << fmt(m.px(r.theta))
         << "\" y2=\"" << fmt(m.py(r.theta_dot)) << "\"/>\n";
    }
  }
  os << "</g>\n";

  os << "<g fill=\"" << style.node_color << "\">\n";
  for (const io::RoadmapRow& r : roadmap.rows) {
    os << "<circle cx=\"" << fmt(m.px(r.theta)) << "\" cy=\""
       << fmt(m.py(r.theta_dot)) << "\" r=\"" << fmt(style.node_radius)
       << "\"/>\n";
  }
  os << "</g>\n";

  if (solution_polyline && !solution_polyline->empty()) {
    draw_polyline_wrapped(os, *solution_polyline, m, style.solution_color, 1.8);
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

double band_density_ratio(const io::RoadmapTable& roadmap,
                          double inner_halfwidth, double outer_lo,
                          double outer_hi) {
  long inner = 0, outer = 0;
  for (const io::RoadmapRow& r : roadmap.rows) {
    const double w = std::abs(r.theta_dot);
    if (w <= inner_halfwidth) ++inner;
    else if (w > outer_lo && w < outer_hi) ++outer;
  }
  const double inner_area = kTwoPi * 2.0 * inner_halfwidth;
  const double outer_area = kTwoPi * 2.0 * (outer_hi - outer_lo);
  if (outer == 0) return std::numeric_limits<double>::infinity();
  return (inner / inner_area) / (outer / outer_area);
}

}  // namespace socplan::svg
