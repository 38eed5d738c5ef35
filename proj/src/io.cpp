#include "socplan/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace socplan::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void RoadmapTable::validate() const {
  if (rows.empty()) throw std::logic_error("roadmap table: empty");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const RoadmapRow& r = rows[i];
    if (r.id != static_cast<int>(i)) {
      throw std::logic_error("roadmap table: ids must be 0..n-1 in order");
    }
    if (i == 0) {
      if (r.parent_id != -1) {
        throw std::logic_error("roadmap table: node 0 must be the root");
      }
    } else if (r.parent_id < 0 || r.parent_id >= r.id) {
      throw std::logic_error("roadmap table: parent must precede node " +
                             std::to_string(r.id));
    }
  }
}

std::string roadmap_to_csv(
    const Roadmap& roadmap,
    const std::vector<std::pair<std::string, std::string>>& provenance) {
  std::ostringstream os;
  os << kRoadmapHeader << "\n";
  for (const auto& [key, value] : provenance) {
    os << "# " << key << " = " << value << "\n";
  }
  os << "id,parent_id,theta,theta_dot,iteration_added\n";
  for (const Node& n : roadmap.nodes) {
    if (n.state.dof() != 1) {
      throw std::invalid_argument("roadmap_to_csv: 1-DOF roadmaps only");
    }
    os << n.id << ',' << (n.parent ? *n.parent : -1) << ','
       << format_double(n.state.q()[0]) << ','
       << format_double(n.state.qd()[0]) << ',' << n.iteration_added << "\n";
  }
  return os.str();
}

RoadmapTable roadmap_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  bool saw_header = false, saw_columns = false;
  RoadmapTable table;
  while (std::getline(is, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (!saw_header) {
      if (t != kRoadmapHeader) {
        throw std::runtime_error("roadmap csv line 1: missing '" +
                                 std::string(kRoadmapHeader) + "' header");
      }
      saw_header = true;
      continue;
    }
    if (t[0] == '#') continue;  // provenance comments
    if (!saw_columns) {
      if (t != "id,parent_id,theta,theta_dot,iteration_added") {
        throw std::runtime_error("roadmap csv line " + std::to_string(line_no) +
                                 ": unexpected column header");
      }
      saw_columns = true;
      continue;
    }
    RoadmapRow row;
    char extra;
    if (std::sscanf(t.c_str(), "%d,%d,%lf,%lf,%ld%c", &row.id, &row.parent_id,
                    &row.theta, &row.theta_dot, &row.iteration_added,
                    &extra) != 5) {
      throw std::runtime_error("roadmap csv line " + std::to_string(line_no) +
                               ": malformed row");
    }
    table.rows.push_back(row);
  }
  if (!saw_header || !saw_columns) {
    throw std::runtime_error("roadmap csv: truncated file");
  }
  return table;
}

std::string solution_to_string(
    const Trajectory& traj,
    const std::vector<std::pair<std::string, std::string>>& metadata) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json meta;
  for (const auto& [key, value] : metadata) meta[key] = value;
  doc["metadata"] = std::move(meta);
  nlohmann::ordered_json segs = nlohmann::ordered_json::array();
  for (const TrajectorySegment& seg : traj.segments()) {
    nlohmann::ordered_json js;
    js["duration"] = seg.duration;
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
    for (int j = 0; j < seg.dof(); ++j) {
      coeffs.push_back({seg.coeffs(j, 0), seg.coeffs(j, 1), seg.coeffs(j, 2),
                        seg.coeffs(j, 3)});
    }
    js["coeffs"] = std::move(coeffs);
    segs.push_back(std::move(js));
  }
  doc["segments"] = std::move(segs);
  return std::string(kSolutionHeader) + "\n" + doc.dump(2) + "\n";
}

Trajectory solution_from_string(const std::string& text,
                                std::map<std::string, std::string>* metadata) {
  const auto nl = text.find('\n');
  if (nl == std::string::npos || trim(text.substr(0, nl)) != kSolutionHeader) {
    throw std::runtime_error("solution dump: missing '" +
                             std::string(kSolutionHeader) + "' header");
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.substr(nl + 1));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("solution dump: bad JSON body: ") +
                             e.what());
  }
  if (metadata) {
    for (const auto& [key, value] : doc.at("metadata").items()) {
      (*metadata)[key] = value.get<std::string>();
    }
  }
  std::vector<TrajectorySegment> segments;
  for (const auto& js : doc.at("segments")) {
    const auto& coeffs = js.at("coeffs");
    Eigen::MatrixXd c(coeffs.size(), 4);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      for (int p = 0; p < 4; ++p) c(j, p) = coeffs[j][p].get<double>();
    }
    segments.emplace_back(js.at("duration").get<double>(), std::move(c));
  }
  return Trajectory(std::move(segments));
}

std::vector<ConfigEntry> parse_config_text(const std::string& text) {
  std::vector<ConfigEntry> entries;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config line " + std::to_string(line_no) +
                               ": expected 'key = value'");
    }
    ConfigEntry e;
    e.key = trim(t.substr(0, eq));
    e.value = trim(t.substr(eq + 1));
    e.line = line_no;
    if (e.key.empty()) {
      throw std::runtime_error("config line " + std::to_string(line_no) +
                               ": empty key");
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::ios_base::failure("cannot open for reading: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::ios_base::failure("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::ios_base::failure("write failed: " + path);
}

}  // namespace socplan::io
