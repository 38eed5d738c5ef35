#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "socplan/planner.hpp"
#include "socplan/statespace.hpp"

namespace socplan::io {

// Format version headers written as the first line of each artifact.
inline constexpr std::string_view kRoadmapHeader = "# socplan-roadmap v1";
inline constexpr std::string_view kSolutionHeader = "# socplan-solution v1";

// Canonical shortest-round-trip double formatting (%.17g).
std::string format_double(double v);

// Structural view of a dumped roadmap (1-DOF): one row per node.
struct RoadmapRow {
  int id = 0;
  int parent_id = -1;  // -1 for the root
  double theta = 0.0;
  double theta_dot = 0.0;
  long iteration_added = 0;
};

struct RoadmapTable {
  std::vector<RoadmapRow> rows;

  // Tree invariants on the dumped structure: ids 0..n-1 in order, exactly
  // one root at id 0, parents precede children. Throws std::logic_error.
  void validate() const;
};

// CSV dump, one row per node: id,parent_id,theta,theta_dot,iteration_added.
// provenance lines are embedded as leading "# key = value" comments.
std::string roadmap_to_csv(
    const Roadmap& roadmap,
    const std::vector<std::pair<std::string, std::string>>& provenance);
RoadmapTable roadmap_from_csv(const std::string& text);

// Solution dump: version header line followed by a JSON body with the
// segment list (duration + per-joint cubic coefficients) and metadata.
std::string solution_to_string(
    const Trajectory& traj,
    const std::vector<std::pair<std::string, std::string>>& metadata);
Trajectory solution_from_string(
    const std::string& text,
    std::map<std::string, std::string>* metadata = nullptr);

// Flat "key = value" config-file format with '#' comments and blank lines.
// Returns entries in file order. Malformed lines raise std::runtime_error
// naming the 1-based line number.
struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};
std::vector<ConfigEntry> parse_config_text(const std::string& text);

// Filesystem helpers; errors raise std::ios_base::failure.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace socplan::io
