#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "slt/graph.hpp"
#include "slt/metrics.hpp"
#include "slt/pipeline.hpp"

namespace slt {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Instance generators

struct GenParams {
  std::string kind = "random";  // circle | grid | random | core
  double eps = 0.04;
  std::size_t d = 2;
  std::size_t n = 10;
  std::uint64_t seed = 1;
};

/// Uniform double in [0, 1) from the top 53 bits of one draw; identical on every platform.
double unit_uniform(std::uint64_t draw);

/// circle: ceil(sqrt(1/eps)) evenly spaced unit-circle points (zero-padded to d), root 0.
/// grid: apex plus n cell-centred grid points of the pyramid base for (d, eps), root 0.
/// random: n uniform points in [0,1]^d, root 0.
/// core: apex plus n evenly spaced base points of the isosceles triangle of apex angle
/// sqrt(eps) with unit legs (d = 2), root 0.
/// Throws InvalidArgument on bad parameters.
PointCloud generate(const GenParams& params);

// ---------------------------------------------------------------------------
// Files

/// Canonical text of a JSON document: sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const json& j);

json points_to_json(const PointCloud& pts);
/// Throws Error(Parse) on schema violations and DuplicatePoints on repeated points.
PointCloud points_from_json(const json& j);

struct TreeFile {
  SteinerGraph graph;
  std::size_t root = 0;
};

json tree_to_json(const SteinerGraph& tree, std::size_t root);
/// Edge weights are recomputed from the coordinates.
TreeFile tree_from_json(const json& j);

json report_to_json(const SltReport& report);
SltReport report_from_json(const json& j);

/// Reads and parses a JSON file; throws Error(Parse) on I/O or syntax errors.
json read_json_file(const std::string& path);
/// Writes `text` to `path`, or to `out` when path is empty or "-".
void write_text(const std::string& path, const std::string& text, std::ostream& out);

/// Tree vertex of each input point, matched by coordinates (1e-9 relative to the
/// coordinate scale). Throws InvalidArgument when a point has no vertex.
std::vector<std::size_t> match_inputs(const SteinerGraph& tree, const PointCloud& pts);

/// Root stretch and lightness of a tree file against its input points.
SltReport verify_tree(const TreeFile& tree, const PointCloud& pts);

// ---------------------------------------------------------------------------
// SVG

/// 2-D drawing (y axis pointing up); d > 2 uses the first two coordinates.
std::string render_tree_svg(const SteinerGraph& tree, std::size_t root);
std::string render_points_svg(const PointCloud& pts);
/// One panel per unfolded surface: gadget edges, input points, Steiner points and the
/// cone boundaries of the surface.
std::string render_gadgets_svg(const SltResult& result);

// ---------------------------------------------------------------------------
// Command line

/// Exit codes: 0 success, 1 constraint violation, 2 usage, I/O or parse error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace slt
