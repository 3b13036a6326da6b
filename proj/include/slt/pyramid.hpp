#pragma once

#include <cstddef>
#include <vector>

#include "slt/geometry.hpp"
#include "slt/graph.hpp"
#include "slt/metrics.hpp"

namespace slt {

/// Right pyramid over an axis-aligned (d-1)-cube lying in the hyperplane x_axis = 0.
struct Pyramid {
  Point base_center;
  double half_side = 0.0;
  Point apex;
  double apex_angle = 0.0;  // angle at the apex subtended by a body diagonal of the base
  std::size_t axis = 0;
};

/// Pyramid with the given base and apex angle, apex on the positive side of the axis.
Pyramid make_pyramid(const Point& base_center, double half_side, double apex_angle, std::size_t axis = 0);

/// n points on a cell-centred grid with per_axis() points along each base axis.
struct GridSpec {
  std::size_t n = 0;

  std::size_t per_axis(std::size_t d) const;
  /// Smallest n of the regime (2 sqrt(d) eps^(0.66 - d/2))^((d-1)/(d-2)).
  static double regime_min(std::size_t d, double eps);
  bool in_regime(std::size_t d, double eps) const { return static_cast<double>(n) >= regime_min(d, eps); }
};

/// The apex (cos(alpha/2), 0, ..., 0), alpha = sqrt(eps), followed by the first n points
/// (lexicographic) of the cell-centred per_axis^(d-1) grid in the base cube, which lies
/// in the hyperplane x_0 = 0, is centred at the origin and has its corners at unit
/// distance from the apex. Root index 0.
PointCloud pyramid_instance(std::size_t d, double eps, const GridSpec& grid);

/// Greedy t-spanner: pairs in (distance, min index, max index) order, an edge is added
/// iff the current graph distance exceeds t times the Euclidean distance.
std::vector<WeightedEdge> greedy_spanner(const std::vector<Point>& pts, double t);

/// n * sqrt(eps/d) / (2 n^(1/(d-1))); rejects n < 2 and d < 3.
double pyramid_mst_lower_bound(const GridSpec& grid, std::size_t d, double eps);

struct PyramidCore {
  SteinerGraph graph;
  SteinerGraph tree;  // shortest paths from the apex to every input, vertex 0 = apex
  std::vector<std::size_t> tree_input_vertex;
  PointCloud inputs;  // apex (root, index 0) followed by the grid points
  SltReport report;

  int levels = 0;
  double alpha = 0.0;
  std::vector<std::vector<Pyramid>> pyramids;  // per level
  /// Per level: total length of the edges from level-i apices to their children
  /// (level k: to the base corners).
  std::vector<double> level_weight;
  std::vector<double> level_bound;  // 2^d 2^((d-2) i) / lambda^i
  /// Per level: length of one apex-to-child edge.
  std::vector<double> level_gap;
  std::size_t base_vertices = 0;     // |V' u B|
  std::size_t spanner_edges = 0;
  std::vector<WeightedEdge> base_spanner;  // over base_points
  std::vector<Point> base_points;          // V' u B in base coordinates (dimension d-1)
  double max_path_length = 0.0;      // max over inputs of the tree distance from the apex
  double path_bound = 0.0;           // cos(alpha/2) + 17/16 eps
  double mst_lower_bound = 0.0;
  double lightness_trend = 0.0;      // 2^d eps^(1.16 - d/2)
  bool in_regime = false;
};

/// d-dimensional core. Apex angle sqrt(eps), apex at unit distance from the base corners,
/// k = ceil(log2 sqrt(1/eps)) + 1 levels of 2^(d-1)-way subdivision.
/// Throws DimensionTooSmall for d < 3 and AngleOverflow when alpha lambda^k >= pi/2.
PyramidCore build_pyramid_core(std::size_t d, double eps, const GridSpec& grid, double lambda = 1.25);

}  // namespace slt
