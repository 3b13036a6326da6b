#pragma once

#include <cstddef>
#include <vector>

#include "slt/geometry.hpp"
#include "slt/graph.hpp"

namespace slt {

/// Isosceles triangle (apex, base_a, base_b) with points on its base.
///
/// The recursion runs `levels()` = ceil(log2(sqrt(1/eps))) + 1 levels. Level i consists
/// of 2^i congruent isosceles triangles over equal parts of the base with apex angle
/// alpha * lambda^i, where alpha is the apex angle of the input triangle (at most
/// sqrt(eps)).
struct CoreInstance {
  PlanePoint apex;
  PlanePoint base_a;
  PlanePoint base_b;
  std::vector<PlanePoint> base_points;
  double eps = 0.04;
  double lambda = 1.25;

  int levels() const;
  double apex_angle() const;
  /// Throws InvalidArgument / EpsOutOfRange on a violated precondition. lambda may be
  /// anything in (1, 2); values of sqrt(pi/2) and above are only safe while
  /// alpha * lambda^k stays below pi/2 (checked by build_core).
  void validate() const;
};

enum class CoreVertexKind { Root, Apex, BaseGrid, Input };

struct CoreVertex {
  PlanePoint p;
  CoreVertexKind kind = CoreVertexKind::Apex;
  int level = 0;  // recursion level for apices, -1 on the base
};

/// The recursive core graph: apex chain edges plus the path along the base.
struct CoreGraph {
  std::vector<CoreVertex> vertices;
  std::vector<WeightedEdge> edges;
  std::size_t root = 0;
  /// Vertex of each base point of the instance (coincident points share a vertex).
  std::vector<std::size_t> input_vertex;
  /// Vertices of the level-k subdivision of the base, left to right.
  std::vector<std::size_t> grid_vertex;
  int levels = 0;
  double alpha = 0.0;
  double lambda = 0.0;
  double eps = 0.0;
  /// Leg length d(apex, base_a); all normalized quantities below assume legs of length 1.
  double leg = 1.0;
  /// Per level i = 0..k: total length of the edges from level-i apices to their children
  /// (level k: to the base), normalized.
  std::vector<double> level_weight;
  /// Per level: largest slack |e| - |proj_axis(e)| of those edges, normalized.
  std::vector<double> level_slack;
  /// Per level: the common length of one apex-to-child edge, normalized.
  std::vector<double> level_gap;
  double base_path_weight = 0.0;  // normalized

  SteinerGraph to_steiner_graph() const;
};

/// Closed-form d(b, s_i) = sin(alpha/2) / (2^i sin(alpha lambda^i / 2)) for unit legs.
double core_apex_leg(double alpha, double lambda, int level);

/// Throws AngleOverflow when alpha * lambda^k >= pi/2.
CoreGraph build_core(const CoreInstance& inst);

/// Shortest path tree of the core graph from its root (index ties toward smaller ids).
Tree core_spt(const CoreGraph& g);

struct CoreMetrics {
  double tree_weight = 0.0;
  double chain_weight = 0.0;          // normalized, sum of level_weight
  double chain_bound = 0.0;           // 4 lambda / (lambda - 1)
  bool chain_ok = false;
  std::vector<double> level_bound;    // 4 / lambda^i
  std::vector<double> slack_bound;    // (alpha^2 / 4) (lambda / 2)^i
  bool levels_ok = false;
  bool slack_ok = false;
  std::vector<double> per_point_stretch;  // one per instance base point
  double max_stretch = 0.0;
  double max_grid_stretch = 0.0;
  double grid_stretch_bound = 0.0;    // (cos(a/2) + a^2 / (2 (2 - lambda))) / cos(a/2)
  double lightness = 0.0;             // w(T) / w(MST(apex + base points))
  double lightness_bound = 0.0;       // (4 lambda/(lambda-1) + base path) / cos(a/2)
};

CoreMetrics core_metrics(const CoreGraph& g, const Tree& t);

/// slack(uv) = |uv| - |proj_y(uv)|.
double slack(PlanePoint u, PlanePoint v);

}  // namespace slt
