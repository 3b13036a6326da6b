#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "slt/graph.hpp"

namespace slt {

inline constexpr std::size_t kNoParent = std::numeric_limits<std::size_t>::max();

struct ShortestPaths {
  std::vector<double> dist;          // +inf when unreachable
  std::vector<std::size_t> parent;   // kNoParent for the source and unreachable vertices
};

/// Dijkstra with ties resolved toward the smaller vertex index (both in pop order and
/// in parent choice), so the resulting tree is deterministic.
ShortestPaths dijkstra(const Adjacency& adj, std::size_t source);

/// Same as dijkstra but stops settling vertices once their distance exceeds `cutoff`.
/// Unsettled vertices keep +inf.
ShortestPaths dijkstra_bounded(const Adjacency& adj, std::size_t source, double cutoff);

/// Union of root-to-target shortest paths of `g` as a tree (vertex 0 = root); the ids
/// of the targets in the new tree are written to `target_ids`. Ties follow dijkstra;
/// throws Disconnected when a target is unreachable.
SteinerGraph shortest_path_tree(const SteinerGraph& g, std::size_t root,
                                const std::vector<std::size_t>& targets,
                                std::vector<std::size_t>& target_ids);

/// Shortest-path distances from `source`; throws Disconnected if a vertex is unreachable.
ShortestPaths oracle_spt(std::size_t n, std::span<const WeightedEdge> edges, std::size_t source);
ShortestPaths oracle_spt(const SteinerGraph& g, std::size_t source);

/// All-pairs distances, O(n^3). Independent cross-check for Dijkstra.
std::vector<std::vector<double>> floyd_warshall(std::size_t n, std::span<const WeightedEdge> edges);

/// Kruskal over all pairs with the (weight, min index, max index) order. Independent
/// cross-check for euclidean_mst.
Tree kruskal_mst(const PointCloud& pts);

/// Tree-path length from `root` to each vertex of `targets`, divided by the Euclidean
/// distance; 1 for a target located at the root. `tree` must be a tree (connected,
/// |E| = |V| - 1); throws InvalidArgument otherwise and Unreachable when a target is not
/// connected to the root.
std::vector<double> root_stretch(const SteinerGraph& tree, std::size_t root,
                                 std::span<const std::size_t> targets);

/// Weight of the MST over the input points only.
double mst_weight(const PointCloud& pts);

/// tree_weight / w(MST(pts)); requires at least two points.
double lightness(double tree_weight, const PointCloud& pts);

/// Measured quantities of one constructed tree.
struct SltReport {
  std::string method;
  std::size_t n = 0;
  std::size_t d = 0;
  double eps = 0.0;
  double gamma = 0.0;
  double lambda = 0.0;
  double mst_weight = 0.0;
  double tree_weight = 0.0;
  double lightness = 0.0;
  std::vector<double> per_point_stretch;
  double max_stretch = 0.0;
  std::vector<double> surface_angles;
  double phase1_weight = 0.0;
  std::size_t truncated_surfaces = 0;
  std::size_t pruned_vertices = 0;
};

/// Fills the stretch/lightness fields of `report` from `tree` and the input points it
/// must reach (`input_vertex[i]` is the tree vertex of pts.points[i]).
void measure_tree(SltReport& report, const SteinerGraph& tree, std::size_t tree_root,
                  std::span<const std::size_t> input_vertex, const PointCloud& pts);

}  // namespace slt
