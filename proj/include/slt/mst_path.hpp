#pragma once

#include <cstddef>
#include <vector>

#include "slt/geometry.hpp"
#include "slt/graph.hpp"

namespace slt {

/// Euclidean MST by Prim's algorithm on the complete graph, O(n^2) time.
/// Equal-weight candidates are resolved by the smaller (min index, max index) pair.
/// Throws DuplicatePoints listing the coincident index pairs.
Tree euclidean_mst(const PointCloud& pts);

/// Hamiltonian path in DFS preorder of the tree from its root.
struct HamPath {
  std::vector<std::size_t> order;
  Polyline geometry;

  double weight() const { return geometry.length(); }
};

/// Preorder DFS of `tree` from pts.root, children visited in ascending index order.
HamPath dfs_hamiltonian(const Tree& tree, const PointCloud& pts);

}  // namespace slt
