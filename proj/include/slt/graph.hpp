#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "slt/geometry.hpp"

namespace slt {

/// Input points with a distinguished root.
struct PointCloud {
  std::vector<Point> points;
  std::size_t root = 0;

  std::size_t size() const noexcept { return points.size(); }
  std::size_t dim() const noexcept { return points.empty() ? 0 : points.front().dim(); }
  const Point& root_point() const { return points.at(root); }

  /// Throws on empty input, mixed dimensions or a root index out of range.
  void validate() const;
};

struct WeightedEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double w = 0.0;
};

/// Sum of edge weights in ascending weight order, so that edge sets with the same
/// weight multiset give bit-identical totals.
double total_weight(std::span<const WeightedEdge> edges);

/// Spanning tree over vertices 0..n-1.
struct Tree {
  std::size_t n = 0;
  std::vector<WeightedEdge> edges;
  std::size_t root = 0;

  double weight() const { return total_weight(edges); }
};

enum class VertexKind {
  Input,
  Break,
  SecondaryBreak,
  EllSteiner,
  CoreApex,
  Bend,
  BaseGrid,
};

std::string_view to_string(VertexKind kind);
VertexKind vertex_kind_from_string(std::string_view name);

/// Geometric graph in R^d; edge weights are endpoint distances.
class SteinerGraph {
 public:
  explicit SteinerGraph(std::size_t dim = 2) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t vertex_count() const noexcept { return kinds_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::size_t add_vertex(std::span<const double> coords, VertexKind kind);
  std::size_t add_vertex(const Point& p, VertexKind kind) { return add_vertex(p.coords(), kind); }
  /// Adds edge u-v weighted by the Euclidean distance of its endpoints.
  void add_edge(std::size_t u, std::size_t v);

  std::span<const double> coords(std::size_t v) const {
    return {coords_.data() + v * dim_, dim_};
  }
  Point point(std::size_t v) const;
  VertexKind kind(std::size_t v) const { return kinds_[v]; }
  void set_kind(std::size_t v, VertexKind kind) { kinds_[v] = kind; }
  const std::vector<WeightedEdge>& edges() const noexcept { return edges_; }

  double weight() const { return total_weight(edges_); }

 private:
  std::size_t dim_;
  std::vector<double> coords_;
  std::vector<VertexKind> kinds_;
  std::vector<WeightedEdge> edges_;
};

/// Compressed adjacency lists of an undirected weighted graph.
struct Adjacency {
  struct Arc {
    std::size_t to;
    double w;
  };
  std::vector<std::size_t> offset;
  std::vector<Arc> arcs;

  Adjacency(std::size_t n, std::span<const WeightedEdge> edges);
  std::span<const Arc> out(std::size_t v) const {
    return {arcs.data() + offset[v], offset[v + 1] - offset[v]};
  }
  std::size_t size() const noexcept { return offset.size() - 1; }
};

}  // namespace slt
