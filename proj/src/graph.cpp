#include "slt/graph.hpp"

#include <algorithm>
#include <string>

#include "slt/error.hpp"

namespace slt {

void PointCloud::validate() const {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "empty point cloud");
  const std::size_t d = points.front().dim();
  if (d < 2) throw Error(ErrorCode::DimensionTooSmall, "points need at least 2 coordinates");
  for (const auto& p : points) {
    if (p.dim() != d) throw Error(ErrorCode::DimensionMismatch, "mixed point dimensions");
  }
  if (root >= points.size()) throw Error(ErrorCode::OutOfRange, "root index out of range");
}

double total_weight(std::span<const WeightedEdge> edges) {
  std::vector<double> w;
  w.reserve(edges.size());
  for (const auto& e : edges) w.push_back(e.w);
  std::sort(w.begin(), w.end());
  double s = 0.0;
  for (double x : w) s += x;
  return s;
}

std::string_view to_string(VertexKind kind) {
  switch (kind) {
    case VertexKind::Input: return "input";
    case VertexKind::Break: return "break";
    case VertexKind::SecondaryBreak: return "secondary_break";
    case VertexKind::EllSteiner: return "ell_steiner";
    case VertexKind::CoreApex: return "core_apex";
    case VertexKind::Bend: return "bend";
    case VertexKind::BaseGrid: return "base_grid";
  }
  return "input";
}

VertexKind vertex_kind_from_string(std::string_view name) {
  for (auto k : {VertexKind::Input, VertexKind::Break, VertexKind::SecondaryBreak,
                 VertexKind::EllSteiner, VertexKind::CoreApex, VertexKind::Bend,
                 VertexKind::BaseGrid}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::Parse, "unknown vertex kind '" + std::string(name) + "'");
}

std::size_t SteinerGraph::add_vertex(std::span<const double> coords, VertexKind kind) {
  if (coords.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "vertex dimension");
  coords_.insert(coords_.end(), coords.begin(), coords.end());
  kinds_.push_back(kind);
  return kinds_.size() - 1;
}

void SteinerGraph::add_edge(std::size_t u, std::size_t v) {
  if (u >= vertex_count() || v >= vertex_count()) {
    throw Error(ErrorCode::OutOfRange, "edge endpoint out of range");
  }
  edges_.push_back({u, v, dist(coords(u), coords(v))});
}

Point SteinerGraph::point(std::size_t v) const {
  auto c = coords(v);
  return Point(std::vector<double>(c.begin(), c.end()));
}

Adjacency::Adjacency(std::size_t n, std::span<const WeightedEdge> edges) : offset(n + 1, 0) {
  for (const auto& e : edges) {
    ++offset[e.u + 1];
    ++offset[e.v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offset[i + 1] += offset[i];
  arcs.resize(offset[n]);
  std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
  for (const auto& e : edges) {
    arcs[fill[e.u]++] = {e.v, e.w};
    arcs[fill[e.v]++] = {e.u, e.w};
  }
}

}  // namespace slt
