#include "slt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <tuple>

#include "slt/error.hpp"
#include "slt/mst_path.hpp"

namespace slt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ShortestPaths run_dijkstra(const Adjacency& adj, std::size_t source, double cutoff) {
  const std::size_t n = adj.size();
  if (source >= n) throw Error(ErrorCode::OutOfRange, "source vertex out of range");
  ShortestPaths sp{std::vector<double>(n, kInf), std::vector<std::size_t>(n, kNoParent)};
  std::vector<bool> done(n, false);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  sp.dist[source] = 0.0;
  pq.emplace(0.0, source);
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (done[u] || d != sp.dist[u]) continue;
    if (d > cutoff) {
      // Everything left in the queue is farther than the cutoff.
      for (std::size_t v = 0; v < n; ++v) {
        if (!done[v]) {
          sp.dist[v] = kInf;
          sp.parent[v] = kNoParent;
        }
      }
      break;
    }
    done[u] = true;
    for (const auto& a : adj.out(u)) {
      if (done[a.to]) continue;
      const double nd = d + a.w;
      if (nd < sp.dist[a.to] || (nd == sp.dist[a.to] && u < sp.parent[a.to])) {
        const bool improved = nd < sp.dist[a.to];
        sp.dist[a.to] = nd;
        sp.parent[a.to] = u;
        if (improved) pq.emplace(nd, a.to);
      }
    }
  }
  return sp;
}

}  // namespace

ShortestPaths dijkstra(const Adjacency& adj, std::size_t source) {
  return run_dijkstra(adj, source, kInf);
}

ShortestPaths dijkstra_bounded(const Adjacency& adj, std::size_t source, double cutoff) {
  return run_dijkstra(adj, source, cutoff);
}

ShortestPaths oracle_spt(std::size_t n, std::span<const WeightedEdge> edges, std::size_t source) {
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) throw Error(ErrorCode::OutOfRange, "edge endpoint out of range");
    if (!(e.w >= 0.0)) throw Error(ErrorCode::InvalidArgument, "negative edge weight");
  }
  const Adjacency adj(n, edges);
  auto sp = dijkstra(adj, source);
  for (std::size_t v = 0; v < n; ++v) {
    if (sp.dist[v] == kInf) {
      throw Error(ErrorCode::Disconnected, "vertex " + std::to_string(v) + " unreachable");
    }
  }
  return sp;
}

ShortestPaths oracle_spt(const SteinerGraph& g, std::size_t source) {
  return oracle_spt(g.vertex_count(), g.edges(), source);
}

std::vector<std::vector<double>> floyd_warshall(std::size_t n, std::span<const WeightedEdge> edges) {
  std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const auto& e : edges) {
    d[e.u][e.v] = std::min(d[e.u][e.v], e.w);
    d[e.v][e.u] = std::min(d[e.v][e.u], e.w);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i][k] == kInf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const double via = d[i][k] + d[k][j];
        if (via < d[i][j]) d[i][j] = via;
      }
    }
  }
  return d;
}

Tree kruskal_mst(const PointCloud& pts) {
  pts.validate();
  const std::size_t n = pts.size();
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      pairs.emplace_back(dist(pts.points[i], pts.points[j]), i, j);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<std::size_t> uf(n);
  std::iota(uf.begin(), uf.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (uf[x] != x) {
      uf[x] = uf[uf[x]];
      x = uf[x];
    }
    return x;
  };
  Tree t;
  t.n = n;
  t.root = pts.root;
  for (const auto& [w, i, j] : pairs) {
    const auto a = find(i);
    const auto b = find(j);
    if (a == b) continue;
    uf[a] = b;
    t.edges.push_back({i, j, w});
    if (t.edges.size() + 1 == n) break;
  }
  return t;
}

std::vector<double> root_stretch(const SteinerGraph& tree, std::size_t root,
                                 std::span<const std::size_t> targets) {
  const std::size_t n = tree.vertex_count();
  if (root >= n) throw Error(ErrorCode::OutOfRange, "root out of range");
  if (tree.edge_count() + 1 != n) {
    throw Error(ErrorCode::InvalidArgument, "not a tree: " + std::to_string(tree.edge_count()) +
                                                " edges for " + std::to_string(n) + " vertices");
  }
  const Adjacency adj(n, tree.edges());
  std::vector<double> depth(n, kInf);
  std::vector<std::size_t> stack{root};
  depth[root] = 0.0;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    for (const auto& a : adj.out(u)) {
      if (depth[a.to] != kInf) continue;
      depth[a.to] = depth[u] + a.w;
      ++reached;
      stack.push_back(a.to);
    }
  }
  // With |E| = |V| - 1, a traversal that misses vertices means a cycle elsewhere.
  const auto rp = tree.coords(root);
  std::vector<double> out;
  out.reserve(targets.size());
  for (std::size_t t : targets) {
    if (t >= n) throw Error(ErrorCode::OutOfRange, "target out of range");
    if (depth[t] == kInf) {
      throw Error(ErrorCode::Unreachable, "vertex " + std::to_string(t) + " not connected to root");
    }
    const double d = dist(rp, tree.coords(t));
    out.push_back(d == 0.0 ? 1.0 : depth[t] / d);
  }
  if (reached != n) throw Error(ErrorCode::InvalidArgument, "not a tree: contains a cycle");
  return out;
}

double mst_weight(const PointCloud& pts) { return euclidean_mst(pts).weight(); }

double lightness(double tree_weight, const PointCloud& pts) {
  if (pts.size() < 2) throw Error(ErrorCode::InvalidArgument, "lightness needs two points");
  return tree_weight / mst_weight(pts);
}

void measure_tree(SltReport& report, const SteinerGraph& tree, std::size_t tree_root,
                  std::span<const std::size_t> input_vertex, const PointCloud& pts) {
  report.n = pts.size();
  report.d = pts.dim();
  report.per_point_stretch = root_stretch(tree, tree_root, input_vertex);
  report.max_stretch = *std::max_element(report.per_point_stretch.begin(),
                                         report.per_point_stretch.end());
  report.tree_weight = tree.weight();
  report.mst_weight = mst_weight(pts);
  report.lightness = report.tree_weight / report.mst_weight;
}

SteinerGraph shortest_path_tree(const SteinerGraph& g, std::size_t root,
                                const std::vector<std::size_t>& targets,
                                std::vector<std::size_t>& target_ids) {
  const std::size_t n = g.vertex_count();
  const Adjacency adj(n, g.edges());
  const ShortestPaths sp = dijkstra(adj, root);
  std::vector<char> keep(n, 0);
  keep[root] = 1;
  for (std::size_t t : targets) {
    if (!std::isfinite(sp.dist[t])) {
      throw Error(ErrorCode::Disconnected, "vertex " + std::to_string(t) + " unreachable from the root");
    }
    for (std::size_t v = t; !keep[v]; v = sp.parent[v]) keep[v] = 1;
  }
  std::vector<std::size_t> id(n, kNoParent);
  SteinerGraph tree(g.dim());
  id[root] = tree.add_vertex(g.coords(root), g.kind(root));
  for (std::size_t v = 0; v < n; ++v) {
    if (keep[v] && v != root) id[v] = tree.add_vertex(g.coords(v), g.kind(v));
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (keep[v] && v != root) tree.add_edge(id[sp.parent[v]], id[v]);
  }
  target_ids.clear();
  for (std::size_t t : targets) target_ids.push_back(id[t]);
  return tree;
}

}  // namespace slt
