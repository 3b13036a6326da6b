#include "slt/mst_path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "slt/error.hpp"

namespace slt {

namespace {

struct Key {
  double w = std::numeric_limits<double>::infinity();
  std::size_t lo = std::numeric_limits<std::size_t>::max();
  std::size_t hi = std::numeric_limits<std::size_t>::max();

  bool operator<(const Key& o) const {
    if (w != o.w) return w < o.w;
    if (lo != o.lo) return lo < o.lo;
    return hi < o.hi;
  }
};

bool coincident_span(std::span<const double> p, std::span<const double> q) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (std::abs(p[i] - q[i]) >= kCoincidentTol) return false;
  }
  return true;
}

}  // namespace

Tree euclidean_mst(const PointCloud& pts) {
  pts.validate();
  const std::size_t n = pts.size();
  Tree tree;
  tree.n = n;
  tree.root = pts.root;
  if (n == 1) return tree;

  std::vector<Key> key(n);
  std::vector<std::size_t> parent(n, n);
  std::vector<bool> in_tree(n, false);
  std::vector<std::pair<std::size_t, std::size_t>> duplicates;

  std::size_t cur = pts.root;
  in_tree[cur] = true;
  tree.edges.reserve(n - 1);
  for (std::size_t step = 1; step < n; ++step) {
    const auto cp = pts.points[cur].coords();
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      const auto vp = pts.points[v].coords();
      if (coincident_span(cp, vp)) duplicates.emplace_back(std::min(cur, v), std::max(cur, v));
      const Key cand{dist(cp, vp), std::min(cur, v), std::max(cur, v)};
      if (cand < key[v]) {
        key[v] = cand;
        parent[v] = cur;
      }
      if (best == n || key[v] < key[best]) best = v;
    }
    in_tree[best] = true;
    tree.edges.push_back({parent[best], best, key[best].w});
    cur = best;
  }

  if (!duplicates.empty()) {
    std::sort(duplicates.begin(), duplicates.end());
    std::string msg = "coincident points:";
    for (const auto& [a, b] : duplicates) msg += " (" + std::to_string(a) + "," + std::to_string(b) + ")";
    throw Error(ErrorCode::DuplicatePoints, msg);
  }
  return tree;
}

HamPath dfs_hamiltonian(const Tree& tree, const PointCloud& pts) {
  pts.validate();
  if (tree.n != pts.size() || tree.root != pts.root) {
    throw Error(ErrorCode::InvalidArgument, "tree does not match the point cloud");
  }
  if (tree.edges.size() + 1 != tree.n) {
    throw Error(ErrorCode::InvalidArgument, "tree must have n-1 edges");
  }
  const std::size_t n = tree.n;
  std::vector<std::vector<std::size_t>> nbr(n);
  for (const auto& e : tree.edges) {
    if (e.u >= n || e.v >= n) throw Error(ErrorCode::OutOfRange, "tree edge endpoint");
    nbr[e.u].push_back(e.v);
    nbr[e.v].push_back(e.u);
  }
  for (auto& l : nbr) std::sort(l.begin(), l.end());

  HamPath h;
  h.order.reserve(n);
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{tree.root};
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    if (seen[v]) continue;
    seen[v] = true;
    h.order.push_back(v);
    for (auto it = nbr[v].rbegin(); it != nbr[v].rend(); ++it) {
      if (!seen[*it]) stack.push_back(*it);
    }
  }
  if (h.order.size() != n) throw Error(ErrorCode::Disconnected, "tree is not connected");

  std::vector<Point> geom;
  geom.reserve(n);
  for (std::size_t v : h.order) geom.push_back(pts.points[v]);
  h.geometry = Polyline(std::move(geom));
  return h;
}

}  // namespace slt
