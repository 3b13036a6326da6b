#include "slt/pyramid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <queue>
#include <tuple>

#include "slt/error.hpp"

namespace slt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Greedy spanner state: a growing graph plus, per vertex, upper bounds on graph distances
// from earlier searches (the graph only grows, so old distances stay valid upper bounds).
class GreedyState {
 public:
  using Entry = std::pair<std::uint32_t, double>;

  GreedyState(const std::vector<Point>& pts, double t)
      : pts_(pts), t_(t), adj_(pts.size()), cache_(pts.size()), dist_(pts.size(), kInf) {}

  void process(std::size_t u, std::size_t v, double w, double cutoff) {
    const double lim = t_ * w;
    if (std::min(lookup(u, v), lookup(v, u)) <= lim) return;
    search(u, cutoff);
    if (lookup(u, v) <= lim) return;
    adj_[u].push_back({static_cast<std::uint32_t>(v), w});
    adj_[v].push_back({static_cast<std::uint32_t>(u), w});
    edges_.push_back({std::min(u, v), std::max(u, v), w});
    remember(u, v, w);
    remember(v, u, w);
  }

  const std::vector<WeightedEdge>& edges() const { return edges_; }

 private:
  double lookup(std::size_t u, std::size_t v) const {
    const auto& c = cache_[u];
    auto it = std::lower_bound(c.begin(), c.end(), Entry{static_cast<std::uint32_t>(v), -kInf});
    return it != c.end() && it->first == v ? it->second : kInf;
  }

  void remember(std::size_t u, std::size_t v, double d) {
    auto& c = cache_[u];
    auto it = std::lower_bound(c.begin(), c.end(), Entry{static_cast<std::uint32_t>(v), -kInf});
    if (it != c.end() && it->first == v) {
      it->second = std::min(it->second, d);
    } else {
      c.insert(it, {static_cast<std::uint32_t>(v), d});
    }
  }

  void search(std::size_t src, double cutoff) {
    using Item = std::pair<double, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    std::vector<std::uint32_t> touched;
    std::vector<Entry> settled;
    dist_[src] = 0.0;
    touched.push_back(static_cast<std::uint32_t>(src));
    pq.push({0.0, static_cast<std::uint32_t>(src)});
    while (!pq.empty()) {
      const auto [d, x] = pq.top();
      pq.pop();
      if (d > dist_[x]) continue;
      settled.push_back({x, d});
      for (const auto& [y, w] : adj_[x]) {
        const double nd = d + w;
        if (nd > cutoff || nd >= dist_[y]) continue;
        if (dist_[y] == kInf) touched.push_back(y);
        dist_[y] = nd;
        pq.push({nd, y});
      }
    }
    for (auto x : touched) dist_[x] = kInf;
    std::sort(settled.begin(), settled.end());
    cache_[src] = std::move(settled);
  }

  const std::vector<Point>& pts_;
  double t_;
  std::vector<std::vector<Entry>> adj_;
  std::vector<std::vector<Entry>> cache_;
  std::vector<double> dist_;
  std::vector<WeightedEdge> edges_;
};

struct Pair {
  double w;
  std::uint32_t u;
  std::uint32_t v;
  bool operator<(const Pair& o) const { return std::tie(w, u, v) < std::tie(o.w, o.u, o.v); }
};

// Every pair with lo < w <= hi, sorted.
std::vector<Pair> pairs_in_band(const std::vector<Point>& pts, double lo, double hi) {
  std::vector<Pair> out;
  for (std::size_t u = 0; u < pts.size(); ++u) {
    for (std::size_t v = u + 1; v < pts.size(); ++v) {
      const double w = dist(pts[u], pts[v]);
      if (w > lo && w <= hi) out.push_back({w, static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v)});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// True when every pair longer than `lo` is already within factor t in the graph.
bool spans_beyond(const std::vector<Point>& pts, const std::vector<WeightedEdge>& edges, double t, double lo) {
  const std::size_t n = pts.size();
  const Adjacency adj(n, edges);
  using Item = std::pair<double, std::uint32_t>;
  std::vector<double> dist_to(n, kInf);
  std::vector<Item> heap;
  for (std::size_t u = 0; u < n; ++u) {
    std::fill(dist_to.begin(), dist_to.end(), kInf);
    dist_to[u] = 0.0;
    heap.assign(1, {0.0, static_cast<std::uint32_t>(u)});
    while (!heap.empty()) {
      std::pop_heap(heap.begin(), heap.end(), std::greater<>());
      const auto [d, x] = heap.back();
      heap.pop_back();
      if (d > dist_to[x]) continue;
      for (const auto& arc : adj.out(x)) {
        const double nd = d + arc.w;
        if (nd < dist_to[arc.to]) {
          dist_to[arc.to] = nd;
          heap.push_back({nd, static_cast<std::uint32_t>(arc.to)});
          std::push_heap(heap.begin(), heap.end(), std::greater<>());
        }
      }
    }
    for (std::size_t v = u + 1; v < n; ++v) {
      if (dist_to[v] <= t * lo) continue;
      const double w = dist(pts[u], pts[v]);
      if (w > lo && dist_to[v] > t * w) return false;
    }
  }
  return true;
}

// Multi-index digits of `index` in base `base`, most significant first.
std::vector<std::size_t> digits(std::size_t index, std::size_t base, std::size_t count) {
  std::vector<std::size_t> out(count);
  for (std::size_t j = count; j-- > 0;) {
    out[j] = index % base;
    index /= base;
  }
  return out;
}

std::size_t encode(const std::vector<std::size_t>& idx, std::size_t base) {
  std::size_t out = 0;
  for (std::size_t x : idx) out = out * base + x;
  return out;
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

Pyramid make_pyramid(const Point& base_center, double half_side, double apex_angle, std::size_t axis) {
  const std::size_t d = base_center.dim();
  if (axis >= d) throw Error(ErrorCode::OutOfRange, "axis out of range");
  if (!(apex_angle > 0.0 && apex_angle < std::numbers::pi)) {
    throw Error(ErrorCode::AngleOutOfRange, "apex angle must lie in (0, pi)");
  }
  const double half_diag = half_side * std::sqrt(static_cast<double>(d - 1));
  Point apex = base_center;
  apex[axis] += half_diag / std::tan(apex_angle / 2);
  return {base_center, half_side, apex, apex_angle, axis};
}

std::size_t GridSpec::per_axis(std::size_t d) const {
  if (d < 3) throw Error(ErrorCode::DimensionTooSmall, "grid needs d >= 3");
  const double r = std::pow(static_cast<double>(n), 1.0 / static_cast<double>(d - 1));
  auto p = static_cast<std::size_t>(std::llround(r));
  if (ipow(p, d - 1) < n) p = static_cast<std::size_t>(std::ceil(r));
  while (ipow(p, d - 1) < n) ++p;
  return std::max<std::size_t>(p, 1);
}

double GridSpec::regime_min(std::size_t d, double eps) {
  if (d < 3) throw Error(ErrorCode::DimensionTooSmall, "regime defined for d >= 3");
  const double dd = static_cast<double>(d);
  return std::pow(2.0 * std::sqrt(dd) * std::pow(eps, 0.66 - dd / 2), (dd - 1) / (dd - 2));
}

std::vector<WeightedEdge> greedy_spanner(const std::vector<Point>& pts, double t) {
  if (!(t > 1.0)) throw Error(ErrorCode::InvalidArgument, "spanner stretch must exceed 1");
  const std::size_t n = pts.size();
  if (n < 2) return {};
  GreedyState state(pts, t);

  constexpr std::size_t kAllPairs = 2'000'000;
  if (n * (n - 1) / 2 <= kAllPairs) {
    const auto pairs = pairs_in_band(pts, -1.0, kInf);
    const double cutoff = t * pairs.back().w;
    for (const auto& p : pairs) state.process(p.u, p.v, p.w, cutoff);
    return state.edges();
  }

  // Large inputs: run the greedy on short pairs band by band and stop as soon as all
  // longer pairs are spanned already (the greedy would not add any of them).
  double reach = 0.0;
  double max_w = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    double nn = kInf;
    for (std::size_t v = 0; v < n; ++v) {
      if (v == u) continue;
      const double w = dist(pts[u], pts[v]);
      nn = std::min(nn, w);
      max_w = std::max(max_w, w);
    }
    reach = std::max(reach, nn);
  }
  double lo = -1.0;
  double hi = 3.0 * reach;
  while (true) {
    const auto pairs = pairs_in_band(pts, lo, hi);
    for (const auto& p : pairs) state.process(p.u, p.v, p.w, t * hi);
    if (hi >= max_w || spans_beyond(pts, state.edges(), t, hi)) break;
    lo = hi;
    hi *= 2.0;
  }
  return state.edges();
}

double pyramid_mst_lower_bound(const GridSpec& grid, std::size_t d, double eps) {
  if (d < 3) throw Error(ErrorCode::DimensionTooSmall, "pyramid needs d >= 3");
  if (grid.n < 2) throw Error(ErrorCode::InvalidArgument, "lower bound needs n >= 2");
  const double n = static_cast<double>(grid.n);
  return n * std::sqrt(eps / static_cast<double>(d)) / (2.0 * std::pow(n, 1.0 / static_cast<double>(d - 1)));
}

PointCloud pyramid_instance(std::size_t d, double eps, const GridSpec& grid) {
  if (d < 3) throw Error(ErrorCode::DimensionTooSmall, "pyramid needs d >= 3");
  if (!(eps > 0.0 && eps < std::numbers::pi * std::numbers::pi)) {
    throw Error(ErrorCode::EpsOutOfRange, "eps must lie in (0, pi^2)");
  }
  const std::size_t m = d - 1;
  const double alpha = std::sqrt(eps);
  const double side = 2.0 * std::sin(alpha / 2) / std::sqrt(static_cast<double>(m));
  const std::size_t per = grid.per_axis(d);
  PointCloud pts;
  std::vector<double> c(d, 0.0);
  c[0] = std::cos(alpha / 2);
  pts.points.emplace_back(c);
  for (std::size_t j = 0; j < grid.n; ++j) {
    const auto idx = digits(j, per, m);
    c[0] = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
      c[a + 1] = -side / 2 + (static_cast<double>(idx[a]) + 0.5) * side / static_cast<double>(per);
    }
    pts.points.emplace_back(c);
  }
  return pts;
}

PyramidCore build_pyramid_core(std::size_t d, double eps, const GridSpec& grid, double lambda) {
  if (d < 3) throw Error(ErrorCode::DimensionTooSmall, "pyramid needs d >= 3");
  if (!(eps > 0.0 && eps < std::numbers::pi * std::numbers::pi)) {
    throw Error(ErrorCode::EpsOutOfRange, "eps must lie in (0, pi^2)");
  }
  if (!(lambda >= 1.0)) throw Error(ErrorCode::InvalidArgument, "lambda must be at least 1");
  if (grid.n < 1) throw Error(ErrorCode::InvalidArgument, "grid needs at least one point");

  PyramidCore out;
  const std::size_t m = d - 1;  // base dimension
  const double alpha = std::sqrt(eps);
  const int k = std::max(0, static_cast<int>(std::ceil(std::log2(std::sqrt(1.0 / eps)) - 1e-9))) + 1;
  if (alpha * std::pow(lambda, k) >= std::numbers::pi / 2) {
    throw Error(ErrorCode::AngleOverflow, "alpha * lambda^k reaches pi/2");
  }
  out.levels = k;
  out.alpha = alpha;
  const double side = 2.0 * std::sin(alpha / 2) / std::sqrt(static_cast<double>(m));
  const double half = side / 2;

  SteinerGraph& g = out.graph;
  g = SteinerGraph(d);
  auto point_at = [&](double height, const std::vector<double>& base) {
    std::vector<double> c(d, 0.0);
    c[0] = height;
    std::copy(base.begin(), base.end(), c.begin() + 1);
    return Point(std::move(c));
  };

  // Apices, level by level; level-i cells are indexed lexicographically.
  std::vector<std::vector<std::size_t>> apex_id(k + 1);
  out.pyramids.resize(k + 1);
  for (int i = 0; i <= k; ++i) {
    const std::size_t cells = std::size_t{1} << i;
    const std::size_t count = ipow(cells, m);
    const double cell_side = side / static_cast<double>(cells);
    const double angle = alpha * std::pow(lambda, i);
    for (std::size_t c = 0; c < count; ++c) {
      const auto idx = digits(c, cells, m);
      std::vector<double> center(m);
      for (std::size_t a = 0; a < m; ++a) center[a] = -half + (static_cast<double>(idx[a]) + 0.5) * cell_side;
      Pyramid p = make_pyramid(point_at(0.0, center), cell_side / 2, angle, 0);
      if (i == 0) p.apex[0] = std::cos(alpha / 2);
      apex_id[i].push_back(g.add_vertex(p.apex, i == 0 ? VertexKind::Input : VertexKind::CoreApex));
      out.pyramids[i].push_back(std::move(p));
    }
  }

  // Corners of the level-k cells, then the grid points not coinciding with a corner.
  const std::size_t corners_per_axis = (std::size_t{1} << k) + 1;
  const std::size_t corner_count = ipow(corners_per_axis, m);
  std::vector<std::size_t> base_id;
  for (std::size_t c = 0; c < corner_count; ++c) {
    const auto idx = digits(c, corners_per_axis, m);
    std::vector<double> pos(m);
    for (std::size_t a = 0; a < m; ++a) {
      pos[a] = -half + side * static_cast<double>(idx[a]) / static_cast<double>(corners_per_axis - 1);
    }
    base_id.push_back(g.add_vertex(point_at(0.0, pos), VertexKind::BaseGrid));
    out.base_points.emplace_back(std::move(pos));
  }
  const std::size_t per = grid.per_axis(d);
  const std::size_t cells_k = corners_per_axis - 1;
  out.inputs = pyramid_instance(d, eps, grid);
  std::vector<std::size_t> input_vertex{apex_id[0][0]};
  for (std::size_t j = 0; j < grid.n; ++j) {
    const auto idx = digits(j, per, m);
    const Point& p = out.inputs.points[j + 1];
    bool on_corner = true;
    std::vector<std::size_t> corner(m);
    for (std::size_t a = 0; a < m; ++a) {
      // (2 idx + 1) / (2 per) == c / cells_k
      const std::size_t num = (2 * idx[a] + 1) * cells_k;
      on_corner = on_corner && num % (2 * per) == 0;
      corner[a] = num / (2 * per);
    }
    std::size_t id;
    if (on_corner) {
      id = base_id[encode(corner, corners_per_axis)];
      g.set_kind(id, VertexKind::Input);
    } else {
      id = g.add_vertex(p, VertexKind::Input);
      base_id.push_back(id);
      out.base_points.emplace_back(std::vector<double>(p.vec().begin() + 1, p.vec().end()));
    }
    input_vertex.push_back(id);
  }

  // Apex chains.
  out.level_weight.assign(k + 1, 0.0);
  out.level_gap.assign(k + 1, 0.0);
  out.level_bound.assign(k + 1, 0.0);
  const std::size_t children = std::size_t{1} << m;
  for (int i = 0; i <= k; ++i) {
    const std::size_t cells = std::size_t{1} << i;
    for (std::size_t c = 0; c < apex_id[i].size(); ++c) {
      const auto idx = digits(c, cells, m);
      for (std::size_t b = 0; b < children; ++b) {
        std::vector<std::size_t> child(m);
        for (std::size_t a = 0; a < m; ++a) {
          const std::size_t bit = (b >> (m - 1 - a)) & 1;
          child[a] = i < k ? 2 * idx[a] + bit : idx[a] + bit;
        }
        const std::size_t to = i < k ? apex_id[i + 1][encode(child, 2 * cells)]
                                     : base_id[encode(child, corners_per_axis)];
        g.add_edge(apex_id[i][c], to);
        const double len = g.edges().back().w;
        out.level_weight[i] += len;
        out.level_gap[i] = len;
      }
    }
    out.level_bound[i] = std::ldexp(1.0, static_cast<int>(d)) * std::pow(std::ldexp(1.0, static_cast<int>(d) - 2) / lambda, i);
  }

  out.base_spanner = greedy_spanner(out.base_points, 1.25);
  for (const auto& e : out.base_spanner) g.add_edge(base_id[e.u], base_id[e.v]);
  out.base_vertices = out.base_points.size();
  out.spanner_edges = out.base_spanner.size();

  out.tree = shortest_path_tree(g, apex_id[0][0], input_vertex, out.tree_input_vertex);
  SltReport& rep = out.report;
  rep.method = "pyramid";
  rep.eps = eps;
  rep.lambda = lambda;
  rep.pruned_vertices = g.vertex_count() - out.tree.vertex_count();
  measure_tree(rep, out.tree, 0, out.tree_input_vertex, out.inputs);
  const Point& s = out.inputs.points.front();
  for (std::size_t j = 1; j < out.inputs.size(); ++j) {
    out.max_path_length = std::max(out.max_path_length, rep.per_point_stretch[j] * dist(s, out.inputs.points[j]));
  }
  out.path_bound = std::cos(alpha / 2) + 17.0 / 16.0 * eps;
  if (grid.n >= 2) out.mst_lower_bound = pyramid_mst_lower_bound(grid, d, eps);
  out.lightness_trend = std::ldexp(1.0, static_cast<int>(d)) * std::pow(eps, 1.16 - static_cast<double>(d) / 2);
  out.in_regime = grid.in_regime(d, eps);
  return out;
}

}  // namespace slt
