#pragma once

// Instance builders and independent oracles shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "slt/geometry.hpp"
#include "slt/graph.hpp"

namespace slt::testing {

inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline PointCloud random_cloud(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PointCloud pc;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> c(d);
    for (auto& x : c) x = uniform01(rng);
    pc.points.emplace_back(std::move(c));
  }
  pc.root = 0;
  return pc;
}

/// Random orthogonal d x d matrix (Gram-Schmidt on Gaussian columns).
inline std::vector<std::vector<double>> random_rotation(std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<std::vector<double>> q;
  while (q.size() < d) {
    std::vector<double> v(d);
    for (auto& x : v) x = gauss(rng);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : q) {
        double dp = 0;
        for (std::size_t i = 0; i < d; ++i) dp += u[i] * v[i];
        for (std::size_t i = 0; i < d; ++i) v[i] -= dp * u[i];
      }
    }
    double nv = 0;
    for (double x : v) nv += x * x;
    nv = std::sqrt(nv);
    if (nv < 1e-6) continue;
    for (auto& x : v) x /= nv;
    q.push_back(v);
  }
  return q;
}

/// x -> scale * Q x + shift, with zero padding to Q's dimension.
inline PointCloud transform(const PointCloud& pc, const std::vector<std::vector<double>>& q, double scale,
                            const std::vector<double>& shift) {
  const std::size_t d = q.size();
  PointCloud out;
  out.root = pc.root;
  for (const auto& p : pc.points) {
    std::vector<double> c(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < p.dim(); ++j) c[i] += q[i][j] * p[j];
      c[i] = scale * c[i] + (shift.empty() ? 0.0 : shift[i]);
    }
    out.points.emplace_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Oracles

inline double naive_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

inline double polyline_length(const std::vector<Point>& pts) {
  double s = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) s += naive_dist(pts[i].vec(), pts[i + 1].vec());
  return s;
}

/// Root distances inside a tree by explicit stack traversal.
inline std::vector<double> tree_distances(const SteinerGraph& tree, std::size_t root) {
  const std::size_t n = tree.vertex_count();
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& e : tree.edges()) {
    const double w = naive_dist(tree.point(e.u).vec(), tree.point(e.v).vec());
    adj[e.u].push_back({e.v, w});
    adj[e.v].push_back({e.u, w});
  }
  std::vector<double> d(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> stack{root};
  d[root] = 0;
  while (!stack.empty()) {
    const std::size_t x = stack.back();
    stack.pop_back();
    for (const auto& [y, w] : adj[x]) {
      if (std::isinf(d[y])) {
        d[y] = d[x] + w;
        stack.push_back(y);
      }
    }
  }
  return d;
}

/// Largest graph-distance / Euclidean-distance ratio over all pairs (Floyd-Warshall).
inline double spanner_ratio(const std::vector<Point>& pts, const std::vector<WeightedEdge>& edges) {
  const std::size_t n = pts.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, std::numeric_limits<double>::infinity()));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& e : edges) {
    const double w = naive_dist(pts[e.u].vec(), pts[e.v].vec());
    d[e.u][e.v] = d[e.v][e.u] = std::min(d[e.u][e.v], w);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  double worst = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) worst = std::max(worst, d[i][j] / naive_dist(pts[i].vec(), pts[j].vec()));
  return worst;
}

/// First root of a continuous f on [lo, hi] with f(lo) < 0, found by dense sampling and
/// bisection; returns NaN when f stays negative at every sample.
inline double first_root(const std::function<double(double)>& f, double lo, double hi, int samples = 20000) {
  double prev = lo;
  for (int k = 1; k <= samples; ++k) {
    const double x = lo + (hi - lo) * k / samples;
    if (f(x) >= 0) {
      double a = prev, b = x;
      for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        (f(m) >= 0 ? b : a) = m;
      }
      return b;
    }
    prev = x;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace slt::testing
