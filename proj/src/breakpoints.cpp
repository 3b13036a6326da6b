#include "slt/breakpoints.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slt/error.hpp"

namespace slt {

namespace {

// Along one segment q(t) = p + t*u, |u| = 1:
//   g(t) = (L0 + t) - sqrt(eps) * sqrt(t^2 + 2*b*t + c)
// with L0 the path length from the current break point to p, b = <u, p - s> and
// c = |p - s|^2. g is concave, so the zero set is at most two points.
struct SegmentCrossing {
  double L0, b, c, eps, t_lo, len;

  double g(double t) const {
    const double r2 = std::max(0.0, t * t + 2.0 * b * t + c);
    return (L0 + t) - std::sqrt(eps) * std::sqrt(r2);
  }

  // Smallest t in [t_lo, len] with g(t) = 0, or a negative value if g < 0 throughout.
  double first_root() const {
    const double A = 1.0 - eps;
    const double B = 2.0 * (L0 - eps * b);
    const double C = L0 * L0 - eps * c;
    if (std::abs(A) < 1e-14) return bisect();
    double disc = B * B - 4.0 * A * C;
    if (disc < 0.0) {
      if (disc < -1e-12 * (B * B + std::abs(4.0 * A * C))) return -1.0;
      disc = 0.0;
    }
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (B + (B >= 0.0 ? sq : -sq));
    double r1 = q / A;
    double r2 = (q != 0.0) ? C / q : r1;
    if (r1 > r2) std::swap(r1, r2);
    const double slack = 1e-14 * std::max(1.0, len);
    for (double t : {r1, r2}) {
      // Roots with L0 + t < 0 belong to the mirrored equation.
      if (t < t_lo - slack || t > len + slack || L0 + t < -slack) continue;
      return std::clamp(t, t_lo, len);
    }
    return -1.0;
  }

  // Fallback for an ill-conditioned quadratic: locate the concave maximum, then bisect.
  double bisect() const {
    double lo = t_lo;
    double hi = len;
    for (int it = 0; it < 200; ++it) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      if (g(m1) < g(m2)) lo = m1; else hi = m2;
    }
    const double t_max = 0.5 * (lo + hi);
    if (g(t_max) < 0.0) return -1.0;
    if (g(t_lo) >= 0.0) return t_lo;
    lo = t_lo;
    hi = t_max;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (g(mid) < 0.0) lo = mid; else hi = mid;
    }
    return hi;
  }
};

}  // namespace

BreakpointSet select_breakpoints(const HamPath& path, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(ErrorCode::EpsOutOfRange, "eps must lie in (0, 1), got " + std::to_string(eps));
  }
  const Polyline& poly = path.geometry;
  if (poly.empty()) throw Error(ErrorCode::InvalidArgument, "empty path");

  BreakpointSet out;
  out.eps = eps;
  const auto& vs = poly.vertices();
  const auto& cum = poly.cum_len();
  const std::size_t n = vs.size();
  const Point& s = vs.front();
  out.positions.push_back({0, 0.0, 0.0});
  out.points.push_back(s);
  if (n == 1) return out;

  // Root rule: no point q != s satisfies the defining equation from b_1 = s, so the
  // second break point is the far end of the first edge.
  if (n == 2) {
    out.positions.push_back({0, poly.segment_length(0), cum[1]});
  } else {
    out.positions.push_back({1, 0.0, cum[1]});
  }
  out.points.push_back(vs[1]);

  const double total = poly.length();
  const double tiny = 1e-12 * total;
  // Break points would accumulate geometrically at the root.
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const Point& p = vs[j];
    const Point& q = vs[j + 1];
    const double len = poly.segment_length(j);
    double t = 0.0;
    if (len > 0.0) {
      for (std::size_t a = 0; a < p.dim(); ++a) t += (s[a] - p[a]) * (q[a] - p[a]);
      t = std::clamp(t / (len * len), 0.0, 1.0);
    }
    double d2 = 0.0;
    for (std::size_t a = 0; a < p.dim(); ++a) {
      const double x = p[a] + t * (q[a] - p[a]) - s[a];
      d2 += x * x;
    }
    if (std::sqrt(d2) <= tiny) {
      throw Error(ErrorCode::DegenerateRay, "path passes through the root on edge " + std::to_string(j));
    }
  }
  double arc = cum[1];
  std::size_t seg = 1;
  double t_start = 0.0;
  while (arc < total) {
    bool found = false;
    for (std::size_t j = seg; j + 1 < n && !found; ++j) {
      const double len = poly.segment_length(j);
      if (len == 0.0) continue;
      const Point& p = vs[j];
      const Point& q = vs[j + 1];
      double b = 0.0;
      double c = 0.0;
      for (std::size_t a = 0; a < p.dim(); ++a) {
        const double u = (q[a] - p[a]) / len;
        const double ps = p[a] - s[a];
        b += u * ps;
        c += ps * ps;
      }
      const SegmentCrossing sc{cum[j] - arc, b, c, eps, j == seg ? t_start : 0.0, len};
      const double t = sc.first_root();
      if (t < 0.0) continue;
      found = true;

      ArcPosition pos;
      if (len - t <= tiny) {
        pos = (j + 2 < n) ? ArcPosition{j + 1, 0.0, cum[j + 1]} : ArcPosition{j, len, cum[j + 1]};
      } else {
        pos = {j, t, cum[j] + t};
      }
      Point pt = point_at(poly, pos);
      if (pos.arc_len - arc <= tiny || dist(s, pt) <= tiny) {
        throw Error(ErrorCode::DegenerateRay, "path passes through the root near arc " +
                                                  std::to_string(pos.arc_len));
      }
      out.positions.push_back(pos);
      out.points.push_back(std::move(pt));
      arc = pos.arc_len;
      seg = pos.segment_index;
      t_start = pos.t;
    }
    if (!found) {
      out.positions.push_back({n - 2, poly.segment_length(n - 2), total});
      out.points.push_back(vs.back());
      out.last_truncated = true;
      break;
    }
  }
  return out;
}

SubdividedPath subdivide(const HamPath& path, const BreakpointSet& bps) {
  const Polyline& poly = path.geometry;
  const auto& vs = poly.vertices();
  const std::size_t n = vs.size();
  SubdividedPath out;
  out.last_truncated = bps.last_truncated;

  std::vector<Point> hv;
  hv.reserve(n + bps.size());
  std::vector<std::size_t> vertex_at(n);
  std::vector<std::size_t> bp_at(bps.size(), kNotInput);
  std::size_t next_bp = 0;
  for (std::size_t j = 0; j < n; ++j) {
    vertex_at[j] = hv.size();
    hv.push_back(vs[j]);
    out.input_index.push_back(path.order.empty() ? j : path.order[j]);
    if (j + 1 == n) break;
    const double len = poly.segment_length(j);
    for (; next_bp < bps.size() && bps.positions[next_bp].segment_index <= j; ++next_bp) {
      const auto& pos = bps.positions[next_bp];
      if (pos.segment_index < j) continue;
      if (pos.t > 0.0 && pos.t < len) {
        bp_at[next_bp] = hv.size();
        hv.push_back(bps.points[next_bp]);
        out.input_index.push_back(kNotInput);
      }
    }
  }
  for (std::size_t i = 0; i < bps.size(); ++i) {
    const auto& pos = bps.positions[i];
    if (bp_at[i] != kNotInput) {
      out.break_vertex.push_back(bp_at[i]);
    } else if (pos.t == 0.0) {
      out.break_vertex.push_back(vertex_at[pos.segment_index]);
    } else {
      out.break_vertex.push_back(vertex_at[std::min(pos.segment_index + 1, n - 1)]);
    }
  }
  for (std::size_t i = 0; i + 1 < out.break_vertex.size(); ++i) {
    out.segments.push_back({out.break_vertex[i], out.break_vertex[i + 1]});
  }
  out.hstar = Polyline(std::move(hv));
  return out;
}

}  // namespace slt
