#include "slt/unfolding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "slt/error.hpp"

namespace slt {

namespace {

constexpr double kAngleTol = 1e-9;

Cone make_cone(const Point& s, const Point& a, const Point& b) {
  // The path starts at the apex itself; its first cone degenerates to the ray s->b.
  const Point& ra = coincident(a, s) ? b : a;
  Cone c{s, ra, b, 0.0, make_span_frame(s, ra, b)};
  c.angle = c.frame.angle;
  return c;
}

FoldedSurface make_surface(const Point& s, const std::vector<std::size_t>& rays,
                           const std::vector<Cone>& cones, std::size_t first_cone,
                           std::size_t last_cone, const Polyline& hstar) {
  FoldedSurface f;
  f.apex = s;
  f.cum_angle.push_back(0.0);
  for (std::size_t c = first_cone; c < last_cone; ++c) {
    f.cones.push_back(cones[c]);
    f.cum_angle.push_back(f.cum_angle.back() + cones[c].angle);
  }
  for (std::size_t r = first_cone; r <= last_cone; ++r) {
    f.ray_vertex.push_back(rays[r]);
    f.ray_radius.push_back(dist(s, hstar.vertices()[rays[r]]));
  }
  return f;
}

double polar_angle(PlanePoint q) { return std::atan2(q.y, q.x); }

}  // namespace

PlanePoint FoldedSurface::ray_image(std::size_t j) const {
  return {ray_radius[j] * std::cos(cum_angle[j]), ray_radius[j] * std::sin(cum_angle[j])};
}

std::vector<FoldedSurface> build_surfaces(const SubdividedPath& sub, const Point& s) {
  const auto& hv = sub.hstar.vertices();
  std::vector<FoldedSurface> out;
  out.reserve(sub.segments.size());
  for (std::size_t i = 0; i < sub.segments.size(); ++i) {
    const auto [first, last] = sub.segments[i];
    std::vector<std::size_t> rays{first};
    for (std::size_t j = first + 1; j <= last; ++j) {
      if (coincident(hv[j], s)) {
        throw Error(ErrorCode::DegenerateRay, "path vertex " + std::to_string(j) + " at the root");
      }
      if (coincident(hv[j], hv[rays.back()])) continue;
      rays.push_back(j);
    }
    if (rays.size() < 2) throw Error(ErrorCode::EmptySurface, "sub-path without edges");

    std::vector<Cone> cones;
    cones.reserve(rays.size() - 1);
    double total = 0.0;
    for (std::size_t c = 0; c + 1 < rays.size(); ++c) {
      cones.push_back(make_cone(s, hv[rays[c]], hv[rays[c + 1]]));
      total += cones.back().angle;
    }
    const bool truncated = sub.last_truncated && i + 1 == sub.segments.size();

    if (total < std::numbers::pi) {
      out.push_back(make_surface(s, rays, cones, 0, cones.size(), sub.hstar));
      out.back().source_segment = i;
      out.back().truncated = truncated;
      continue;
    }
    // Greedy split into pieces of angle <= pi/2 (a single wider cone stays alone).
    std::size_t start = 0;
    while (start < cones.size()) {
      std::size_t end = start + 1;
      double acc = cones[start].angle;
      while (end < cones.size() && acc + cones[end].angle <= std::numbers::pi / 2) {
        acc += cones[end].angle;
        ++end;
      }
      out.push_back(make_surface(s, rays, cones, start, end, sub.hstar));
      out.back().source_segment = i;
      out.back().split = true;
      out.back().truncated = truncated && end == cones.size();
      start = end;
    }
  }
  return out;
}

PlanePoint unfold(const FoldedSurface& surf, std::size_t cone_index, double r, double theta) {
  if (cone_index >= surf.cones.size()) throw Error(ErrorCode::OutOfRange, "cone index");
  const double a = surf.cones[cone_index].angle;
  if (!(r >= 0.0) || !(theta >= -1e-12 && theta <= a + 1e-12)) {
    throw Error(ErrorCode::AngleOutOfRange, "polar coordinates outside the cone");
  }
  const double phi = surf.cum_angle[cone_index] + std::clamp(theta, 0.0, a);
  return {r * std::cos(phi), r * std::sin(phi)};
}

PlanePoint unfold_point(const FoldedSurface& surf, std::size_t cone_index, const Point& p) {
  if (cone_index >= surf.cones.size()) throw Error(ErrorCode::OutOfRange, "cone index");
  const Cone& c = surf.cones[cone_index];
  const double r = dist(c.apex, p);
  if (coincident(c.apex, p)) return {0.0, 0.0};
  return unfold(surf, cone_index, r, angle_at_apex(c.apex, c.ray_a, p));
}

Point lift(const FoldedSurface& surf, PlanePoint q) {
  const double r = norm(q);
  if (r == 0.0) return surf.apex;
  double phi = polar_angle(q);
  const double total = surf.total_angle();
  if (phi < -kAngleTol || phi > total + kAngleTol) {
    throw Error(ErrorCode::AngleOutOfRange, "point outside the unfolded sector");
  }
  phi = std::clamp(phi, 0.0, total);
  const auto& cum = surf.cum_angle;
  std::size_t j = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), phi) - cum.begin());
  j = std::clamp<std::size_t>(j, 1, surf.cones.size()) - 1;
  return surf.cones[j].frame.at(phi - cum[j], r);
}

Polyline lift_segment(const FoldedSurface& surf, PlanePoint q1, PlanePoint q2) {
  if (q1 == q2) return Polyline({lift(surf, q1)});
  const double r1 = norm(q1);
  const double r2 = norm(q2);
  double phi1 = r1 == 0.0 ? polar_angle(q2) : polar_angle(q1);
  double phi2 = r2 == 0.0 ? polar_angle(q1) : polar_angle(q2);
  const double lo = std::min(phi1, phi2);
  const double hi = std::max(phi1, phi2);
  const PlanePoint d{q2.x - q1.x, q2.y - q1.y};

  struct Crossing {
    double t;
    std::size_t cone;
    double r;
  };
  std::vector<Crossing> xs;
  double last_theta = -1.0;
  for (std::size_t j = 1; j < surf.cones.size(); ++j) {
    const double th = surf.cum_angle[j];
    if (th <= lo || th >= hi || th == last_theta) continue;
    last_theta = th;
    const double cx = std::cos(th);
    const double cy = std::sin(th);
    const double den = cx * d.y - cy * d.x;
    if (den == 0.0) continue;
    const double t = std::clamp(-(cx * q1.y - cy * q1.x) / den, 0.0, 1.0);
    const PlanePoint x{q1.x + t * d.x, q1.y + t * d.y};
    xs.push_back({t, j, norm(x)});
  }
  std::sort(xs.begin(), xs.end(), [](const Crossing& a, const Crossing& b) { return a.t < b.t; });

  std::vector<Point> pts;
  pts.reserve(xs.size() + 2);
  pts.push_back(lift(surf, q1));
  // Crossing points sit exactly on the start ray of cone j.
  for (const auto& x : xs) pts.push_back(surf.cones[x.cone].frame.at(0.0, x.r));
  pts.push_back(lift(surf, q2));
  return Polyline(std::move(pts));
}

}  // namespace slt
