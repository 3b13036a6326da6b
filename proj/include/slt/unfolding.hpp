#pragma once

#include <cstddef>
#include <vector>

#include "slt/breakpoints.hpp"
#include "slt/geometry.hpp"

namespace slt {

/// Planar sector spanned by the rays apex->ray_a and apex->ray_b.
struct Cone {
  Point apex;
  Point ray_a;
  Point ray_b;
  double angle = 0.0;
  SpanFrame frame;
};

/// Cones over consecutive edges of one sub-path, glued along shared rays, together with
/// the data of the unfolding into the plane: the apex goes to the origin, the first ray
/// to the positive x-axis, and cone j occupies polar angles [cum_angle[j], cum_angle[j+1]].
struct FoldedSurface {
  Point apex;
  std::vector<Cone> cones;
  std::vector<double> cum_angle;
  /// hstar index of every ray (cones.size() + 1 entries); ray j separates cones j-1, j.
  std::vector<std::size_t> ray_vertex;
  /// |h - apex| for each ray vertex.
  std::vector<double> ray_radius;
  /// Index of the sub-path H*_i this surface covers.
  std::size_t source_segment = 0;
  bool truncated = false;
  /// True when the sub-path was cut at cone boundaries to keep the angle below pi.
  bool split = false;

  double total_angle() const { return cum_angle.empty() ? 0.0 : cum_angle.back(); }
  std::size_t ray_count() const { return ray_vertex.size(); }
  /// Planar image of ray vertex j.
  PlanePoint ray_image(std::size_t j) const;
};

/// One surface per sub-path of `sub`, split greedily at cone boundaries into pieces of
/// angle <= pi/2 whenever a sub-path would reach a total angle of pi. Zero-length edges
/// are skipped. Throws DegenerateRay for a path vertex (other than the first) at `s`.
std::vector<FoldedSurface> build_surfaces(const SubdividedPath& sub, const Point& s);

/// Polar coordinates (r, theta) local to cone `cone_index` mapped into the plane.
/// Throws AngleOutOfRange when theta is outside [0, cone angle] or r < 0.
PlanePoint unfold(const FoldedSurface& surf, std::size_t cone_index, double r, double theta);

/// Image of a point of R^d lying on cone `cone_index`.
PlanePoint unfold_point(const FoldedSurface& surf, std::size_t cone_index, const Point& p);

/// Inverse of the unfolding. Throws AngleOutOfRange for points outside the unfolded sector.
Point lift(const FoldedSurface& surf, PlanePoint q);

/// Lift of the planar segment q1q2, bent where it crosses cone boundaries; its length
/// equals |q1 - q2|.
Polyline lift_segment(const FoldedSurface& surf, PlanePoint q1, PlanePoint q2);

}  // namespace slt
