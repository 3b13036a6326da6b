#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace slt {

/// Two points are treated as coincident when every coordinate differs by less than this.
inline constexpr double kCoincidentTol = 1e-12;

/// A point in R^d, d >= 2, with finite coordinates.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  static Point zeros(std::size_t dim);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }
  const std::vector<double>& vec() const noexcept { return coords_; }

  bool operator==(const Point&) const = default;

 private:
  std::vector<double> coords_;
};

/// A point of an unfolded (planar) surface.
struct PlanePoint {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const PlanePoint&) const = default;
};

Point operator+(const Point& p, const Point& q);
Point operator-(const Point& p, const Point& q);
Point operator*(double c, const Point& p);

double dot(std::span<const double> p, std::span<const double> q);
double norm(std::span<const double> p);

double dist(const Point& p, const Point& q);
double dist(std::span<const double> p, std::span<const double> q);
double dist(PlanePoint p, PlanePoint q);
double norm(PlanePoint p);

/// Max-coordinate test against kCoincidentTol.
bool coincident(const Point& p, const Point& q);

/// Angle in [0, pi] between rays s->u and s->v (atan2 of cross magnitude and dot).
/// Throws DegenerateRay if u or v coincides with s.
double angle_at_apex(const Point& s, const Point& u, const Point& v);

/// Orthonormal frame of the 2-plane through `origin` spanned by u - origin and v - origin.
/// When the two directions are collinear and point the same way, `e2` is empty and the
/// span is the ray itself.
struct SpanFrame {
  Point origin;
  Point e1;
  Point e2;  // empty for a collinear span
  double angle = 0.0;

  bool collinear() const noexcept { return e2.dim() == 0; }
  /// origin + r * (cos(theta) e1 + sin(theta) e2); theta is not range checked.
  Point at(double theta, double r) const;
};

SpanFrame make_span_frame(const Point& s, const Point& u, const Point& v);

/// Point at polar coordinates (r, theta) in the span of s->u, s->v, with theta measured
/// from s->u toward v. Throws DegenerateRay (coincident or antiparallel rays) or
/// AngleOutOfRange (theta outside [0, angle_at_apex(s, u, v)]).
Point rotate_in_span(const Point& s, const Point& u, const Point& v, double theta, double r);

struct ArcPosition {
  std::size_t segment_index = 0;
  double t = 0.0;
  double arc_len = 0.0;
};

/// Piecewise-linear path with prefix arc lengths; cum_len[0] == 0.
class Polyline {
 public:
  Polyline() = default;
  explicit Polyline(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  const std::vector<double>& cum_len() const noexcept { return cum_len_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  bool empty() const noexcept { return vertices_.empty(); }
  double length() const noexcept { return cum_len_.empty() ? 0.0 : cum_len_.back(); }
  double segment_length(std::size_t j) const { return cum_len_[j + 1] - cum_len_[j]; }

  /// Segment index and offset of arc length L; L at a vertex maps to the start of the
  /// following segment except at the very end. Throws OutOfRange.
  ArcPosition locate(double L) const;

 private:
  std::vector<Point> vertices_;
  std::vector<double> cum_len_;
};

Point point_at_arc(const Polyline& path, double L);
Point point_at(const Polyline& path, const ArcPosition& pos);

}  // namespace slt
