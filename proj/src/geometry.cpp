#include "slt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "slt/error.hpp"

namespace slt {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateRay: return "DegenerateRay";
    case ErrorCode::AngleOutOfRange: return "AngleOutOfRange";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DuplicatePoints: return "DuplicatePoints";
    case ErrorCode::EpsOutOfRange: return "EpsOutOfRange";
    case ErrorCode::EmptySurface: return "EmptySurface";
    case ErrorCode::AngleOverflow: return "AngleOverflow";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

namespace {

void check_coords(const std::vector<double>& c) {
  if (c.size() < 2) {
    throw Error(ErrorCode::DimensionTooSmall, "points need at least 2 coordinates");
  }
  for (double x : c) {
    if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "non-finite coordinate");
  }
}

void check_same_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                "dimensions " + std::to_string(a) + " and " + std::to_string(b));
  }
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) { check_coords(coords_); }

Point::Point(std::initializer_list<double> coords) : coords_(coords) { check_coords(coords_); }

Point Point::zeros(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

Point operator+(const Point& p, const Point& q) {
  check_same_dim(p.dim(), q.dim());
  std::vector<double> c(p.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = p[i] + q[i];
  return Point(std::move(c));
}

Point operator-(const Point& p, const Point& q) {
  check_same_dim(p.dim(), q.dim());
  std::vector<double> c(p.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = p[i] - q[i];
  return Point(std::move(c));
}

Point operator*(double a, const Point& p) {
  std::vector<double> c(p.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a * p[i];
  return Point(std::move(c));
}

double dot(std::span<const double> p, std::span<const double> q) {
  check_same_dim(p.size(), q.size());
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * q[i];
  return s;
}

double norm(std::span<const double> p) {
  // Scaled accumulation keeps tiny and huge coordinates from under/overflowing.
  double scale = 0.0;
  for (double x : p) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double x : p) {
    const double y = x / scale;
    s += y * y;
  }
  return scale * std::sqrt(s);
}

double dist(std::span<const double> p, std::span<const double> q) {
  check_same_dim(p.size(), q.size());
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = p[i] - q[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double dist(const Point& p, const Point& q) { return dist(p.coords(), q.coords()); }

double dist(PlanePoint p, PlanePoint q) { return std::hypot(p.x - q.x, p.y - q.y); }

double norm(PlanePoint p) { return std::hypot(p.x, p.y); }

bool coincident(const Point& p, const Point& q) {
  check_same_dim(p.dim(), q.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (std::abs(p[i] - q[i]) >= kCoincidentTol) return false;
  }
  return true;
}

namespace {

// Unit direction from s to u; throws DegenerateRay when u coincides with s.
std::vector<double> unit_from(const Point& s, const Point& u) {
  check_same_dim(s.dim(), u.dim());
  if (coincident(s, u)) throw Error(ErrorCode::DegenerateRay, "ray endpoint coincides with apex");
  std::vector<double> d(s.dim());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = u[i] - s[i];
  const double n = norm(d);
  for (double& x : d) x /= n;
  return d;
}

}  // namespace

double angle_at_apex(const Point& s, const Point& u, const Point& v) {
  const auto a = unit_from(s, u);
  const auto b = unit_from(s, v);
  // |a x b|^2 as the sum of squared 2x2 minors; exact in the same sense as the dot.
  double cross2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const double m = a[i] * b[j] - a[j] * b[i];
      cross2 += m * m;
    }
  }
  return std::atan2(std::sqrt(cross2), dot(a, b));
}

Point SpanFrame::at(double theta, double r) const {
  std::vector<double> c(origin.dim());
  if (collinear()) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = origin[i] + r * e1[i];
    return Point(std::move(c));
  }
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = origin[i] + r * (ct * e1[i] + st * e2[i]);
  return Point(std::move(c));
}

SpanFrame make_span_frame(const Point& s, const Point& u, const Point& v) {
  SpanFrame f;
  f.origin = s;
  const auto a = unit_from(s, u);
  const auto b = unit_from(s, v);
  f.angle = angle_at_apex(s, u, v);
  f.e1 = Point(a);
  // Gram-Schmidt: component of b orthogonal to a, done twice for stability.
  std::vector<double> w = b;
  for (int pass = 0; pass < 2; ++pass) {
    const double c = dot(w, a);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * a[i];
  }
  const double wn = norm(w);
  if (f.angle >= std::numbers::pi - 1e-12) {
    throw Error(ErrorCode::DegenerateRay, "antiparallel rays do not span a unique plane");
  }
  if (wn <= 1e-15 || f.angle == 0.0) return f;
  for (double& x : w) x /= wn;
  f.e2 = Point(std::move(w));
  return f;
}

Point rotate_in_span(const Point& s, const Point& u, const Point& v, double theta, double r) {
  const SpanFrame f = make_span_frame(s, u, v);
  if (!(theta >= -1e-12 && theta <= f.angle + 1e-12)) {
    throw Error(ErrorCode::AngleOutOfRange, "theta outside [0, angle(s,u,v)]");
  }
  if (r < 0.0) throw Error(ErrorCode::InvalidArgument, "negative radius");
  return f.at(std::clamp(theta, 0.0, f.angle), r);
}

Polyline::Polyline(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  cum_len_.reserve(vertices_.size());
  if (vertices_.empty()) return;
  cum_len_.push_back(0.0);
  for (std::size_t j = 1; j < vertices_.size(); ++j) {
    cum_len_.push_back(cum_len_.back() + dist(vertices_[j - 1], vertices_[j]));
  }
}

ArcPosition Polyline::locate(double L) const {
  if (vertices_.empty()) throw Error(ErrorCode::OutOfRange, "empty polyline");
  const double total = length();
  if (!(L >= 0.0 && L <= total)) {
    throw Error(ErrorCode::OutOfRange, "arc length " + std::to_string(L) + " outside [0, " +
                                           std::to_string(total) + "]");
  }
  if (vertices_.size() == 1) return {0, 0.0, 0.0};
  // Last segment whose start is <= L.
  auto it = std::upper_bound(cum_len_.begin(), cum_len_.end(), L);
  std::size_t seg = static_cast<std::size_t>(it - cum_len_.begin()) - 1;
  seg = std::min(seg, vertices_.size() - 2);
  const double t = std::clamp(L - cum_len_[seg], 0.0, segment_length(seg));
  return {seg, t, L};
}

Point point_at(const Polyline& path, const ArcPosition& pos) {
  const auto& vs = path.vertices();
  if (vs.size() == 1) return vs.front();
  const double len = path.segment_length(pos.segment_index);
  const Point& p = vs[pos.segment_index];
  const Point& q = vs[pos.segment_index + 1];
  if (len == 0.0) return p;
  if (pos.t >= len) return q;
  const double f = pos.t / len;
  std::vector<double> c(p.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = p[i] + f * (q[i] - p[i]);
  return Point(std::move(c));
}

Point point_at_arc(const Polyline& path, double L) { return point_at(path, path.locate(L)); }

}  // namespace slt
