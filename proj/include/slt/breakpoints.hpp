#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "slt/geometry.hpp"
#include "slt/mst_path.hpp"

namespace slt {

/// Break points b_1..b_k on the Hamiltonian path H, in arc order.
///
/// b_1 is the root and b_2 the far end of the first edge of H. Every later b_{i+1} is
/// the first point q after b_i with d_H(b_i, q) = sqrt(eps) * d(s, q). When no such
/// point exists before the end of H, the end becomes the last break point and
/// `last_truncated` is set.
struct BreakpointSet {
  std::vector<ArcPosition> positions;
  std::vector<Point> points;
  double eps = 0.0;
  bool last_truncated = false;

  std::size_t size() const noexcept { return points.size(); }
};

/// Throws EpsOutOfRange unless 0 < eps < 1, and DegenerateRay when H runs through the
/// root (break points would accumulate there).
BreakpointSet select_breakpoints(const HamPath& path, double eps);

inline constexpr std::size_t kNotInput = std::numeric_limits<std::size_t>::max();

/// H with every break point inserted as a vertex.
struct SubdividedPath {
  struct Range {
    std::size_t first_vertex;  // hstar index of b_i
    std::size_t last_vertex;   // hstar index of b_{i+1}
  };

  Polyline hstar;
  /// Input point index of each hstar vertex, kNotInput for inserted break points.
  std::vector<std::size_t> input_index;
  /// hstar vertex index of each break point.
  std::vector<std::size_t> break_vertex;
  /// Sub-path H*_i between consecutive break points.
  std::vector<Range> segments;
  bool last_truncated = false;
};

SubdividedPath subdivide(const HamPath& path, const BreakpointSet& bps);

}  // namespace slt
