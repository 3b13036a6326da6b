#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "slt/breakpoints.hpp"
#include "slt/core2d.hpp"
#include "slt/graph.hpp"
#include "slt/metrics.hpp"
#include "slt/mst_path.hpp"
#include "slt/unfolding.hpp"

namespace slt {

inline constexpr std::size_t kNoRay = std::numeric_limits<std::size_t>::max();

/// Planar tree built inside one unfolded surface, before lifting back to R^d.
struct SurfaceGadget {
  enum class Kind {
    Empty,   // no input point on the surface: apex -> b_i plus the sub-path
    Radial,  // (numerically) zero angle: chain along the single ray plus the sub-path
    Core,    // core tree over the segment ell, connectors, sub-path
  };

  struct Node {
    PlanePoint p;
    VertexKind kind = VertexKind::Bend;
    std::size_t ray = kNoRay;  // surface ray index for nodes that are sub-path vertices
  };

  /// Projection of a point onto ell along the ray from the apex, and the Steiner point
  /// closest to that projection.
  struct Assignment {
    std::size_t node = 0;
    PlanePoint projection;
    std::size_t steiner = 0;  // index into ell_steiner
  };

  Kind kind = Kind::Empty;
  double angle = 0.0;
  /// Node 0 is the apex (origin of the plane).
  std::vector<Node> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::vector<std::size_t> input_nodes;      // V_i
  std::vector<std::size_t> secondary_nodes;  // equidistant secondary break points
  double path_length = 0.0;                  // w(H*_i)

  // Core gadgets only.
  PlanePoint r;            // input point with the smallest projection on the bisector
  PlanePoint ell_a;        // ell on the ray at angle 0
  PlanePoint ell_b;        // ell on the ray at the total angle
  std::vector<std::size_t> ell_steiner;  // node ids, from ell_a to ell_b
  std::vector<Assignment> input_assign;
  std::vector<Assignment> secondary_assign;
  std::optional<CoreGraph> core;
};

/// Gadget of one surface. `inputs` lists ray indices (>= 1) carrying input points.
/// Requires 0 < eps_int <= 1/16 (EpsOutOfRange otherwise).
SurfaceGadget build_gadget(const FoldedSurface& surf, const std::vector<std::size_t>& inputs,
                           double eps_int, double lambda = 1.25);

/// ceil(sqrt(1/eps)): number of secondary break points and of Steiner points on ell.
std::size_t gadget_resolution(double eps);

struct PipelineOptions {
  double eps = 0.04;
  double gamma = 8.0;
  double lambda = 1.25;
  /// Replace every lifted (bent) edge by the straight chord between its endpoints.
  bool chord_shortcut = false;
  /// Keep the per-surface gadgets in the result (rendering and diagnostics).
  bool keep_gadgets = true;
};

/// Intermediate artifacts of the construction.
struct FoldingTrace {
  Tree mst;
  HamPath path;
  BreakpointSet breakpoints;
  SubdividedPath subdivided;
  std::vector<FoldedSurface> surfaces;
  std::vector<SurfaceGadget> gadgets;  // empty unless keep_gadgets
  /// For every surface, the ray indices carrying its input points.
  std::vector<std::vector<std::size_t>> surface_inputs;
};

struct SltResult {
  SteinerGraph graph;   // union of all lifted gadgets
  SteinerGraph tree;    // shortest paths from the root to every input, vertex 0 = root
  /// tree vertex of each input point, in input order
  std::vector<std::size_t> tree_input_vertex;
  /// graph vertex of each input point, in input order
  std::vector<std::size_t> graph_input_vertex;
  std::size_t graph_root = 0;
  SltReport report;
  FoldingTrace trace;
};

/// Steiner shallow-light tree of `pts` rooted at pts.root, with internal parameter
/// eps / gamma for the folding. Requires n >= 2 and 0 < eps <= 1/4.
SltResult assemble_slt(const PointCloud& pts, const PipelineOptions& opt = {});

/// w(H*) + sum over i >= 2 of d(s, b_i).
double phase1_weight(const SubdividedPath& sub, const BreakpointSet& bps);

}  // namespace slt
