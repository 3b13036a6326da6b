#include "slt/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "slt/error.hpp"

namespace slt {

namespace {

constexpr double kRadialAngle = 1e-9;

double dot2(PlanePoint a, PlanePoint b) { return a.x * b.x + a.y * b.y; }

class GadgetBuilder {
 public:
  explicit GadgetBuilder(SurfaceGadget& g) : g_(g) {
    g_.nodes.push_back({{0.0, 0.0}, VertexKind::Bend, kNoRay});
  }

  std::size_t add(PlanePoint p, VertexKind kind, std::size_t ray = kNoRay) {
    g_.nodes.push_back({p, kind, ray});
    return g_.nodes.size() - 1;
  }

  void connect(std::size_t u, std::size_t v) {
    if (u == v) return;
    const auto key = std::minmax(u, v);
    if (seen_.insert(key).second) g_.edges.emplace_back(u, v);
  }

 private:
  SurfaceGadget& g_;
  std::set<std::pair<std::size_t, std::size_t>> seen_;
};

// Nodes of the sub-path in arc order, with the secondary break points inserted.
struct PathLayout {
  std::vector<std::size_t> ray_node;  // node of every ray
  std::vector<std::size_t> order;     // all path nodes in arc order
};

PathLayout layout_path(const FoldedSurface& surf, SurfaceGadget& g, GadgetBuilder& b,
                       std::size_t secondaries) {
  PathLayout out;
  const std::size_t rays = surf.ray_count();
  std::vector<double> arc(rays, 0.0);
  std::vector<PlanePoint> img(rays);
  for (std::size_t j = 0; j < rays; ++j) {
    img[j] = surf.ray_image(j);
    if (j > 0) arc[j] = arc[j - 1] + dist(img[j - 1], img[j]);
  }
  g.path_length = arc.back();
  for (std::size_t j = 0; j < rays; ++j) {
    out.ray_node.push_back(surf.ray_radius[j] == 0.0 ? 0 : b.add(img[j], VertexKind::Break, j));
  }

  const double w = g.path_length;
  const double tol = 1e-12 * std::max(w, 1.0);
  std::size_t j = 0;
  out.order.push_back(out.ray_node[0]);
  for (std::size_t q = 0; q < secondaries; ++q) {
    const double a = (static_cast<double>(q) + 0.5) * w / static_cast<double>(secondaries);
    while (j + 1 < rays && arc[j + 1] < a - tol) {
      ++j;
      out.order.push_back(out.ray_node[j]);
    }
    if (std::abs(arc[j] - a) <= tol) {
      g.secondary_nodes.push_back(out.ray_node[j]);
      continue;
    }
    if (j + 1 < rays && std::abs(arc[j + 1] - a) <= tol) {
      ++j;
      out.order.push_back(out.ray_node[j]);
      g.secondary_nodes.push_back(out.ray_node[j]);
      continue;
    }
    const double len = arc[j + 1] - arc[j];
    const double t = len > 0.0 ? (a - arc[j]) / len : 0.0;
    const PlanePoint p{img[j].x + t * (img[j + 1].x - img[j].x), img[j].y + t * (img[j + 1].y - img[j].y)};
    const std::size_t id = b.add(p, VertexKind::SecondaryBreak);
    out.order.push_back(id);
    g.secondary_nodes.push_back(id);
  }
  while (j + 1 < rays) {
    ++j;
    out.order.push_back(out.ray_node[j]);
  }
  return out;
}

}  // namespace

std::size_t gadget_resolution(double eps) {
  return static_cast<std::size_t>(std::ceil(std::sqrt(1.0 / eps) - 1e-9));
}

SurfaceGadget build_gadget(const FoldedSurface& surf, const std::vector<std::size_t>& inputs,
                           double eps_int, double lambda) {
  if (!(eps_int > 0.0 && eps_int <= 1.0 / 16)) {
    throw Error(ErrorCode::EpsOutOfRange, "internal eps must lie in (0, 1/16]");
  }
  if (surf.ray_count() < 2) throw Error(ErrorCode::EmptySurface, "surface without cones");
  SurfaceGadget g;
  g.angle = surf.total_angle();
  GadgetBuilder b(g);

  const bool empty = inputs.empty();
  const bool radial = !empty && g.angle <= kRadialAngle;
  g.kind = empty ? SurfaceGadget::Kind::Empty
                 : (radial ? SurfaceGadget::Kind::Radial : SurfaceGadget::Kind::Core);
  const std::size_t res = gadget_resolution(eps_int);

  const PathLayout path = layout_path(surf, g, b, g.kind == SurfaceGadget::Kind::Core ? res : 0);
  for (std::size_t i = 0; i + 1 < path.order.size(); ++i) b.connect(path.order[i], path.order[i + 1]);
  for (std::size_t j : inputs) {
    if (j == 0 || j >= surf.ray_count()) throw Error(ErrorCode::OutOfRange, "input ray index");
    g.nodes[path.ray_node[j]].kind = VertexKind::Input;
    g.input_nodes.push_back(path.ray_node[j]);
  }

  if (g.kind == SurfaceGadget::Kind::Empty) {
    b.connect(0, path.ray_node[0]);
    return g;
  }
  if (g.kind == SurfaceGadget::Kind::Radial) {
    std::vector<std::size_t> chain(path.ray_node.begin(), path.ray_node.end());
    std::stable_sort(chain.begin(), chain.end(), [&](std::size_t u, std::size_t v) {
      return norm(g.nodes[u].p) < norm(g.nodes[v].p);
    });
    std::size_t prev = 0;
    for (std::size_t v : chain) {
      b.connect(prev, v);
      prev = v;
    }
    return g;
  }

  // Segment ell: perpendicular to the bisector, through the input point closest to the
  // apex along the bisector, so every input lies beyond ell.
  const double theta = g.angle;
  const PlanePoint bis{std::cos(theta / 2), std::sin(theta / 2)};
  double h = std::numeric_limits<double>::infinity();
  for (std::size_t v : g.input_nodes) {
    const double proj = dot2(g.nodes[v].p, bis);
    if (proj < h) {
      h = proj;
      g.r = g.nodes[v].p;
    }
  }
  const double leg = h / std::cos(theta / 2);
  g.ell_a = {leg, 0.0};
  g.ell_b = {leg * std::cos(theta), leg * std::sin(theta)};

  std::vector<PlanePoint> steiner;
  for (std::size_t j = 0; j < res; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(res - 1);
    steiner.push_back({g.ell_a.x + t * (g.ell_b.x - g.ell_a.x), g.ell_a.y + t * (g.ell_b.y - g.ell_a.y)});
  }
  steiner.front() = g.ell_a;
  steiner.back() = g.ell_b;

  CoreInstance inst;
  inst.apex = {0.0, 0.0};
  inst.base_a = g.ell_a;
  inst.base_b = g.ell_b;
  inst.base_points = steiner;
  inst.eps = std::max(theta * theta, eps_int);
  inst.lambda = lambda;
  g.core = build_core(inst);
  const CoreGraph& core = *g.core;

  std::vector<std::size_t> core_node(core.vertices.size());
  for (std::size_t v = 0; v < core.vertices.size(); ++v) {
    if (v == core.root) {
      core_node[v] = 0;
      continue;
    }
    VertexKind kind = VertexKind::CoreApex;
    if (core.vertices[v].kind == CoreVertexKind::BaseGrid) kind = VertexKind::BaseGrid;
    if (core.vertices[v].kind == CoreVertexKind::Input) kind = VertexKind::EllSteiner;
    core_node[v] = b.add(core.vertices[v].p, kind);
  }
  for (std::size_t v : core.input_vertex) g.ell_steiner.push_back(core_node[v]);
  for (const auto& e : core_spt(core).edges) b.connect(core_node[e.u], core_node[e.v]);

  const PlanePoint ab{g.ell_b.x - g.ell_a.x, g.ell_b.y - g.ell_a.y};
  const double ab2 = dot2(ab, ab);
  auto assign = [&](std::size_t node) {
    const PlanePoint p = g.nodes[node].p;
    const double scale = h / dot2(p, bis);
    const PlanePoint proj{p.x * scale, p.y * scale};
    const double t = std::clamp(dot2({proj.x - g.ell_a.x, proj.y - g.ell_a.y}, ab) / ab2, 0.0, 1.0) *
                     static_cast<double>(res - 1);
    std::size_t idx = static_cast<std::size_t>(std::floor(t));
    if (t - static_cast<double>(idx) > 0.5) ++idx;
    idx = std::min(idx, res - 1);
    return SurfaceGadget::Assignment{node, proj, idx};
  };
  for (std::size_t v : g.input_nodes) g.input_assign.push_back(assign(v));
  for (std::size_t v : g.secondary_nodes) {
    g.secondary_assign.push_back(assign(v));
    b.connect(g.ell_steiner[g.secondary_assign.back().steiner], v);
  }
  return g;
}

double phase1_weight(const SubdividedPath& sub, const BreakpointSet& bps) {
  double w = sub.hstar.length();
  if (bps.points.empty()) return w;
  const Point& s = bps.points.front();
  for (std::size_t i = 1; i < bps.points.size(); ++i) w += dist(s, bps.points[i]);
  return w;
}

SltResult assemble_slt(const PointCloud& pts, const PipelineOptions& opt) {
  pts.validate();
  if (pts.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two points");
  if (!(opt.eps > 0.0 && opt.eps <= 0.25)) throw Error(ErrorCode::EpsOutOfRange, "eps must lie in (0, 1/4]");
  if (!(opt.gamma > 0.0)) throw Error(ErrorCode::InvalidArgument, "gamma must be positive");
  const double eps_int = opt.eps / opt.gamma;
  if (eps_int > 1.0 / 16) throw Error(ErrorCode::EpsOutOfRange, "eps / gamma must not exceed 1/16");

  SltResult res;
  FoldingTrace& tr = res.trace;
  const Point& s = pts.root_point();
  tr.mst = euclidean_mst(pts);
  tr.path = dfs_hamiltonian(tr.mst, pts);
  tr.breakpoints = select_breakpoints(tr.path, eps_int);
  tr.subdivided = subdivide(tr.path, tr.breakpoints);
  tr.surfaces = build_surfaces(tr.subdivided, s);

  const SubdividedPath& sub = tr.subdivided;
  const auto& hv = sub.hstar.vertices();
  SteinerGraph& G = res.graph;
  G = SteinerGraph(pts.dim());
  std::vector<std::size_t> hid(hv.size());
  res.graph_input_vertex.assign(pts.size(), 0);
  for (std::size_t j = 0; j < hv.size(); ++j) {
    const bool input = sub.input_index[j] != kNotInput;
    if (j > 0 && coincident(hv[j], hv[j - 1])) {
      hid[j] = hid[j - 1];
      if (input) G.set_kind(hid[j], VertexKind::Input);
    } else {
      hid[j] = G.add_vertex(hv[j], input ? VertexKind::Input : VertexKind::Break);
    }
    if (input) res.graph_input_vertex[sub.input_index[j]] = hid[j];
  }
  res.graph_root = hid[0];

  for (const FoldedSurface& surf : tr.surfaces) {
    std::vector<std::size_t> inputs;
    for (std::size_t j = 1; j < surf.ray_count(); ++j) {
      if (sub.input_index[surf.ray_vertex[j]] != kNotInput) inputs.push_back(j);
    }
    SurfaceGadget gad = build_gadget(surf, inputs, eps_int, opt.lambda);

    std::vector<std::size_t> gid(gad.nodes.size());
    for (std::size_t v = 0; v < gad.nodes.size(); ++v) {
      const auto& node = gad.nodes[v];
      if (v == 0) {
        gid[v] = res.graph_root;
      } else if (node.ray != kNoRay) {
        gid[v] = hid[surf.ray_vertex[node.ray]];
      } else {
        gid[v] = G.add_vertex(lift(surf, node.p), node.kind);
      }
    }
    for (const auto& [u, v] : gad.edges) {
      if (opt.chord_shortcut) {
        G.add_edge(gid[u], gid[v]);
        continue;
      }
      const Polyline bent = lift_segment(surf, gad.nodes[u].p, gad.nodes[v].p);
      const auto& bv = bent.vertices();
      std::size_t prev = gid[u];
      for (std::size_t k = 1; k + 1 < bv.size(); ++k) {
        if (coincident(bv[k], G.point(prev))) continue;
        const std::size_t bend = G.add_vertex(bv[k], VertexKind::Bend);
        G.add_edge(prev, bend);
        prev = bend;
      }
      G.add_edge(prev, gid[v]);
    }
    tr.surface_inputs.push_back(std::move(inputs));
    if (opt.keep_gadgets) tr.gadgets.push_back(std::move(gad));
  }

  res.tree = shortest_path_tree(G, res.graph_root, res.graph_input_vertex, res.tree_input_vertex);

  SltReport& rep = res.report;
  rep.method = "folding";
  rep.n = pts.size();
  rep.d = pts.dim();
  rep.eps = opt.eps;
  rep.gamma = opt.gamma;
  rep.lambda = opt.lambda;
  for (const auto& surf : tr.surfaces) {
    rep.surface_angles.push_back(surf.total_angle());
    if (surf.truncated) ++rep.truncated_surfaces;
  }
  rep.phase1_weight = phase1_weight(sub, tr.breakpoints);
  rep.pruned_vertices = G.vertex_count() - res.tree.vertex_count();
  measure_tree(rep, res.tree, 0, res.tree_input_vertex, pts);
  return res;
}

}  // namespace slt
