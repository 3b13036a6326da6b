#include "slt/core2d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "slt/error.hpp"
#include "slt/metrics.hpp"
#include "slt/mst_path.hpp"

namespace slt {

namespace {

double cross(PlanePoint a, PlanePoint b) { return a.x * b.y - a.y * b.x; }
double dot2(PlanePoint a, PlanePoint b) { return a.x * b.x + a.y * b.y; }
PlanePoint sub(PlanePoint a, PlanePoint b) { return {a.x - b.x, a.y - b.y}; }

double leg_length(const CoreInstance& inst) {
  return 0.5 * (dist(inst.apex, inst.base_a) + dist(inst.apex, inst.base_b));
}

// Maps unit-leg coordinates (base on the x-axis centred at the origin, apex on +y) onto
// the instance triangle.
struct TriangleFrame {
  PlanePoint origin;
  PlanePoint ex;
  PlanePoint ey;
  double scale;

  explicit TriangleFrame(const CoreInstance& inst) {
    origin = {0.5 * (inst.base_a.x + inst.base_b.x), 0.5 * (inst.base_a.y + inst.base_b.y)};
    const PlanePoint ab = sub(inst.base_b, inst.base_a);
    const double lab = norm(ab);
    ex = {ab.x / lab, ab.y / lab};
    // Perpendicular to the base on the apex side.
    ey = {-ex.y, ex.x};
    if (dot2(ey, sub(inst.apex, origin)) < 0.0) ey = {ex.y, -ex.x};
    scale = leg_length(inst);
  }

  PlanePoint to_world(PlanePoint q) const {
    return {origin.x + scale * (q.x * ex.x + q.y * ey.x), origin.y + scale * (q.x * ex.y + q.y * ey.y)};
  }
  double base_coordinate(PlanePoint p) const { return dot2(sub(p, origin), ex) / scale; }
};

}  // namespace

int CoreInstance::levels() const {
  return static_cast<int>(std::ceil(std::log2(std::sqrt(1.0 / eps)))) + 1;
}

double CoreInstance::apex_angle() const {
  const PlanePoint u = sub(base_a, apex);
  const PlanePoint v = sub(base_b, apex);
  return std::atan2(std::abs(cross(u, v)), dot2(u, v));
}

void CoreInstance::validate() const {
  if (!(eps > 0.0 && eps < std::numbers::pi / 4)) {
    throw Error(ErrorCode::EpsOutOfRange, "core eps must lie in (0, pi/4)");
  }
  if (!(lambda > 1.0 && lambda < 2.0)) {
    throw Error(ErrorCode::InvalidArgument, "lambda must lie in (1, 2)");
  }
  const double la = dist(apex, base_a);
  const double lb = dist(apex, base_b);
  if (!(la > 0.0) || !(lb > 0.0) || dist(base_a, base_b) == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "degenerate core triangle");
  }
  const double leg = 0.5 * (la + lb);
  if (std::abs(la - lb) > 1e-9 * leg) {
    throw Error(ErrorCode::InvalidArgument, "core triangle is not isosceles");
  }
  if (apex_angle() > std::sqrt(eps) + 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "apex angle exceeds sqrt(eps)");
  }
  const PlanePoint ab = sub(base_b, base_a);
  const double lab2 = dot2(ab, ab);
  for (const auto& p : base_points) {
    const double t = dot2(sub(p, base_a), ab) / lab2;
    const PlanePoint foot{base_a.x + t * ab.x, base_a.y + t * ab.y};
    const double tol = 1e-9 * leg;
    if (dist(p, foot) > tol || t * std::sqrt(lab2) < -tol || (t - 1.0) * std::sqrt(lab2) > tol) {
      throw Error(ErrorCode::InvalidArgument, "base point off the base segment");
    }
  }
}

double core_apex_leg(double alpha, double lambda, int level) {
  return std::sin(alpha / 2) / (std::ldexp(1.0, level) * std::sin(alpha * std::pow(lambda, level) / 2));
}

double slack(PlanePoint u, PlanePoint v) { return dist(u, v) - std::abs(u.y - v.y); }

CoreGraph build_core(const CoreInstance& inst) {
  inst.validate();
  CoreGraph g;
  g.levels = inst.levels();
  g.alpha = inst.apex_angle();
  g.lambda = inst.lambda;
  g.eps = inst.eps;
  g.leg = leg_length(inst);
  const int k = g.levels;
  if (g.alpha * std::pow(inst.lambda, k) >= std::numbers::pi / 2) {
    throw Error(ErrorCode::AngleOverflow, "alpha * lambda^k reaches pi/2");
  }
  const TriangleFrame frame(inst);
  const double hb = std::sin(g.alpha / 2);

  std::vector<PlanePoint> unit;  // normalized position of every vertex
  auto add = [&](PlanePoint q, CoreVertexKind kind, int level) {
    unit.push_back(q);
    g.vertices.push_back({frame.to_world(q), kind, level});
    return g.vertices.size() - 1;
  };

  g.root = add({0.0, std::cos(g.alpha / 2)}, CoreVertexKind::Root, 0);
  g.vertices[g.root].p = inst.apex;

  std::vector<std::vector<std::size_t>> level_ids(k + 1);
  level_ids[0] = {g.root};
  for (int i = 1; i <= k; ++i) {
    const std::size_t count = std::size_t{1} << i;
    const double width = 2.0 * hb / static_cast<double>(count);
    const double height = 0.5 * width / std::tan(g.alpha * std::pow(inst.lambda, i) / 2);
    for (std::size_t j = 0; j < count; ++j) {
      const double x = -hb + (static_cast<double>(j) + 0.5) * width;
      level_ids[i].push_back(add({x, height}, CoreVertexKind::Apex, i));
    }
  }

  const std::size_t cells = std::size_t{1} << k;
  std::vector<double> grid_x;
  for (std::size_t j = 0; j <= cells; ++j) {
    const double x = -hb + 2.0 * hb * static_cast<double>(j) / static_cast<double>(cells);
    grid_x.push_back(x);
    g.grid_vertex.push_back(add({x, 0.0}, CoreVertexKind::BaseGrid, -1));
  }
  g.vertices[g.grid_vertex.front()].p = inst.base_a;
  g.vertices[g.grid_vertex.back()].p = inst.base_b;

  // Base-line vertices sorted along the base; input points merge with coincident ones.
  struct OnBase {
    double x;
    std::size_t id;
  };
  std::vector<OnBase> base;
  for (std::size_t j = 0; j <= cells; ++j) base.push_back({grid_x[j], g.grid_vertex[j]});
  constexpr double kMergeTol = 1e-12;
  for (const auto& p : inst.base_points) {
    const double x = std::clamp(frame.base_coordinate(p), -hb, hb);
    std::size_t id = g.vertices.size();
    for (const auto& b : base) {
      if (std::abs(b.x - x) <= kMergeTol) {
        id = b.id;
        break;
      }
    }
    if (id == g.vertices.size()) {
      id = add({x, 0.0}, CoreVertexKind::Input, -1);
      g.vertices[id].p = p;
      base.push_back({x, id});
    } else if (g.vertices[id].kind == CoreVertexKind::BaseGrid) {
      g.vertices[id].kind = CoreVertexKind::Input;
    }
    g.input_vertex.push_back(id);
  }
  std::sort(base.begin(), base.end(), [](const OnBase& a, const OnBase& b) {
    return a.x != b.x ? a.x < b.x : a.id < b.id;
  });

  auto connect = [&](std::size_t u, std::size_t v) {
    g.edges.push_back({u, v, dist(g.vertices[u].p, g.vertices[v].p)});
  };
  for (std::size_t j = 0; j + 1 < base.size(); ++j) {
    connect(base[j].id, base[j + 1].id);
    g.base_path_weight += dist(unit[base[j].id], unit[base[j + 1].id]);
  }

  g.level_weight.assign(k + 1, 0.0);
  g.level_slack.assign(k + 1, 0.0);
  g.level_gap.assign(k + 1, 0.0);
  for (int i = 0; i <= k; ++i) {
    for (std::size_t j = 0; j < level_ids[i].size(); ++j) {
      const std::size_t u = level_ids[i][j];
      const std::size_t c0 = i < k ? level_ids[i + 1][2 * j] : g.grid_vertex[j];
      const std::size_t c1 = i < k ? level_ids[i + 1][2 * j + 1] : g.grid_vertex[j + 1];
      for (std::size_t c : {c0, c1}) {
        connect(u, c);
        const double len = dist(unit[u], unit[c]);
        g.level_weight[i] += len;
        g.level_slack[i] = std::max(g.level_slack[i], slack(unit[u], unit[c]));
        g.level_gap[i] = len;
      }
    }
  }
  return g;
}

Tree core_spt(const CoreGraph& g) {
  const std::size_t n = g.vertices.size();
  const auto sp = oracle_spt(n, g.edges, g.root);
  Tree t;
  t.n = n;
  t.root = g.root;
  for (std::size_t v = 0; v < n; ++v) {
    if (v == g.root) continue;
    t.edges.push_back({sp.parent[v], v, dist(g.vertices[sp.parent[v]].p, g.vertices[v].p)});
  }
  return t;
}

SteinerGraph CoreGraph::to_steiner_graph() const {
  SteinerGraph sg(2);
  for (const auto& v : vertices) {
    const double c[2] = {v.p.x, v.p.y};
    VertexKind kind = VertexKind::Input;
    if (v.kind == CoreVertexKind::Apex) kind = VertexKind::CoreApex;
    if (v.kind == CoreVertexKind::BaseGrid) kind = VertexKind::BaseGrid;
    sg.add_vertex(c, kind);
  }
  for (const auto& e : edges) sg.add_edge(e.u, e.v);
  return sg;
}

CoreMetrics core_metrics(const CoreGraph& g, const Tree& t) {
  CoreMetrics m;
  m.tree_weight = t.weight();
  const double lam = g.lambda;
  const double a = g.alpha;
  m.chain_bound = 4.0 * lam / (lam - 1.0);
  m.levels_ok = true;
  m.slack_ok = true;
  for (int i = 0; i <= g.levels; ++i) {
    m.chain_weight += g.level_weight[i];
    m.level_bound.push_back(4.0 / std::pow(lam, i));
    m.slack_bound.push_back(a * a / 4.0 * std::pow(lam / 2.0, i));
    m.levels_ok = m.levels_ok && g.level_weight[i] <= m.level_bound.back() + 1e-9;
    m.slack_ok = m.slack_ok && g.level_slack[i] <= m.slack_bound.back() + 1e-9;
  }
  m.chain_ok = m.chain_weight <= m.chain_bound + 1e-9;

  SteinerGraph tree(2);
  for (const auto& v : g.vertices) {
    const double c[2] = {v.p.x, v.p.y};
    tree.add_vertex(c, VertexKind::Input);
  }
  for (const auto& e : t.edges) tree.add_edge(e.u, e.v);
  if (!g.input_vertex.empty()) {
    m.per_point_stretch = root_stretch(tree, g.root, g.input_vertex);
    m.max_stretch = *std::max_element(m.per_point_stretch.begin(), m.per_point_stretch.end());
  }
  const auto grid = root_stretch(tree, g.root, g.grid_vertex);
  m.max_grid_stretch = *std::max_element(grid.begin(), grid.end());
  const double c = std::cos(a / 2);
  m.grid_stretch_bound = (c + a * a / (2.0 * (2.0 - lam))) / c;
  m.lightness_bound = (m.chain_bound + g.base_path_weight) / c;

  PointCloud pts;
  pts.points.push_back(Point{g.vertices[g.root].p.x, g.vertices[g.root].p.y});
  std::vector<std::size_t> seen;
  for (std::size_t id : g.input_vertex) {
    if (std::find(seen.begin(), seen.end(), id) != seen.end()) continue;
    seen.push_back(id);
    pts.points.push_back(Point{g.vertices[id].p.x, g.vertices[id].p.y});
  }
  if (pts.size() >= 2) m.lightness = m.tree_weight / mst_weight(pts);
  return m;
}

}  // namespace slt
