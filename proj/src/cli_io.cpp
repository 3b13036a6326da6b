#include "slt/cli_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "slt/core2d.hpp"
#include "slt/error.hpp"
#include "slt/pyramid.hpp"

namespace slt {

// ---------------------------------------------------------------------------
// Generators

double unit_uniform(std::uint64_t draw) { return static_cast<double>(draw >> 11) * 0x1.0p-53; }

PointCloud generate(const GenParams& p) {
  PointCloud pts;
  pts.root = 0;
  if (p.kind == "circle") {
    if (!(p.eps > 0.0 && p.eps < 1.0)) throw Error(ErrorCode::InvalidArgument, "circle needs 0 < eps < 1");
    if (p.d < 2) throw Error(ErrorCode::InvalidArgument, "d must be at least 2");
    const std::size_t m = static_cast<std::size_t>(std::ceil(std::sqrt(1.0 / p.eps) - 1e-9));
    for (std::size_t j = 0; j < m; ++j) {
      const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
      std::vector<double> c(p.d, 0.0);
      c[0] = std::cos(phi);
      c[1] = std::sin(phi);
      pts.points.emplace_back(std::move(c));
    }
  } else if (p.kind == "grid") {
    if (p.n < 1) throw Error(ErrorCode::InvalidArgument, "grid needs n >= 1");
    pts = pyramid_instance(p.d, p.eps, GridSpec{p.n});
  } else if (p.kind == "random") {
    if (p.n < 1 || p.d < 2) throw Error(ErrorCode::InvalidArgument, "random needs n >= 1 and d >= 2");
    std::mt19937_64 rng(p.seed);
    for (std::size_t i = 0; i < p.n; ++i) {
      std::vector<double> c(p.d);
      for (auto& x : c) x = unit_uniform(rng());
      pts.points.emplace_back(std::move(c));
    }
  } else if (p.kind == "core") {
    if (!(p.eps > 0.0 && p.eps < std::numbers::pi / 4)) {
      throw Error(ErrorCode::InvalidArgument, "core needs 0 < eps < pi/4");
    }
    if (p.n < 2) throw Error(ErrorCode::InvalidArgument, "core needs n >= 2");
    const double a = std::sqrt(p.eps);
    pts.points.push_back(Point{0.0, std::cos(a / 2)});
    const double hb = std::sin(a / 2);
    for (std::size_t j = 0; j < p.n; ++j) {
      const double x = -hb + 2.0 * hb * static_cast<double>(j) / static_cast<double>(p.n - 1);
      pts.points.push_back(Point{j + 1 == p.n ? hb : x, 0.0});
    }
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown instance kind '" + p.kind + "'");
  }
  return pts;
}

// ---------------------------------------------------------------------------
// Files

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

json points_to_json(const PointCloud& pts) {
  json arr = json::array();
  for (const auto& p : pts.points) arr.push_back(p.vec());
  return json{{"dim", pts.dim()}, {"points", arr}, {"root", pts.root}};
}

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorCode::Parse, msg); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t as_index(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) parse_fail(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

double as_number(const json& j, const char* what) {
  if (!j.is_number()) parse_fail(std::string(what) + " must be a number");
  return j.get<double>();
}

std::vector<double> as_coords(const json& j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) parse_fail("coordinate array of length " + std::to_string(dim) + " expected");
  std::vector<double> c;
  for (const auto& x : j) {
    c.push_back(as_number(x, "coordinate"));
    if (!std::isfinite(c.back())) parse_fail("non-finite coordinate");
  }
  return c;
}

std::vector<double> as_number_list(const json& j, const char* what) {
  if (!j.is_array()) parse_fail(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& x : j) out.push_back(as_number(x, what));
  return out;
}

}  // namespace

PointCloud points_from_json(const json& j) {
  const std::size_t dim = as_index(field(j, "dim"), "dim");
  if (dim < 2) parse_fail("dim must be at least 2");
  const json& arr = field(j, "points");
  if (!arr.is_array() || arr.empty()) parse_fail("points must be a non-empty array");
  PointCloud pts;
  for (const auto& p : arr) pts.points.emplace_back(as_coords(p, dim));
  pts.root = as_index(field(j, "root"), "root");
  if (pts.root >= pts.size()) parse_fail("root index out of range");
  std::vector<std::size_t> order(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pts.points[a].vec() < pts.points[b].vec();
  });
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    if (pts.points[order[i]] == pts.points[order[i + 1]]) {
      parse_fail("duplicate points " + std::to_string(std::min(order[i], order[i + 1])) + " and " +
                 std::to_string(std::max(order[i], order[i + 1])));
    }
  }
  return pts;
}

json tree_to_json(const SteinerGraph& tree, std::size_t root) {
  json vertices = json::array();
  for (std::size_t v = 0; v < tree.vertex_count(); ++v) {
    const auto c = tree.coords(v);
    vertices.push_back(json{{"coords", std::vector<double>(c.begin(), c.end())},
                            {"id", v},
                            {"kind", std::string(to_string(tree.kind(v)))}});
  }
  json edges = json::array();
  for (const auto& e : tree.edges()) edges.push_back(json::array({e.u, e.v}));
  return json{{"edges", edges}, {"root", root}, {"vertices", vertices}};
}

TreeFile tree_from_json(const json& j) {
  const json& verts = field(j, "vertices");
  if (!verts.is_array() || verts.empty()) parse_fail("vertices must be a non-empty array");
  const std::size_t n = verts.size();
  std::vector<const json*> by_id(n, nullptr);
  for (const auto& v : verts) {
    const std::size_t id = as_index(field(v, "id"), "vertex id");
    if (id >= n || by_id[id] != nullptr) parse_fail("vertex ids must be 0..n-1, each once");
    by_id[id] = &v;
  }
  const json& first_coords = field(*by_id[0], "coords");
  if (!first_coords.is_array()) parse_fail("coords must be an array");
  const std::size_t dim = first_coords.size();
  if (dim < 2) parse_fail("coordinates need at least 2 entries");
  TreeFile t;
  t.graph = SteinerGraph(dim);
  for (std::size_t id = 0; id < n; ++id) {
    const json& v = *by_id[id];
    const auto c = as_coords(field(v, "coords"), dim);
    const json& kind = field(v, "kind");
    if (!kind.is_string()) parse_fail("kind must be a string");
    VertexKind k;
    try {
      k = vertex_kind_from_string(kind.get<std::string>());
    } catch (const Error&) {
      parse_fail("unknown vertex kind '" + kind.get<std::string>() + "'");
    }
    t.graph.add_vertex(c, k);
  }
  const json& edges = field(j, "edges");
  if (!edges.is_array()) parse_fail("edges must be an array");
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2) parse_fail("edge must be a pair of ids");
    const std::size_t u = as_index(e[0], "edge endpoint");
    const std::size_t v = as_index(e[1], "edge endpoint");
    if (u >= n || v >= n || u == v) parse_fail("edge endpoint out of range or self loop");
    t.graph.add_edge(u, v);
  }
  t.root = as_index(field(j, "root"), "root");
  if (t.root >= n) parse_fail("root id out of range");
  return t;
}

json report_to_json(const SltReport& r) {
  return json{{"d", r.d},
              {"eps", r.eps},
              {"gamma", r.gamma},
              {"lambda", r.lambda},
              {"lightness", r.lightness},
              {"max_stretch", r.max_stretch},
              {"method", r.method},
              {"mst_weight", r.mst_weight},
              {"n", r.n},
              {"per_point_stretch", r.per_point_stretch},
              {"phase1_weight", r.phase1_weight},
              {"pruned_vertices", r.pruned_vertices},
              {"surface_angles", r.surface_angles},
              {"tree_weight", r.tree_weight},
              {"truncated_surfaces", r.truncated_surfaces}};
}

SltReport report_from_json(const json& j) {
  SltReport r;
  const json& method = field(j, "method");
  if (!method.is_string()) parse_fail("method must be a string");
  r.method = method.get<std::string>();
  r.n = as_index(field(j, "n"), "n");
  r.d = as_index(field(j, "d"), "d");
  r.eps = as_number(field(j, "eps"), "eps");
  r.gamma = as_number(field(j, "gamma"), "gamma");
  r.lambda = as_number(field(j, "lambda"), "lambda");
  r.mst_weight = as_number(field(j, "mst_weight"), "mst_weight");
  r.tree_weight = as_number(field(j, "tree_weight"), "tree_weight");
  r.lightness = as_number(field(j, "lightness"), "lightness");
  r.per_point_stretch = as_number_list(field(j, "per_point_stretch"), "per_point_stretch");
  r.max_stretch = as_number(field(j, "max_stretch"), "max_stretch");
  r.surface_angles = as_number_list(field(j, "surface_angles"), "surface_angles");
  r.phase1_weight = as_number(field(j, "phase1_weight"), "phase1_weight");
  r.truncated_surfaces = as_index(field(j, "truncated_surfaces"), "truncated_surfaces");
  r.pruned_vertices = as_index(field(j, "pruned_vertices"), "pruned_vertices");
  return r;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    parse_fail("'" + path + "': " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) parse_fail("cannot write '" + path + "'");
  f << text;
  if (!f) parse_fail("write to '" + path + "' failed");
}

std::vector<std::size_t> match_inputs(const SteinerGraph& tree, const PointCloud& pts) {
  std::map<std::vector<double>, std::size_t> exact;
  for (std::size_t v = tree.vertex_count(); v-- > 0;) {
    const auto c = tree.coords(v);
    exact[std::vector<double>(c.begin(), c.end())] = v;
  }
  double scale = 0.0;
  for (const auto& p : pts.points) {
    for (double x : p.coords()) scale = std::max(scale, std::abs(x));
  }
  const double tol = 1e-9 * std::max(scale, 1.0);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts.points[i];
    if (p.dim() != tree.dim()) throw Error(ErrorCode::DimensionMismatch, "tree and points differ in dimension");
    auto it = exact.find(p.vec());
    if (it != exact.end()) {
      out.push_back(it->second);
      continue;
    }
    std::size_t best = kNoParent;
    double best_d = tol;
    for (std::size_t v = 0; v < tree.vertex_count(); ++v) {
      const double dv = dist(p.coords(), tree.coords(v));
      if (dv <= best_d) {
        best_d = dv;
        best = v;
      }
    }
    if (best == kNoParent) throw Error(ErrorCode::InvalidArgument, "input point " + std::to_string(i) + " is not a tree vertex");
    out.push_back(best);
  }
  return out;
}

SltReport verify_tree(const TreeFile& tree, const PointCloud& pts) {
  const auto ids = match_inputs(tree.graph, pts);
  if (ids[pts.root] != tree.root) throw Error(ErrorCode::InvalidArgument, "tree root is not the input root");
  SltReport r;
  r.method = "verify";
  measure_tree(r, tree.graph, tree.root, ids, pts);
  return r;
}

// ---------------------------------------------------------------------------
// SVG

namespace {

struct Viewport {
  double min_x = 0, min_y = 0, scale = 1, ox = 0, oy = 0, height = 0;

  // Maps the bounding box of `xy` into the pixel box at (ox, oy) of size w x h.
  Viewport(const std::vector<PlanePoint>& xy, double x0, double y0, double w, double h, double margin) {
    double max_x = 0, max_y = 0;
    if (!xy.empty()) {
      min_x = max_x = xy.front().x;
      min_y = max_y = xy.front().y;
    }
    for (const auto& p : xy) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
    const double span = std::max({max_x - min_x, max_y - min_y, 1e-300});
    scale = (std::min(w, h) - 2 * margin) / span;
    ox = x0 + margin;
    oy = y0 + margin;
    height = std::min(w, h) - 2 * margin;
  }
  double px(double x) const { return ox + (x - min_x) * scale; }
  double py(double y) const { return oy + height - (y - min_y) * scale; }  // y up
};

std::string fmt(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << v;
  return s.str();
}

void svg_line(std::ostream& o, const Viewport& vp, PlanePoint a, PlanePoint b, const char* style) {
  o << "<line x1=\"" << fmt(vp.px(a.x)) << "\" y1=\"" << fmt(vp.py(a.y)) << "\" x2=\"" << fmt(vp.px(b.x))
    << "\" y2=\"" << fmt(vp.py(b.y)) << "\" " << style << "/>\n";
}

void svg_dot(std::ostream& o, const Viewport& vp, PlanePoint p, bool input, bool root = false) {
  o << "<circle cx=\"" << fmt(vp.px(p.x)) << "\" cy=\"" << fmt(vp.py(p.y)) << "\" r=\""
    << (root ? "4" : (input ? "2.5" : "1.5")) << "\" fill=\"" << (root ? "red" : (input ? "black" : "gray"))
    << "\"/>\n";
}

std::string svg_open(double w, double h) {
  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(w) << "\" height=\"" << fmt(h)
    << "\" viewBox=\"0 0 " << fmt(w) << " " << fmt(h) << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return o.str();
}

constexpr const char* kEdgeStyle = "stroke=\"black\" stroke-width=\"0.8\"";
constexpr const char* kBoundaryStyle = "stroke=\"steelblue\" stroke-width=\"0.8\" stroke-dasharray=\"4 3\"";
constexpr const char* kInnerStyle = "stroke=\"lightsteelblue\" stroke-width=\"0.5\" stroke-dasharray=\"2 3\"";

PlanePoint xy(std::span<const double> c) { return {c[0], c[1]}; }

}  // namespace

std::string render_tree_svg(const SteinerGraph& tree, std::size_t root) {
  std::vector<PlanePoint> pts;
  for (std::size_t v = 0; v < tree.vertex_count(); ++v) pts.push_back(xy(tree.coords(v)));
  const double size = 800;
  const Viewport vp(pts, 0, 0, size, size, 20);
  std::ostringstream o;
  o << svg_open(size, size);
  for (const auto& e : tree.edges()) svg_line(o, vp, pts[e.u], pts[e.v], kEdgeStyle);
  for (std::size_t v = 0; v < tree.vertex_count(); ++v) {
    svg_dot(o, vp, pts[v], tree.kind(v) == VertexKind::Input, v == root);
  }
  o << "</svg>\n";
  return o.str();
}

std::string render_points_svg(const PointCloud& pts) {
  std::vector<PlanePoint> xy_pts;
  for (const auto& p : pts.points) xy_pts.push_back({p[0], p[1]});
  const double size = 800;
  const Viewport vp(xy_pts, 0, 0, size, size, 20);
  std::ostringstream o;
  o << svg_open(size, size);
  for (std::size_t i = 0; i < xy_pts.size(); ++i) svg_dot(o, vp, xy_pts[i], true, i == pts.root);
  o << "</svg>\n";
  return o.str();
}

std::string render_gadgets_svg(const SltResult& result) {
  const auto& surfaces = result.trace.surfaces;
  const auto& gadgets = result.trace.gadgets;
  const std::size_t count = gadgets.size();
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "no gadgets to render");
  const std::size_t cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(count))));
  const std::size_t rows = (count + cols - 1) / cols;
  const double cell = 240;
  std::ostringstream o;
  o << svg_open(cell * static_cast<double>(cols), cell * static_cast<double>(rows));
  for (std::size_t i = 0; i < count; ++i) {
    const auto& g = gadgets[i];
    const auto& surf = surfaces[i];
    std::vector<PlanePoint> pts;
    double reach = 0.0;
    for (const auto& node : g.nodes) {
      pts.push_back(node.p);
      reach = std::max(reach, norm(node.p));
    }
    std::vector<PlanePoint> rays;
    for (double a : surf.cum_angle) rays.push_back({reach * std::cos(a), reach * std::sin(a)});
    std::vector<PlanePoint> box = pts;
    box.insert(box.end(), rays.begin(), rays.end());
    const double x0 = cell * static_cast<double>(i % cols);
    const double y0 = cell * static_cast<double>(i / cols);
    const Viewport vp(box, x0, y0, cell, cell, 12);
    o << "<g id=\"surface-" << i << "\">\n";
    o << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(y0) << "\" width=\"" << fmt(cell) << "\" height=\"" << fmt(cell)
      << "\" fill=\"none\" stroke=\"#ddd\"/>\n";
    for (std::size_t j = 0; j < rays.size(); ++j) {
      const bool outer = j == 0 || j + 1 == rays.size();
      svg_line(o, vp, {0.0, 0.0}, rays[j], outer ? kBoundaryStyle : kInnerStyle);
    }
    for (const auto& [u, v] : g.edges) svg_line(o, vp, pts[u], pts[v], kEdgeStyle);
    for (std::size_t v = 0; v < g.nodes.size(); ++v) {
      svg_dot(o, vp, pts[v], g.nodes[v].kind == VertexKind::Input, v == 0);
    }
    o << "</g>\n";
  }
  o << "</svg>\n";
  return o.str();
}

// ---------------------------------------------------------------------------
// Command line

namespace {

struct Built {
  SteinerGraph tree;
  std::size_t root = 0;
  SltReport report;
};

// Isosceles triangle with apex at the root whose base segment covers the other
// (collinear) points.
CoreInstance core_instance_from_points(const PointCloud& pts, double eps, double lambda) {
  if (pts.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "core2d needs planar input");
  const Point& s = pts.root_point();
  std::vector<PlanePoint> base;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i != pts.root) base.push_back({pts.points[i][0], pts.points[i][1]});
  }
  if (base.size() < 2) throw Error(ErrorCode::InvalidArgument, "core2d needs at least two base points");
  std::size_t far = 1;
  for (std::size_t i = 1; i < base.size(); ++i) {
    if (dist(base[0], base[i]) > dist(base[0], base[far])) far = i;
  }
  const double len = dist(base[0], base[far]);
  const PlanePoint u{(base[far].x - base[0].x) / len, (base[far].y - base[0].y) / len};
  const PlanePoint apex{s[0], s[1]};
  const double t0 = (apex.x - base[0].x) * u.x + (apex.y - base[0].y) * u.y;
  const PlanePoint foot{base[0].x + t0 * u.x, base[0].y + t0 * u.y};
  double hw = 0.0;
  for (const auto& p : base) {
    const double t = (p.x - foot.x) * u.x + (p.y - foot.y) * u.y;
    const PlanePoint q{foot.x + t * u.x, foot.y + t * u.y};
    if (dist(p, q) > 1e-9 * std::max(len, dist(apex, foot))) {
      throw Error(ErrorCode::InvalidArgument, "core2d base points are not collinear");
    }
    hw = std::max(hw, std::abs(t));
  }
  CoreInstance inst;
  inst.apex = apex;
  inst.base_a = {foot.x - hw * u.x, foot.y - hw * u.y};
  inst.base_b = {foot.x + hw * u.x, foot.y + hw * u.y};
  inst.base_points = base;
  inst.eps = eps;
  inst.lambda = lambda;
  return inst;
}

Built build_method(const std::string& method, const PointCloud& pts, double eps, double gamma, double lambda,
                   bool chord) {
  Built b;
  if (method == "folding") {
    PipelineOptions opt;
    opt.eps = eps;
    opt.gamma = gamma;
    opt.lambda = lambda;
    opt.chord_shortcut = chord;
    opt.keep_gadgets = false;
    SltResult r = assemble_slt(pts, opt);
    b.tree = std::move(r.tree);
    b.report = std::move(r.report);
    return b;
  }
  if (method == "core2d") {
    const CoreGraph core = build_core(core_instance_from_points(pts, eps, lambda));
    std::vector<std::size_t> targets;
    std::size_t j = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) targets.push_back(i == pts.root ? core.root : core.input_vertex[j++]);
    std::vector<std::size_t> ids;
    b.tree = shortest_path_tree(core.to_steiner_graph(), core.root, targets, ids);
    b.report.method = "core2d";
    b.report.eps = eps;
    b.report.lambda = lambda;
    measure_tree(b.report, b.tree, 0, ids, pts);
    return b;
  }
  if (method == "pyramid") {
    if (pts.root != 0 || pts.size() < 2) throw Error(ErrorCode::InvalidArgument, "pyramid input needs the apex as root 0");
    const GridSpec grid{pts.size() - 1};
    const PointCloud expected = pyramid_instance(pts.dim(), eps, grid);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (dist(expected.points[i], pts.points[i]) > 1e-9) {
        throw Error(ErrorCode::InvalidArgument, "input is not the grid instance for this d and eps");
      }
    }
    PyramidCore core = build_pyramid_core(pts.dim(), eps, grid, lambda);
    b.tree = std::move(core.tree);
    b.report = std::move(core.report);
    return b;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + method + "'");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("SLT_SEED"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw Error(ErrorCode::Parse, "SLT_SEED must be an unsigned integer");
    return v;
  }
  return 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steiner shallow-light trees in R^d", "slt"};
  app.require_subcommand(1);

  GenParams gen;
  std::optional<std::uint64_t> seed;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a point set");
  gen_cmd->add_option("--kind", gen.kind, "circle | grid | random | core")
      ->check(CLI::IsMember({"circle", "grid", "random", "core"}));
  gen_cmd->add_option("--eps", gen.eps, "eps (circle size, grid and core geometry)");
  gen_cmd->add_option("--d", gen.d, "dimension");
  gen_cmd->add_option("--n", gen.n, "number of points");
  gen_cmd->add_option("--seed", seed, "random seed (fallback: SLT_SEED, then 1)");
  gen_cmd->add_option("--output,-o", gen_out, "output file (default stdout)");

  std::string method = "folding";
  std::string input, output, report_path, tree_path;
  double eps = 0.04, gamma = 8.0, lambda = 1.25;
  bool chord = false;
  auto* build_cmd = app.add_subcommand("build", "Build a tree for a point set");
  build_cmd->add_option("--method", method, "folding | core2d | pyramid")
      ->check(CLI::IsMember({"folding", "core2d", "pyramid"}));
  build_cmd->add_option("--eps", eps, "target root stretch 1 + eps");
  build_cmd->add_option("--gamma", gamma, "folding runs with internal eps / gamma");
  build_cmd->add_option("--lambda", lambda, "apex angle growth per level");
  build_cmd->add_flag("--chord-shortcut", chord, "replace bent lifted edges by chords");
  build_cmd->add_option("--input,-i", input, "points file")->required();
  build_cmd->add_option("--output,-o", output, "tree file (default stdout)");
  build_cmd->add_option("--report", report_path, "also write the report to this file");

  auto* verify_cmd = app.add_subcommand("verify", "Measure a tree; exit 0 iff max stretch <= 1 + eps");
  verify_cmd->add_option("--input,-i", input, "points file")->required();
  verify_cmd->add_option("--tree,-t", tree_path, "tree file")->required();
  verify_cmd->add_option("--eps", eps, "allowed stretch 1 + eps");
  verify_cmd->add_option("--output,-o", output, "report file (default stdout)");

  auto* render_cmd = app.add_subcommand("render", "SVG of a tree or point file");
  render_cmd->add_option("--input,-i", input, "tree or points file")->required();
  render_cmd->add_option("--output,-o", output, "SVG file (default stdout)");
  render_cmd->add_option("--eps", eps, "eps for the unfolded gadgets of d > 2 points");
  render_cmd->add_option("--gamma", gamma, "gamma for the unfolded gadgets of d > 2 points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen_cmd) {
      gen.seed = resolve_seed(seed);
      write_text(gen_out, canonical_dump(points_to_json(generate(gen))), out);
      return 0;
    }
    if (*build_cmd) {
      const PointCloud pts = points_from_json(read_json_file(input));
      const Built b = build_method(method, pts, eps, gamma, lambda, chord);
      write_text(output, canonical_dump(tree_to_json(b.tree, b.root)), out);
      if (!report_path.empty()) write_text(report_path, canonical_dump(report_to_json(b.report)), out);
      return 0;
    }
    if (*verify_cmd) {
      const PointCloud pts = points_from_json(read_json_file(input));
      const TreeFile tree = tree_from_json(read_json_file(tree_path));
      SltReport r = verify_tree(tree, pts);
      r.eps = eps;
      write_text(output, canonical_dump(report_to_json(r)), out);
      if (r.max_stretch > 1.0 + eps) {
        err << "max stretch " << r.max_stretch << " exceeds " << 1.0 + eps << "\n";
        return 1;
      }
      return 0;
    }
    if (*render_cmd) {
      const json j = read_json_file(input);
      std::string svg;
      if (j.contains("edges")) {
        const TreeFile t = tree_from_json(j);
        svg = render_tree_svg(t.graph, t.root);
      } else {
        const PointCloud pts = points_from_json(j);
        if (pts.dim() == 2) {
          svg = render_points_svg(pts);
        } else {
          PipelineOptions opt;
          opt.eps = eps;
          opt.gamma = gamma;
          svg = render_gadgets_svg(assemble_slt(pts, opt));
        }
      }
      write_text(output, svg, out);
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::Parse ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace slt
