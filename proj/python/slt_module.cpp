#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "slt/cli_io.hpp"
#include "slt/error.hpp"
#include "slt/pipeline.hpp"

namespace py = pybind11;

namespace {

std::string generate_points(const std::string& kind, double eps, std::size_t d, std::size_t n, std::uint64_t seed) {
  slt::GenParams p;
  p.kind = kind;
  p.eps = eps;
  p.d = d;
  p.n = n;
  p.seed = seed;
  return slt::points_to_json(slt::generate(p)).dump();
}

std::string build_tree(const std::string& points, double eps, double gamma, double lambda, bool chord_shortcut) {
  const slt::PointCloud pts = slt::points_from_json(slt::json::parse(points));
  slt::PipelineOptions opt;
  opt.eps = eps;
  opt.gamma = gamma;
  opt.lambda = lambda;
  opt.chord_shortcut = chord_shortcut;
  opt.keep_gadgets = false;
  const slt::SltResult r = slt::assemble_slt(pts, opt);
  slt::json out;
  out["tree"] = slt::tree_to_json(r.tree, 0);
  out["report"] = slt::report_to_json(r.report);
  return out.dump();
}

std::string verify_tree(const std::string& tree, const std::string& points) {
  const slt::TreeFile t = slt::tree_from_json(slt::json::parse(tree));
  const slt::PointCloud pts = slt::points_from_json(slt::json::parse(points));
  return slt::report_to_json(slt::verify_tree(t, pts)).dump();
}

std::tuple<int, std::string, std::string> run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"slt"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = slt::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

PYBIND11_MODULE(_slt, m) {
  m.doc() = "Steiner shallow-light trees";
  static py::exception<slt::Error> slt_error(m, "SltError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const slt::Error& e) {
      py::set_error(slt_error, e.what());
    } catch (const nlohmann::json::exception& e) {
      py::set_error(slt_error, e.what());
    }
  });
  m.def("generate_points", &generate_points, py::arg("kind"), py::arg("eps"), py::arg("d"), py::arg("n"),
        py::arg("seed"));
  m.def("build_tree", &build_tree, py::arg("points"), py::arg("eps"), py::arg("gamma"), py::arg("lam"),
        py::arg("chord_shortcut"));
  m.def("verify_tree", &verify_tree, py::arg("tree"), py::arg("points"));
  m.def("run", &run, py::arg("args"));
}
