#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "check_error.hpp"
#include "slt/core2d.hpp"
#include "slt/pyramid.hpp"
#include "support.hpp"

using namespace slt;

namespace {

/// Textbook greedy spanner with an all-pairs distance matrix updated after every insertion.
std::vector<std::pair<std::size_t, std::size_t>> naive_greedy(const std::vector<Point>& pts, double t) {
  const std::size_t n = pts.size();
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) pairs.emplace_back(testing::naive_dist(pts[u].vec(), pts[v].vec()), u, v);
  std::sort(pairs.begin(), pairs.end());
  std::vector<std::vector<double>> d(n, std::vector<double>(n, std::numeric_limits<double>::infinity()));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& [w, u, v] : pairs) {
    if (d[u][v] <= t * w) continue;
    out.emplace_back(u, v);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        d[i][j] = std::min({d[i][j], d[i][u] + w + d[v][j], d[i][v] + w + d[u][j]});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Point> random_points(std::size_t n, std::size_t d, std::uint64_t seed) {
  return testing::random_cloud(n, d, seed).points;
}

}  // namespace

TEST_SUITE("pyramid") {
  TEST_CASE("right pyramid geometry") {
    const Pyramid p = make_pyramid(Point{0, 0, 0}, 0.5, 0.3);
    CHECK(p.apex[1] == 0.0);
    CHECK(p.apex[2] == 0.0);
    const double corner_dist = dist(p.apex, Point{0, 0.5, 0.5});
    for (double y : {-0.5, 0.5})
      for (double z : {-0.5, 0.5}) CHECK(dist(p.apex, Point{0, y, z}) == doctest::Approx(corner_dist).epsilon(1e-12));
    CHECK(angle_at_apex(p.apex, Point{0, -0.5, -0.5}, Point{0, 0.5, 0.5}) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK_ERROR_CODE(make_pyramid(Point{0, 0, 0}, 0.5, 0.0), ErrorCode::AngleOutOfRange);
    CHECK_ERROR_CODE(make_pyramid(Point{0, 0, 0}, 0.5, 0.3, 3), ErrorCode::OutOfRange);
  }

  TEST_CASE("grid specification") {
    CHECK(GridSpec{64}.per_axis(3) == 8);
    CHECK(GridSpec{65}.per_axis(3) == 9);
    CHECK(GridSpec{1000}.per_axis(4) == 10);
    CHECK(GridSpec{1}.per_axis(5) == 1);
    CHECK_ERROR_CODE(GridSpec{4}.per_axis(2), ErrorCode::DimensionTooSmall);
    // (2 sqrt(3) 0.04^(0.66 - 1.5))^2
    CHECK(GridSpec::regime_min(3, 0.04) == doctest::Approx(std::pow(2 * std::sqrt(3.0) * std::pow(0.04, -0.84), 2)));
  }

  TEST_CASE("instance layout") {
    const PointCloud pc = pyramid_instance(3, 0.04, GridSpec{64});
    REQUIRE(pc.size() == 65);
    CHECK(pc.root == 0);
    CHECK(pc.points[0] == Point{std::cos(0.1), 0, 0});
    const double half = std::sin(0.1) / std::sqrt(2.0);
    for (double y : {-half, half})
      for (double z : {-half, half}) CHECK(dist(pc.points[0], Point{0, y, z}) == doctest::Approx(1.0).epsilon(1e-14));
    std::vector<double> ys;
    for (std::size_t i = 1; i < pc.size(); ++i) {
      CHECK(pc.points[i][0] == 0.0);
      CHECK(std::abs(pc.points[i][1]) < half);
      CHECK(std::abs(pc.points[i][2]) < half);
      ys.push_back(pc.points[i][1]);
    }
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end(), [](double a, double b) { return std::abs(a - b) < 1e-15; }), ys.end());
    CHECK(ys.size() == 8);
    for (std::size_t i = 0; i + 1 < ys.size(); ++i) CHECK(ys[i + 1] - ys[i] == doctest::Approx(2 * half / 8).epsilon(1e-12));
  }

  TEST_CASE("greedy spanner examples") {
    CHECK(greedy_spanner({Point{0, 0}, Point{1, 1}}, 1.25).size() == 1);
    CHECK(greedy_spanner({Point{0, 0}, Point{1, 0}, Point{2, 0}}, 1.25).size() == 2);
    CHECK(greedy_spanner({Point{0, 0}}, 1.25).empty());
    CHECK_ERROR_CODE(greedy_spanner({Point{0, 0}, Point{1, 1}}, 1.0), ErrorCode::InvalidArgument);
  }

  TEST_CASE("greedy spanner matches the textbook greedy and spans") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      const std::size_t n = 5 + 3 * seed;
      const auto pts = random_points(n, 2 + seed % 3, seed);
      const auto edges = greedy_spanner(pts, 1.25);
      std::vector<std::pair<std::size_t, std::size_t>> got;
      for (const auto& e : edges) got.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
      std::sort(got.begin(), got.end());
      CHECK(got == naive_greedy(pts, 1.25));
      if (n <= 40) CHECK(testing::spanner_ratio(pts, edges) <= 1.25 + 1e-12);
    }
  }

  TEST_CASE("MST lower bound") {
    CHECK(pyramid_mst_lower_bound(GridSpec{64}, 3, 0.04) == doctest::Approx(4 * std::sqrt(1.0 / 75)).epsilon(1e-12));
    CHECK(pyramid_mst_lower_bound(GridSpec{64}, 3, 0.04) == doctest::Approx(0.46188).epsilon(1e-5));
    CHECK_ERROR_CODE(pyramid_mst_lower_bound(GridSpec{1}, 3, 0.04), ErrorCode::InvalidArgument);
    CHECK_ERROR_CODE(pyramid_mst_lower_bound(GridSpec{64}, 2, 0.04), ErrorCode::DimensionTooSmall);
    for (std::size_t d : {3, 4}) {
      for (std::size_t n : {16, 81, 200}) {
        const PointCloud pc = pyramid_instance(d, 0.09, GridSpec{n});
        PointCloud base;
        base.points.assign(pc.points.begin() + 1, pc.points.end());
        CHECK(mst_weight(base) > pyramid_mst_lower_bound(GridSpec{n}, d, 0.09));
      }
    }
  }

  TEST_CASE("d = 3 core structure") {
    const PyramidCore pc = build_pyramid_core(3, 0.04, GridSpec{64});
    CHECK(pc.levels == 4);
    CHECK(pc.alpha == doctest::Approx(0.2).epsilon(1e-15));
    REQUIRE(pc.pyramids.size() == 5);
    for (int i = 0; i <= 4; ++i) {
      CHECK(pc.pyramids[i].size() == (std::size_t{1} << (2 * i)));
      for (const auto& p : pc.pyramids[i]) {
        CHECK(p.apex_angle == doctest::Approx(0.2 * std::pow(1.25, i)).epsilon(1e-12));
        CHECK(p.apex[0] > 0.0);
      }
      CHECK(pc.level_weight[i] <= pc.level_bound[i] + 1e-9);
      CHECK(pc.level_bound[i] == doctest::Approx(8 * std::pow(2.0 / 1.25, i)).epsilon(1e-12));
    }
    // The 8 x 8 cell centres fall on odd points of the 17 x 17 corner lattice and merge.
    CHECK(pc.base_vertices == 17 * 17);
    // 7 x 7: only the centre point lands on the lattice.
    CHECK(build_pyramid_core(3, 0.04, GridSpec{49}).base_vertices == 17 * 17 + 48);
    CHECK(pc.report.max_stretch <= 1.04);
    CHECK(pc.max_path_length <= pc.path_bound);
    CHECK(pc.path_bound == doctest::Approx(std::cos(0.1) + 17.0 / 16 * 0.04).epsilon(1e-15));
    CHECK(pc.report.mst_weight > pc.mst_lower_bound);
  }

  TEST_CASE("diagonal cross-section is the planar core") {
    for (double eps : {0.09, 0.04}) {
      CoreInstance inst;
      const double a = std::sqrt(eps);
      inst.apex = {0.0, std::cos(a / 2)};
      inst.base_a = {-std::sin(a / 2), 0.0};
      inst.base_b = {std::sin(a / 2), 0.0};
      inst.eps = eps;
      const CoreGraph core = build_core(inst);
      for (std::size_t d : {3, 4}) {
        if (d == 4 && eps < 0.09) continue;  // 17^3 base corners; covered by the acceptance run
        const PyramidCore pc = build_pyramid_core(d, eps, GridSpec{16});
        REQUIRE(pc.level_gap.size() == core.level_gap.size());
        for (std::size_t i = 0; i < core.level_gap.size(); ++i) {
          CHECK(pc.level_gap[i] == doctest::Approx(core.level_gap[i]).epsilon(1e-9));
        }
      }
    }
  }

  TEST_CASE("stretch and tree on small grids") {
    for (std::size_t d : {3, 4}) {
      for (double eps : {0.09, 0.04}) {
        if (d == 4 && eps < 0.09) continue;
        for (std::size_t n : {9, 50}) {
          const PyramidCore pc = build_pyramid_core(d, eps, GridSpec{n});
          CHECK(pc.report.max_stretch <= 1 + eps);
          CHECK(pc.max_path_length <= pc.path_bound);
          for (std::size_t i = 0; i <= static_cast<std::size_t>(pc.levels); ++i) CHECK(pc.level_weight[i] <= pc.level_bound[i] + 1e-9);
          CHECK(pc.tree.edge_count() + 1 == pc.tree.vertex_count());
          const auto td = testing::tree_distances(pc.tree, 0);
          for (std::size_t i = 1; i < pc.inputs.size(); ++i) {
            const std::size_t v = pc.tree_input_vertex[i];
            CHECK(dist(pc.tree.point(v), pc.inputs.points[i]) < 1e-12);
            CHECK(td[v] / dist(pc.inputs.points[0], pc.inputs.points[i]) ==
                  doctest::Approx(pc.report.per_point_stretch[i]).epsilon(1e-12));
          }
        }
      }
    }
  }

  TEST_CASE("base spanner is verified exhaustively when small") {
    const PyramidCore pc = build_pyramid_core(3, 0.25, GridSpec{9});
    REQUIRE(pc.base_points.size() <= 40);
    CHECK(testing::spanner_ratio(pc.base_points, pc.base_spanner) <= 1.25 + 1e-12);
  }

  TEST_CASE("errors") {
    CHECK_ERROR_CODE(build_pyramid_core(2, 0.04, GridSpec{9}), ErrorCode::DimensionTooSmall);
    CHECK_ERROR_CODE(build_pyramid_core(3, 10.0, GridSpec{9}), ErrorCode::EpsOutOfRange);
    CHECK_ERROR_CODE(build_pyramid_core(3, 0.25, GridSpec{9}, 1.9), ErrorCode::AngleOverflow);
    CHECK_ERROR_CODE(build_pyramid_core(3, 0.04, GridSpec{0}), ErrorCode::InvalidArgument);
  }
}
