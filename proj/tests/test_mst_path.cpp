#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <string>

#include "check_error.hpp"
#include "slt/metrics.hpp"
#include "slt/mst_path.hpp"
#include "support.hpp"

using namespace slt;

namespace {

PointCloud cloud(std::initializer_list<Point> pts, std::size_t root = 0) {
  PointCloud pc;
  pc.points = pts;
  pc.root = root;
  return pc;
}

bool is_spanning_tree(const Tree& t) {
  if (t.edges.size() + 1 != t.n) return false;
  std::vector<std::size_t> parent(t.n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& e : t.edges) {
    const auto a = find(e.u), b = find(e.v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

}  // namespace

TEST_SUITE("mst_path") {
  TEST_CASE("mst examples") {
    const Tree two = euclidean_mst(cloud({Point{0, 0}, Point{3, 4}}));
    REQUIRE(two.edges.size() == 1);
    CHECK(two.weight() == 5.0);
    const Tree sq = euclidean_mst(cloud({Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}}));
    CHECK(sq.weight() == 3.0);
    CHECK(is_spanning_tree(sq));
    const Tree single = euclidean_mst(cloud({Point{0, 0}}));
    CHECK(single.edges.empty());
  }

  TEST_CASE("mst matches Kruskal on 10 points") {
    const PointCloud pc = testing::random_cloud(10, 2, 2024);
    const Tree prim = euclidean_mst(pc);
    const Tree kruskal = kruskal_mst(pc);
    CHECK(is_spanning_tree(prim));
    CHECK(prim.weight() == kruskal.weight());
  }

  TEST_CASE("Prim and Kruskal agree on random instances") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const std::size_t d = 2 + seed % 7;
      const std::size_t n = 2 + (seed * 37) % 199;
      const PointCloud pc = testing::random_cloud(n, d, seed + 100);
      const Tree prim = euclidean_mst(pc);
      CHECK(is_spanning_tree(prim));
      CHECK(prim.weight() == kruskal_mst(pc).weight());
      for (const auto& e : prim.edges) CHECK(e.w == dist(pc.points[e.u], pc.points[e.v]));
    }
  }

  TEST_CASE("duplicate points are rejected") {
    const PointCloud pc = cloud({Point{0, 0}, Point{1, 1}, Point{0, 0}});
    CHECK_ERROR_CODE(euclidean_mst(pc), ErrorCode::DuplicatePoints);
    try {
      euclidean_mst(pc);
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("0") != std::string::npos);
      CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
  }

  TEST_CASE("collinear points give the identity order") {
    const PointCloud pc = cloud({Point{0, 0}, Point{1, 0}, Point{2, 0}, Point{3, 0}, Point{4, 0}});
    const Tree m = euclidean_mst(pc);
    const HamPath h = dfs_hamiltonian(m, pc);
    CHECK(h.order == std::vector<std::size_t>{0, 1, 2, 3, 4});
    CHECK(h.weight() == m.weight());
  }

  TEST_CASE("unit star") {
    const double c = std::cos(2 * std::numbers::pi / 3), s = std::sin(2 * std::numbers::pi / 3);
    const PointCloud pc = cloud({Point{0, 0}, Point{1, 0}, Point{c, s}, Point{c, -s}});
    const Tree m = euclidean_mst(pc);
    CHECK(m.weight() == doctest::Approx(3.0).epsilon(1e-15));
    const HamPath h = dfs_hamiltonian(m, pc);
    CHECK(h.order == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(h.weight() == doctest::Approx(1 + 2 * std::sqrt(3.0)).epsilon(1e-14));
    CHECK(h.weight() <= 2 * m.weight());
  }

  TEST_CASE("path geometry follows the order and starts at the root") {
    const PointCloud base = testing::random_cloud(40, 3, 9);
    PointCloud pc = base;
    pc.root = 17;
    const HamPath h = dfs_hamiltonian(euclidean_mst(pc), pc);
    CHECK(h.order.front() == 17);
    std::set<std::size_t> seen(h.order.begin(), h.order.end());
    CHECK(seen.size() == pc.size());
    for (std::size_t j = 0; j < h.order.size(); ++j) CHECK(h.geometry.vertices()[j] == pc.points[h.order[j]]);
  }

  TEST_CASE("doubling bound and determinism") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const PointCloud pc = testing::random_cloud(5 + seed * 3, 2 + seed % 7, seed);
      const Tree m = euclidean_mst(pc);
      const HamPath h = dfs_hamiltonian(m, pc);
      CHECK(h.weight() <= 2 * m.weight() * (1 + 1e-12));
      CHECK(dfs_hamiltonian(euclidean_mst(pc), pc).order == h.order);
    }
  }
}
