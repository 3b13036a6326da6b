#include <doctest.h>

#include <cmath>
#include <numbers>

#include "check_error.hpp"
#include "slt/geometry.hpp"
#include "support.hpp"

using namespace slt;
using slt::testing::uniform01;

TEST_SUITE("geometry") {
  TEST_CASE("dist examples") {
    CHECK(dist(Point{0, 0}, Point{3, 4}) == 5.0);
    CHECK(dist(Point{1.5, -2}, Point{1.5, -2}) == 0.0);
    CHECK(dist(Point{1, 0, 0}, Point{0, 1, 0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK_ERROR_CODE(dist(Point{0, 0}, Point{0, 0, 0}), ErrorCode::DimensionMismatch);
  }

  TEST_CASE("points need d >= 2 and finite coordinates") {
    CHECK_THROWS_AS(Point({1.0}), Error);
    CHECK_THROWS_AS(Point({1.0, std::nan("")}), Error);
    CHECK_THROWS_AS(Point({1.0, INFINITY}), Error);
  }

  TEST_CASE("angle_at_apex examples") {
    CHECK(angle_at_apex(Point{0, 0}, Point{1, 0}, Point{0, 1}) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
    CHECK(angle_at_apex(Point{0, 0, 0}, Point{1, 0, 0}, Point{1, 1, 0}) ==
          doctest::Approx(std::numbers::pi / 4).epsilon(1e-15));
    CHECK(angle_at_apex(Point{0, 0}, Point{1, 0}, Point{2, 0}) == 0.0);
    CHECK(angle_at_apex(Point{0, 0}, Point{1, 0}, Point{-2, 0}) == doctest::Approx(std::numbers::pi));
    CHECK_ERROR_CODE(angle_at_apex(Point{0, 0}, Point{0, 0}, Point{1, 0}), ErrorCode::DegenerateRay);
    CHECK_ERROR_CODE(angle_at_apex(Point{0, 0}, Point{1, 0}, Point{1e-13, 0}), ErrorCode::DegenerateRay);
  }

  TEST_CASE("angle_at_apex is accurate for tiny angles") {
    const double a = 1e-10;
    const double got = angle_at_apex(Point{0, 0, 0}, Point{1, 0, 0}, Point{std::cos(a), std::sin(a), 0});
    CHECK(std::abs(got - a) <= 1e-9 * a);
  }

  TEST_CASE("rotate_in_span examples") {
    const Point o{0, 0, 0};
    const Point r0 = rotate_in_span(o, Point{1, 0, 0}, Point{0, 1, 0}, 0.0, 2.0);
    CHECK(r0 == Point{2, 0, 0});
    const Point r1 = rotate_in_span(o, Point{1, 0, 0}, Point{0, 1, 0}, std::numbers::pi / 2, 1.0);
    CHECK(dist(r1, Point{0, 1, 0}) < 1e-15);
    const double t = std::numbers::pi / 8;
    const Point r2 = rotate_in_span(o, Point{1, 0, 0}, Point{1, 1, 0}, t, 1.0);
    CHECK(dist(r2, Point{std::cos(t), std::sin(t), 0}) < 1e-15);
    CHECK_ERROR_CODE(rotate_in_span(o, Point{1, 0, 0}, Point{0, 1, 0}, 2.0, 1.0), ErrorCode::AngleOutOfRange);
    CHECK_ERROR_CODE(rotate_in_span(o, Point{1, 0, 0}, Point{-1, 0, 0}, 0.5, 1.0), ErrorCode::DegenerateRay);
    CHECK_ERROR_CODE(rotate_in_span(o, o, Point{0, 1, 0}, 0.0, 1.0), ErrorCode::DegenerateRay);
  }

  TEST_CASE("rotate_in_span reaches the second ray") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
      const std::size_t d = 2 + trial % 7;
      std::vector<double> s(d), u(d), v(d);
      for (std::size_t i = 0; i < d; ++i) {
        s[i] = uniform01(rng);
        u[i] = uniform01(rng);
        v[i] = uniform01(rng);
      }
      const Point ps(s), pu(u), pv(v);
      const double a = angle_at_apex(ps, pu, pv);
      if (a > std::numbers::pi - 1e-6) continue;
      const Point got = rotate_in_span(ps, pu, pv, a, dist(ps, pv));
      CHECK(dist(got, pv) <= 1e-9 * std::max(1.0, dist(ps, pv)));
      const double r = 0.37;
      CHECK(std::abs(dist(rotate_in_span(ps, pu, pv, 0.3 * a, r), ps) - r) <= 1e-12 * r);
    }
  }

  TEST_CASE("triangle inequality") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t d = 2 + trial % 7;
      std::vector<double> a(d), b(d), c(d);
      for (std::size_t i = 0; i < d; ++i) {
        a[i] = uniform01(rng) * 10 - 5;
        b[i] = uniform01(rng) * 10 - 5;
        c[i] = uniform01(rng) * 10 - 5;
      }
      const Point p(a), q(b), r(c);
      CHECK(dist(p, r) <= (dist(p, q) + dist(q, r)) * (1 + 1e-12));
    }
  }

  TEST_CASE("point_at_arc examples") {
    const Polyline straight({Point{0, 0}, Point{4, 0}});
    CHECK(point_at_arc(straight, 1.0) == Point{1, 0});
    CHECK(point_at_arc(straight, 4.0) == Point{4, 0});
    CHECK(point_at_arc(straight, 0.0) == Point{0, 0});
    const Polyline ell({Point{0, 0}, Point{1, 0}, Point{1, 1}});
    CHECK(point_at_arc(ell, 1.5) == Point{1, 0.5});
    CHECK(ell.length() == 2.0);
    CHECK_ERROR_CODE(point_at_arc(ell, 2.5), ErrorCode::OutOfRange);
    CHECK_ERROR_CODE(point_at_arc(ell, -0.1), ErrorCode::OutOfRange);
  }

  TEST_CASE("polyline prefix lengths") {
    const Polyline p({Point{0, 0, 0}, Point{1, 2, 2}, Point{1, 2, 2}, Point{1, 2, 5}});
    REQUIRE(p.cum_len().size() == 4);
    CHECK(p.cum_len()[0] == 0.0);
    CHECK(p.segment_length(0) == 3.0);
    CHECK(p.segment_length(1) == 0.0);
    CHECK(p.length() == 6.0);
    const ArcPosition pos = p.locate(4.0);
    CHECK(pos.segment_index == 2);
    CHECK(pos.t == doctest::Approx(1.0));
    CHECK(pos.arc_len == 4.0);
  }

  TEST_CASE("point_at_arc is 1-Lipschitz") {
    std::mt19937_64 rng(5);
    std::vector<Point> v;
    for (int i = 0; i < 30; ++i) v.push_back(Point{uniform01(rng), uniform01(rng), uniform01(rng)});
    const Polyline p(v);
    for (int trial = 0; trial < 2000; ++trial) {
      const double a = uniform01(rng) * p.length();
      const double b = uniform01(rng) * p.length();
      CHECK(dist(point_at_arc(p, a), point_at_arc(p, b)) <= std::abs(a - b) * (1 + 1e-12) + 1e-15);
    }
  }

  TEST_CASE("coincidence tolerance") {
    CHECK(coincident(Point{0, 0}, Point{5e-13, 0}));
    CHECK_FALSE(coincident(Point{0, 0}, Point{2e-12, 0}));
  }
}
