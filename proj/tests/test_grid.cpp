#include <cmath>
#include <numbers>

#include "bott/error.hpp"
#include "bott/grid.hpp"
#include "doctest.h"

using bott::AxisKind;
using bott::ParameterGrid;

TEST_SUITE("grid") {
  TEST_CASE("circle coordinates exclude the endpoint") {
    const auto g = ParameterGrid::circle(16);
    CHECK(g.size() == 16);
    CHECK(g.rank() == 1);
    CHECK(g.coordinate(0, 0) == 0.0);
    CHECK(g.coordinate(0, 4) == doctest::Approx(std::numbers::pi / 2));
    CHECK(g.step(0) == doctest::Approx(2 * std::numbers::pi / 16));
    CHECK(g.is_closed());
  }

  TEST_CASE("suspension of a circle is a 17 x 16 sphere with poles") {
    const auto s = ParameterGrid::suspension(ParameterGrid::circle(16), 17);
    CHECK(s.kind() == ParameterGrid::Kind::suspension);
    CHECK(s.size() == 17 * 16);
    CHECK(s.axis(0).kind == AxisKind::suspension);
    CHECK(s.axis(0).collapsed == 1);
    CHECK(s.coordinate(0, 0) == 0.0);
    CHECK(s.coordinate(0, 16) == 1.0);
    CHECK(s.coordinate(0, 8) == 0.5);
    CHECK(s.is_closed());
    CHECK(s.orientation_sign() == -1);
  }

  TEST_CASE("product point count and orientation") {
    const auto s = ParameterGrid::suspension(ParameterGrid::circle(16), 17);
    const auto p = ParameterGrid::product(s, s);
    CHECK(p.size() == 73984);
    CHECK(p.rank() == 4);
    CHECK(p.orientation_sign() == 1);
    CHECK(p.first() == s);
    CHECK(p.second() == s);
    CHECK(ParameterGrid::product(s, ParameterGrid::point()) == s);
    CHECK(ParameterGrid::product(ParameterGrid::point(), s) == s);
  }

  TEST_CASE("torus with one size is a circle") {
    CHECK(ParameterGrid::torus({8}) == ParameterGrid::circle(8));
    const auto t = ParameterGrid::torus({4, 5, 6});
    CHECK(t.size() == 120);
    CHECK(t.stride(0) == 30);
    CHECK(t.stride(2) == 1);
  }

  TEST_CASE("minimum axis sizes") {
    CHECK_THROWS_AS(ParameterGrid::circle(2), bott::Error);
    CHECK_THROWS_AS(ParameterGrid::suspension(ParameterGrid::circle(8), 2), bott::Error);
    CHECK_THROWS_AS(ParameterGrid::torus({}), bott::Error);
    CHECK_NOTHROW(ParameterGrid::circle(3));
    try {
      ParameterGrid::circle(1);
    } catch (const bott::Error& e) {
      CHECK(e.code() == "invalid-grid");
    }
  }

  TEST_CASE("ravel and unravel are inverse") {
    const auto g = ParameterGrid::product(ParameterGrid::suspension(ParameterGrid::circle(5), 4), ParameterGrid::circle(3));
    for (std::size_t p = 0; p < g.size(); ++p) {
      const auto idx = g.unravel(p);
      CHECK(g.ravel(idx) == p);
      for (int a = 0; a < g.rank(); ++a) CHECK(g.index_along(p, a) == idx[static_cast<std::size_t>(a)]);
    }
  }

  TEST_CASE("shifted wraps periodic axes and stops at suspension ends") {
    const auto s = ParameterGrid::suspension(ParameterGrid::circle(6), 5);
    const std::vector<int> corner{0, 5};
    const auto p = s.ravel(corner);
    CHECK(*s.shifted(p, 1, 1) == s.ravel(std::vector<int>{0, 0}));
    CHECK(*s.shifted(p, 1, -6) == p);
    CHECK_FALSE(s.shifted(p, 0, -1).has_value());
    CHECK(s.shifted(p, 0, 4).has_value());
    CHECK_FALSE(s.shifted(p, 0, 5).has_value());
  }

  TEST_CASE("open suspension of a point is not closed") {
    const auto seg = ParameterGrid::suspension(ParameterGrid::point(), 5);
    CHECK(seg.rank() == 1);
    CHECK_FALSE(seg.is_closed());
  }

  TEST_CASE("cos_sin_pi is exact at quarter turns") {
    CHECK(bott::cos_sin_pi(0.5).first == 0.0);
    CHECK(bott::cos_sin_pi(0.5).second == 1.0);
    CHECK(bott::cos_sin_pi(1.0).first == -1.0);
    CHECK(bott::cos_sin_pi(1.0).second == 0.0);
    CHECK(bott::cos_sin_pi(1.5).second == -1.0);
    CHECK(bott::cos_sin_pi(0.25).first == doctest::Approx(std::sqrt(0.5)));
  }

  TEST_CASE("describe is stable") {
    const auto s = ParameterGrid::suspension(ParameterGrid::circle(16), 17);
    CHECK(s.describe() == ParameterGrid::suspension(ParameterGrid::circle(16), 17).describe());
    CHECK_FALSE(s.describe().empty());
  }
}
