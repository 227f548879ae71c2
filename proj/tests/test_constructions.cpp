#include <doctest.h>

#include <cmath>

#include "aeq/constructions.hpp"
#include "aeq/geometry.hpp"
#include "aeq/spectral.hpp"

using namespace aeq;

namespace {

double max_norm_defect(const PointSet& s, double r2) {
  double worst = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    double acc = 0;
    for (double x : s[i]) acc += x * x;
    worst = std::max(worst, std::abs(acc - r2));
  }
  return worst;
}

}  // namespace

TEST_SUITE("constructions") {
  TEST_CASE("kind names round-trip") {
    for (auto k : {ConstructionKind::simplex, ConstructionKind::two_simplices, ConstructionKind::rosenfeld})
      CHECK(parse_construction_kind(to_string(k)) == k);
    CHECK_THROWS_AS(parse_construction_kind("cube"), InputError);
  }

  TEST_CASE("simplex: unit edges, centred") {
    for (std::size_t d = 1; d <= 12; ++d)
      for (std::size_t k = 1; k <= d + 1; ++k) {
        const auto s = construct_simplex(k, d);
        REQUIRE(s.size() == k);
        CHECK(s.dim() == d);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = i + 1; j < k; ++j)
            CHECK(squared_distance<double>(s[i], s[j]) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(max_norm_defect(s, (k - 1.0) / (2.0 * k)) < 1e-12);
        for (double c : barycenter(s)) CHECK(std::abs(c) < 1e-12);
      }
    CHECK_THROWS_AS(construct_simplex(5, 3), InputError);
    CHECK_THROWS_AS(construct_simplex(0, 3), InputError);
  }

  TEST_CASE("two simplices: 2d + 2 points on the small sphere") {
    for (std::size_t d = 2; d <= 20; ++d) {
      const auto s = construct_two_simplices(d);
      CHECK(s.size() == 2 * d + 2);
      CHECK(is_almost_equidistant(s));
      CHECK(max_norm_defect(s, d / (2.0 * (d + 1))) < 1e-12);
      CHECK_FALSE(two_simplices_degenerate(d));
    }
    CHECK(two_simplices_degenerate(1));
    CHECK(construct_two_simplices(1).size() == 2);
  }

  TEST_CASE("rosenfeld: 2d points on the critical sphere") {
    for (std::size_t d = 2; d <= 20; ++d) {
      const auto s = construct_rosenfeld(d);
      CHECK(s.size() == 2 * d);
      CHECK(is_almost_equidistant(s));
      CHECK(max_norm_defect(s, 0.5) < 1e-12);
    }
    CHECK_THROWS_AS(construct_rosenfeld(1), InputError);
  }

  TEST_CASE("lifting preserves distances and lands on the critical sphere") {
    for (std::size_t d = 2; d <= 12; ++d) {
      const auto s = construct_two_simplices(d);
      const double r = std::sqrt(d / (2.0 * (d + 1)));
      const auto up = lift_to_halfsphere(s, r);
      REQUIRE(up.dim() == d + 1);
      REQUIRE(up.size() == s.size());
      CHECK(max_norm_defect(up, 0.5) < 1e-12);
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
          CHECK(std::abs(squared_distance<double>(up[i], up[j]) - squared_distance<double>(s[i], s[j])) < 1e-12);
      const auto c = certify(up);
      CHECK(c.lemma1_holds);
      CHECK(up.size() <= 2 * (d + 1));
    }
  }

  TEST_CASE("lifting rejects points off the sphere or outside the critical radius") {
    const auto s = construct_simplex(3, 2);
    CHECK_THROWS_AS(lift_to_halfsphere(s, 0.2), PreconditionError);
    CHECK_THROWS_AS(lift_to_halfsphere(s, 0.8), InputError);
  }

  TEST_CASE("construct dispatch") {
    const auto c = construct(ConstructionKind::simplex, 4);
    CHECK(c.points.size() == 5);
    const auto lifted = construct(ConstructionKind::two_simplices, 3, 0, true);
    CHECK(lifted.points.dim() == 4);
    CHECK(lifted.points.size() == 8);
    const auto degen = construct(ConstructionKind::two_simplices, 1);
    CHECK_FALSE(degen.warnings.empty());
    CHECK(degen.points.size() == 2);
  }
}
