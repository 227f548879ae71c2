#include <doctest.h>

#include <random>

#include "aeq/bounds.hpp"
#include "aeq/constructions.hpp"
#include "aeq/geometry.hpp"
#include "aeq/spectral.hpp"
#include "fixtures.hpp"

using namespace aeq;

namespace {

// Independent check of the cubic gap: (2nr + 1)^3 > (n-d-1)^3/(d+1)^2 - (n-d-2).
bool gap_open(long n, long d, double c0) {
  const double r = c0 / std::cbrt(double(d + 1) * double(d + 1));
  const double l = 2.0 * n * r + 1.0;
  const double a = double(n - d - 1);
  return l * l * l > a * a * a / double((d + 1) * (d + 1)) - double(n - d - 2);
}

}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("sphere bound") {
    CHECK(sphere_bound(3, 0.5).bound == 8u);
    CHECK(sphere_bound(3, std::sqrt(0.5)).bound == 6u);
    CHECK_THROWS_AS(sphere_bound(3, 0.8), InputError);
    CHECK_THROWS_AS(sphere_bound(0, 0.5), InputError);
  }

  TEST_CASE("diameter bound is 2d + 4") {
    for (std::size_t d = 1; d <= 50; ++d) {
      const auto b = diameter_bound(d);
      CHECK(b.bound == 2 * d + 4);
      CHECK(b.detail.at("conjectured_bound") == double(3 * (d + 1) / 2));
    }
  }

  TEST_CASE("ball threshold matches an independent scan") {
    for (long d : {1L, 2L, 5L, 10L, 40L})
      for (double c0 : {0.0, 0.1, 0.25, 0.4}) {
        const auto t = ball_bound_threshold(std::size_t(d), c0);
        REQUIRE(t);
        const long th = long(*t);
        CHECK_FALSE(gap_open(th, d, c0));
        // Every n from the threshold up to a generous horizon stays closed.
        for (long n = th; n < th + 50 * (d + 1); ++n) CHECK_FALSE(gap_open(n, d, c0));
        if (th > 2 * d + 2) CHECK(gap_open(th - 1, d, c0));
      }
  }

  TEST_CASE("ball threshold regression") {
    // Frozen from the first run after the independent scan above agreed.
    struct Row {
      std::size_t d;
      double c0;
      std::size_t threshold;
      std::size_t bound;
    };
    const Row rows[] = {{1, 0.0, 4, 6},      {2, 0.0, 6, 8},      {10, 0.0, 22, 24},   {100, 0.0, 202, 204},
                        {1, 0.1, 5, 6},      {2, 0.1, 8, 8},      {10, 0.1, 25, 24},   {100, 0.1, 213, 212},
                        {1, 0.25, 8, 7},     {2, 0.25, 11, 10},   {10, 0.25, 36, 35},  {100, 0.25, 287, 286},
                        {1, 0.4, 19, 18},    {2, 0.4, 27, 26},    {10, 0.4, 83, 82},   {100, 0.4, 645, 644}};
    for (const auto& r : rows) {
      CAPTURE(r.d);
      CAPTURE(r.c0);
      CHECK(ball_bound_threshold(r.d, r.c0) == r.threshold);
      CHECK(ball_bound(r.d, r.c0).bound == r.bound);
    }
    CHECK(ball_bound_threshold(100, 0.49) == 6163u);
  }

  TEST_CASE("c0 = 0 reproduces 2d + 4 and thresholds grow with c0") {
    for (std::size_t d = 1; d <= 50; ++d) {
      CHECK(ball_bound(d, 0.0).bound == 2 * d + 4);
      const auto a = ball_bound_threshold(d, 0.1), b = ball_bound_threshold(d, 0.25), c = ball_bound_threshold(d, 0.4);
      REQUIRE((a && b && c));
      CHECK(*a <= *b);
      CHECK(*b <= *c);
    }
    CHECK_THROWS_AS(ball_bound_threshold(3, 0.5), InputError);
  }

  TEST_CASE("f statistic row sums equal the row sums of U") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0, 0.6);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::vector<double>> pts(3 + trial % 7, std::vector<double>(3));
      for (auto& p : pts)
        for (auto& x : p) x = g(rng);
      const PointSet s(3, pts);
      const auto f = f_statistic(s);
      const auto u = build_u(s);
      for (std::size_t i = 0; i < s.size(); ++i) {
        double row = 0;
        for (std::size_t j = 0; j < s.size(); ++j) row += u(i, j);
        CHECK(std::abs(row - f.per_point_sums[i]) <= 1e-12);
      }
    }
    const auto e = fixture::square_with_poles();
    const auto fe = f_statistic(e);
    const auto ue = build_u(e);
    for (std::size_t i = 0; i < e.size(); ++i) {
      Rational row = 0;
      for (std::size_t j = 0; j < e.size(); ++j) row += ue(i, j);
      CHECK(row == fe.per_point_sums[i]);
    }
  }

  TEST_CASE("recentred norms stay inside the 3f/(2n) band") {
    std::vector<PointSet> corpus{fixture::unit_diagonal_pentagon()};
    for (std::size_t d = 2; d <= 8; ++d) {
      corpus.push_back(construct_two_simplices(d));
      corpus.push_back(construct_rosenfeld(d));
      corpus.push_back(construct_simplex(d + 1, d));
    }
    for (const auto& s : corpus) CHECK(recentred_norm_bounds(recenter_to_barycenter(s)).holds);
    CHECK(recentred_norm_bounds(recenter_to_barycenter(fixture::square_with_poles()), Tolerance::exact()).holds);
    CHECK_THROWS_AS(recentred_norm_bounds(PointSet(1, {{1.0}, {2.0}})), PreconditionError);
  }

  TEST_CASE("pipeline on constructions") {
    for (std::size_t d = 2; d <= 6; ++d) {
      const auto p = general_bound_pipeline(construct_rosenfeld(d));
      CHECK(p.completed);
      CHECK(p.report.satisfied);
      REQUIRE(p.report.bound);
      CHECK(*p.report.bound >= 2 * d);
    }
    const auto pent = general_bound_pipeline(fixture::unit_diagonal_pentagon(), {}, true);
    CHECK(pent.completed);
    CHECK(pent.report.satisfied);
    const auto exact = general_bound_pipeline(fixture::square_with_poles(), Tolerance::exact());
    CHECK(exact.completed);
    // On the critical sphere, so the 2d branch wins over 2d + 4.
    CHECK(exact.report.bound == 8u);
  }

  TEST_CASE("pipeline halts on a non-almost-equidistant set") {
    const auto p = general_bound_pipeline(fixture::unit_triangle_free_mix(), Tolerance::exact());
    CHECK_FALSE(p.completed);
    CHECK(p.stages.back().name == "verify");
    CHECK_FALSE(p.stages.back().passed);
    const auto wide = general_bound_pipeline(fixture::square_with_poles(), Tolerance::exact(), true);
    CHECK_FALSE(wide.completed);
    CHECK(wide.stages.back().name == "diameter_bound");
  }

  TEST_CASE("configuration checkers") {
    CHECK(check_sphere(construct_two_simplices(4), std::nullopt).satisfied);
    CHECK(check_diameter(fixture::unit_diagonal_pentagon()).satisfied);
    CHECK_THROWS_AS(check_diameter(construct_rosenfeld(3)), PreconditionError);
  }

  TEST_CASE("lemma end check") {
    const auto s = recenter_to_barycenter(construct_two_simplices(3));
    // Norms are 3/8, so x must cover the 1/8 deviation from 1/2.
    const auto r = lemma_end_check(s, 0, 0.2);
    CHECK(r.reduced_size == 4);
    CHECK(r.rhs_without_constant > 0);
    CHECK_THROWS_AS(lemma_end_check(s, 0, 0.1), PreconditionError);
    CHECK_THROWS_AS(lemma_end_check(s, 99, 0.2), InputError);
  }
}
