#include <doctest.h>

#include <algorithm>

#include "aeq/constructions.hpp"
#include "aeq/geometry.hpp"
#include "aeq/kernels.hpp"
#include "aeq/search.hpp"
#include "aeq/spectral.hpp"
#include "fixtures.hpp"

using namespace aeq;

namespace {

SearchConfig planar(std::size_t n) {
  SearchConfig cfg;
  cfg.dim = 2;
  cfg.target_n = n;
  cfg.seed = 1;
  cfg.restarts = 16;
  return cfg;
}

void check_feasible(const SearchResult& r, const SearchConfig& cfg) {
  REQUIRE(r.feasible);
  CHECK(r.best_points.size() == cfg.target_n);
  CHECK(r.best_points.dim() == cfg.dim);
  CHECK(r.best_penalty <= cfg.penalty_tol);
  CHECK(is_almost_equidistant(r.best_points));
  REQUIRE(r.certificate);
  CHECK(r.certificate->lemma1_holds);
  CHECK(r.certificate->count_gt_one <= 1);
}

}  // namespace

TEST_SUITE("search") {
  TEST_CASE("config validation") {
    SearchConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.restarts = 0;
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = {};
    cfg.penalty_tol = 0;
    CHECK_THROWS_AS(optimize(cfg), InputError);
  }

  TEST_CASE("triple penalty vanishes exactly on almost-equidistant sets") {
    CHECK(triple_penalty(construct_two_simplices(4)) < 1e-28);
    CHECK(triple_penalty(fixture::square_with_poles()) == 0);
    // (2, 2, 2): each pair contributes (2 - 1)^2.
    CHECK(triple_penalty(fixture::unit_triangle_free_mix()) == 1);
    CHECK(triple_penalty(PointSet(2, {{0.0, 0.0}, {3.0, 0.0}})) == 0.0);
  }

  TEST_CASE("objective adds constraint terms") {
    auto cfg = planar(3);
    const PointSet wide(2, {{0.0, 0.0}, {1.0, 0.0}, {3.0, 0.0}});
    const double free = search_objective(wide, cfg);
    cfg.diameter_le_1 = true;
    CHECK(search_objective(wide, cfg) > free);
    cfg.diameter_le_1 = false;
    cfg.sphere_radius = 0.1;
    CHECK(search_objective(wide, cfg) > free);
    CHECK_THROWS_AS(search_objective(construct_simplex(3, 3), cfg), InputError);
  }

  TEST_CASE("seven points in the plane (frozen seed and budget)") {
    const auto cfg = planar(7);
    const auto r = optimize(cfg);
    check_feasible(r, cfg);
    CHECK(r.best_restart == 3);
    CHECK(r.certificate->count_gt_one == 1);
  }

  TEST_CASE("result does not depend on the thread count") {
    const auto cfg = planar(6);
    kernels::set_thread_count(1);
    const auto a = optimize(cfg);
    kernels::set_thread_count(3);
    const auto b = optimize(cfg);
    kernels::set_thread_count(0);
    check_feasible(a, cfg);
    CHECK(a.best_restart == b.best_restart);
    const auto ca = a.best_points.coords(), cb = b.best_points.coords();
    CHECK(std::equal(ca.begin(), ca.end(), cb.begin(), cb.end()));
  }

  TEST_CASE("eight points in the plane stay infeasible") {
    auto cfg = planar(8);
    cfg.restarts = 8;
    const auto r = optimize(cfg);
    CHECK_FALSE(r.feasible);
    CHECK(r.best_penalty > cfg.penalty_tol);
    CHECK_FALSE(r.certificate);
  }

  TEST_CASE("diameter and sphere constrained searches") {
    auto cfg = planar(5);
    cfg.diameter_le_1 = true;
    const auto r = optimize(cfg);
    check_feasible(r, cfg);
    CHECK(squared_diameter(r.best_points) <= 1.0 + 1e-9);

    SearchConfig sph;
    sph.dim = 3;
    sph.target_n = 6;
    sph.sphere_radius = std::sqrt(0.5);
    const auto s = optimize(sph);
    check_feasible(s, sph);
    const std::vector<double> origin(3, 0.0);
    CHECK(max_sphere_defect<double>(s.best_points, origin, 0.5) < 1e-6);
  }

  TEST_CASE("diameter-1 probe") {
    SearchConfig budget;
    budget.restarts = 16;
    const auto p1 = conjecture1_probe(1, budget);
    CHECK(p1.largest_feasible == 3);
    CHECK(p1.conjectured_bound == 3);
    CHECK(p1.rows.front().n == 2);
    CHECK(p1.rows.back().n == 5);
    // In the plane the unit-diagonal pentagon beats the conjectured 4.
    const auto p2 = conjecture1_probe(2, budget);
    CHECK(p2.largest_feasible == 5);
    CHECK(p2.conjectured_bound == 4);
    for (const auto& r : p2.feasible_results) {
      CHECK(is_almost_equidistant(r.best_points));
      CHECK(squared_diameter(r.best_points) <= 1.0 + 1e-9);
    }
  }
}
