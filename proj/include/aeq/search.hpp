#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "aeq/point_set.hpp"
#include "aeq/spectral.hpp"

namespace aeq {

struct StepSchedule {
  double start = 0.1;  // geometric decay from start to end over max_iters
  double end = 1e-6;
};

struct SearchConfig {
  std::size_t dim = 2;
  std::size_t target_n = 3;
  std::size_t restarts = 16;
  std::size_t max_iters = 3000;
  StepSchedule step_schedule;
  double penalty_tol = 1e-18;
  std::uint64_t seed = 1;
  bool diameter_le_1 = false;
  std::optional<double> sphere_radius;  // origin-centred sphere constraint
  double min_separation = 1e-2;         // distinct points stay at least this far apart
  double softmin_temperature = 0.0;     // 0 selects the exact per-triple minimum
  bool polish = true;                   // Levenberg-Marquardt on the active unit pairs

  void validate() const;
};

struct SearchResult {
  PointSet best_points{1, {{0.0}}};
  double best_penalty = 0;
  bool feasible = false;
  std::size_t iterations_used = 0;  // summed over the restarts that ran
  std::size_t best_restart = 0;
  std::size_t restarts_run = 0;
  std::optional<SpectralCertificate> certificate;
};

// Sum over unordered triples of min over the triple's three pairs of
// (|p - q|^2 - 1)^2. Zero iff the set is almost-equidistant; 0 when n < 3.
double triple_penalty(const PointSet& s);
Rational triple_penalty(const ExactPointSet& s);

// The full objective minimised by optimize(): triple penalty plus the
// diameter, sphere and separation terms enabled by cfg.
double search_objective(const PointSet& s, const SearchConfig& cfg);

// Multistart local descent. Restarts run in parallel in fixed-size batches;
// the result depends only on cfg (including seed), not on the thread count.
SearchResult optimize(const SearchConfig& cfg);

struct ProbeRow {
  std::size_t n = 0;
  bool feasible = false;
  double best_penalty = 0;
};

struct ProbeTable {
  std::size_t dim = 0;
  std::vector<ProbeRow> rows;
  std::size_t largest_feasible = 0;  // 0 if nothing was feasible
  std::size_t conjectured_bound = 0;
  std::vector<SearchResult> feasible_results;
};

// For n = d+1 .. floor(3(d+1)/2) + 2, searches diameter-1 configurations.
ProbeTable conjecture1_probe(std::size_t d, const SearchConfig& budget);

}  // namespace aeq
