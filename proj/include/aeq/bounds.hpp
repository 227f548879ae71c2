#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aeq/point_set.hpp"

namespace aeq {

// A cardinality bound from one theorem, optionally evaluated on a concrete
// configuration. bound == nullopt means the theorem only gives an
// asymptotic statement for these parameters.
struct BoundReport {
  std::string theorem;
  std::size_t dim = 0;
  std::map<std::string, double> params;
  std::optional<std::size_t> bound;
  std::optional<std::size_t> n_observed;
  bool satisfied = true;
  std::map<std::string, double> detail;
  std::vector<std::string> notes;

  // satisfied = n_observed <= bound whenever both are known.
  void observe(std::size_t n);
};

// 2d + 2 for r < 1/sqrt(2), 2d on the critical sphere |r - 1/sqrt(2)| <= dist_tol.
BoundReport sphere_bound(std::size_t d, double r, double dist_tol = 1e-9);

// 2d + 4 for sets of diameter 1; the conjectured floor(3(d+1)/2) is carried in detail.
BoundReport diameter_bound(std::size_t d);

std::size_t conjectured_diameter_bound(std::size_t d);

// Smallest n >= 2d + 2 from which (2nr + 1)^3 <= (n-d-1)^3/(d+1)^2 - (n-d-2)
// holds for every larger n, with r = c0/(d+1)^(2/3). A set in the ball of
// radius sqrt(1/2 + r) whose U-matrix has an eigenvalue above 1 has fewer
// points than this. nullopt if the scan cap is reached first.
std::optional<std::size_t> ball_bound_threshold(std::size_t d, double c0);

// Combines the threshold with the no-eigenvalue-above-1 branch (2d + 4).
BoundReport ball_bound(std::size_t d, double c0);

template <class T>
struct FStatistic {
  // Off-diagonal sums sum_{j != i}(|v_i - v_j|^2 - 1): the row sums of U.
  std::vector<T> per_point_sums;
  T value;
  std::size_t argmax_index = 0;
  // Sums over all j including j = i (which contributes -1); this is the
  // quantity whose maximum controls the recentred norms.
  T full_value;
  std::size_t full_argmax_index = 0;
};

template <class T>
FStatistic<T> f_statistic(const BasicPointSet<T>& s);

struct NormBounds {
  double max_deviation = 0;   // max_i | |v_i|^2 - 1/2 |
  double f_over_n_bound = 0;  // 3 f / (2n), f over all j including j = i
  bool holds = false;
};

// s must already be recentred to its barycenter.
template <class T>
NormBounds recentred_norm_bounds(const BasicPointSet<T>& s, const Tolerance& tol = {});

struct LemmaEnd {
  double lhs = 0;                   // |sum over the reduced set of (|w_0 - w_i|^2 - 1)|
  double rhs_without_constant = 0;  // d^(1/2) + d x^(1/2) + d x
  double ratio = 0;
  std::size_t reduced_size = 0;     // points not at unit distance from w_0
};

LemmaEnd lemma_end_check(const PointSet& s, std::size_t w0_index, double x, const Tolerance& tol = {});

struct PipelineStage {
  std::string name;
  bool passed = true;
  std::map<std::string, double> values;
  std::optional<std::size_t> bound;
  std::string message;
};

struct PipelineReport {
  std::vector<PipelineStage> stages;
  BoundReport report;
  bool completed = false;  // false when a stage halted the chain
};

// Almost-equidistance -> recentring -> f statistic -> norm band -> spectral
// certificate -> ball / sphere / diameter branches. The final bound is the
// smallest finite bound among the applicable branches. With
// require_diameter the chain halts at the diameter stage when the diameter
// exceeds 1.
template <class T>
PipelineReport general_bound_pipeline(const BasicPointSet<T>& s, const Tolerance& tol = {},
                                      bool require_diameter = false);

// Configuration checkers used by the bounds CLI.
BoundReport check_sphere(const PointSet& s, std::optional<double> radius, const Tolerance& tol = {});
BoundReport check_diameter(const PointSet& s, const Tolerance& tol = {});
BoundReport check_ball(const PointSet& s, std::optional<double> c0, const Tolerance& tol = {});

}  // namespace aeq
