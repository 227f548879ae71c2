#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "aeq/point_set.hpp"

namespace aeq {

template <class T>
T squared_distance(std::span<const T> p, std::span<const T> q);

template <class T>
bool is_unit(const T& squared, const Tolerance& tol) {
  if constexpr (is_exact_v<T>) {
    return squared == 1;
  } else {
    return (squared - 1.0 < 0 ? 1.0 - squared : squared - 1.0) <= tol.dist_tol;
  }
}

using Triple = std::array<std::size_t, 3>;

struct EquidistanceCheck {
  bool holds = true;
  std::optional<Triple> witness;  // lexicographically smallest triple with no unit pair

  explicit operator bool() const { return holds; }
};

// Every triple of distinct indices contains a pair whose squared distance is
// within tol.dist_tol of 1 (exactly 1 in exact mode). Implemented as
// triangle detection in the complement of the unit-distance graph.
template <class T>
EquidistanceCheck is_almost_equidistant(const BasicPointSet<T>& s, const Tolerance& tol = {});

// Serial reference path, kept for cross-checking the parallel kernel.
template <class T>
EquidistanceCheck is_almost_equidistant_serial(const BasicPointSet<T>& s, const Tolerance& tol = {});

template <class T>
std::vector<T> barycenter(const BasicPointSet<T>& s);

template <class T>
BasicPointSet<T> recenter_to_barycenter(const BasicPointSet<T>& s);

template <class T>
BasicPointSet<T> translate(const BasicPointSet<T>& s, std::span<const T> offset);

template <class T>
struct Ball {
  std::vector<T> center;
  T squared_radius;
  std::vector<std::size_t> support;  // indices on the boundary that pin the ball
};

// Smallest enclosing ball. Exact in rational mode; in floating mode the
// returned radius is max_i |p_i - center|, so containment holds by construction.
template <class T>
Ball<T> min_enclosing_ball(const BasicPointSet<T>& s);

template <class T>
T squared_diameter(const BasicPointSet<T>& s);

struct GeometrySummary {
  double diameter = 0;
  std::vector<double> mer_center;
  double mer_radius = 0;
  std::vector<double> barycenter;
};

template <class T>
GeometrySummary summarize(const BasicPointSet<T>& s);

// |sum_{i,j}|x_i-y_j|^2 - sum_{i<j}|x_i-x_j|^2 - sum_{i<j}|y_i-y_j|^2 - n^2|xbar-ybar|^2|.
template <class T>
T barycenter_identity_residual(const BasicPointSet<T>& x, const BasicPointSet<T>& y);

// Same residual divided by max(1, sum_{i,j}|x_i-y_j|^2), floating only.
double barycenter_identity_relative(const PointSet& x, const PointSet& y);

// Largest |(|p - c|^2 - r^2)| over points, used to test co-sphericity.
template <class T>
T max_sphere_defect(const BasicPointSet<T>& s, std::span<const T> center, const T& squared_radius);

}  // namespace aeq
