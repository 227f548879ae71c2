#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "aeq/point_set.hpp"

namespace fixture {

using aeq::ExactPointSet;
using aeq::PointSet;
using aeq::Rational;

// {0, e1, e2, e1 + e2}: sides 1, diagonals sqrt(2).
inline ExactPointSet unit_square() {
  return ExactPointSet(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
}

// The unit square in R^4 plus two points at unit distance from all four
// corners and at distance sqrt(2) from each other.
inline ExactPointSet square_with_poles() {
  const Rational h(1, 2);
  return ExactPointSet(4, {{0, 0, 0, 0},
                           {1, 0, 0, 0},
                           {0, 1, 0, 0},
                           {1, 1, 0, 0},
                           {h, h, h, h},
                           {h, h, -h, -h}});
}

// Regular pentagon whose diagonals have length 1: diameter 1, and every
// triple contains a diagonal.
inline PointSet unit_diagonal_pentagon() {
  const double r = 1.0 / (2.0 * std::sin(2.0 * std::numbers::pi / 5.0));
  std::vector<std::vector<double>> pts;
  for (int k = 0; k < 5; ++k) {
    const double t = 2.0 * std::numbers::pi * k / 5.0;
    pts.push_back({r * std::cos(t), r * std::sin(t)});
  }
  return PointSet(2, pts);
}

inline ExactPointSet unit_triangle_free_mix() {
  // Three points with squared distances 2, 2, 2 (no unit pair).
  return ExactPointSet(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

}  // namespace fixture
