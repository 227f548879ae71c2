#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "aeq/point_set.hpp"

namespace aeq {

enum class ConstructionKind { simplex, two_simplices, rosenfeld };

ConstructionKind parse_construction_kind(const std::string& name);
std::string to_string(ConstructionKind kind);

// k unit-edge simplex vertices in R^d, centred at the origin, each at norm
// sqrt((k-1)/(2k)). Requires 1 <= k <= d + 1.
PointSet construct_simplex(std::size_t k, std::size_t d);

// Centred unit d-simplex plus its antipodal image: 2d + 2 points on the
// sphere of radius sqrt(d/(2(d+1))). For d = 1 the antipodal image
// coincides with the segment itself, so only its 2 points are returned;
// two_simplices_degenerate() reports that case.
PointSet construct_two_simplices(std::size_t d);
bool two_simplices_degenerate(std::size_t d);

// Two aligned unit (d-1)-simplices at heights +-sqrt(1/(2d)) along the last
// axis: 2d points on the sphere of radius 1/sqrt(2). Requires d >= 2.
PointSet construct_rosenfeld(std::size_t d);

// Appends the coordinate sqrt(1/2 - r^2) to every point of a set lying on the
// origin-centred sphere of radius r <= 1/sqrt(2), landing on the radius
// 1/sqrt(2) sphere in R^{d+1} with all distances preserved.
PointSet lift_to_halfsphere(const PointSet& s, double r, double dist_tol = 1e-9);

struct Construction {
  PointSet points;
  std::vector<std::string> warnings;
};

// Dispatch used by the CLI. `k` is only read for the simplex kind (0 = d + 1).
Construction construct(ConstructionKind kind, std::size_t dim, std::size_t k = 0, bool lift = false);

}  // namespace aeq
