#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "aeq/error.hpp"
#include "aeq/scalar.hpp"

namespace aeq {

// An ordered list of n >= 1 points in R^dim, stored row-major. The scalar type
// fixes the arithmetic mode: double for floating, Rational for exact.
template <class T>
class BasicPointSet {
 public:
  using Scalar = T;

  BasicPointSet(std::size_t dim, std::vector<std::vector<T>> points) : dim_(dim) {
    if (dim == 0) throw InputError("point set dimension must be positive");
    if (points.empty()) throw InputError("point set must contain at least one point");
    coords_.reserve(points.size() * dim);
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i].size() != dim) {
        throw InputError("point " + std::to_string(i) + " has " + std::to_string(points[i].size()) +
                         " coordinates, expected " + std::to_string(dim));
      }
      for (auto& x : points[i]) coords_.push_back(std::move(x));
    }
  }

  BasicPointSet(std::size_t dim, std::size_t n, std::vector<T> row_major) : dim_(dim), coords_(std::move(row_major)) {
    if (dim == 0) throw InputError("point set dimension must be positive");
    if (n == 0) throw InputError("point set must contain at least one point");
    if (coords_.size() != n * dim) throw InputError("coordinate buffer does not match n*dim");
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return coords_.size() / dim_; }

  std::span<const T> operator[](std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  std::span<const T> coords() const { return coords_; }

  static constexpr bool exact = is_exact_v<T>;

 private:
  std::size_t dim_;
  std::vector<T> coords_;
};

using PointSet = BasicPointSet<double>;
using ExactPointSet = BasicPointSet<Rational>;
using AnyPointSet = std::variant<PointSet, ExactPointSet>;

PointSet to_floating(const ExactPointSet& s);
inline PointSet to_floating(const PointSet& s) { return s; }
// Exact conversion of every double coordinate.
ExactPointSet to_exact(const PointSet& s);

struct Tolerance {
  double dist_tol = 1e-9;  // on squared distances
  double eig_tol = 1e-8;

  static Tolerance floating() { return {}; }
  static Tolerance exact() { return {0.0, 0.0}; }

  // Floating mode needs both strictly positive; exact mode needs both zero.
  void validate(bool exact_mode) const;
};

}  // namespace aeq
