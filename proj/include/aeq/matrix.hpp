#pragma once

#include <cstddef>
#include <vector>

#include "aeq/error.hpp"

namespace aeq {

// Dense row-major square matrix over an arbitrary field.
template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, const T& fill = T(0)) : n_(n), a_(n * n, fill) {}
  SquareMatrix(std::size_t n, std::vector<T> row_major) : n_(n), a_(std::move(row_major)) {
    if (a_.size() != n * n) throw InputError("matrix buffer is not n*n");
  }

  std::size_t size() const { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  const std::vector<T>& data() const { return a_; }

 private:
  std::size_t n_ = 0;
  std::vector<T> a_;
};

}  // namespace aeq
