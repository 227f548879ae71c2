#pragma once

// Data-parallel inner loops. Every kernel has a serial reference in
// aeq::kernels::serial and an OpenMP version in aeq::kernels::parallel with
// the same signature; tests assert they agree and bench/ compares them.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace aeq::kernels {

// Symmetric n x n boolean matrix, one bitset row per vertex.
class BitMatrix {
 public:
  explicit BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  std::size_t size() const { return n_; }
  std::size_t words() const { return words_; }

  void set(std::size_t i, std::size_t j) {
    bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
    bits_[j * words_ + i / 64] |= std::uint64_t{1} << (i % 64);
  }
  bool test(std::size_t i, std::size_t j) const { return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u; }
  std::span<const std::uint64_t> row(std::size_t i) const { return {bits_.data() + i * words_, words_}; }

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

using Triangle = std::array<std::size_t, 3>;

// Penalty plus gradient of sum over triples of min over the triple's pairs of
// (|p-q|^2 - 1)^2. The gradient flows only through the active (minimising)
// pair of each triple, ties broken by the first pair in (ij, ik, jk) order.
struct PenaltyEval {
  double value = 0;
  std::vector<double> gradient;  // row-major, same shape as the coordinates
};

namespace serial {

// Lexicographically smallest triangle (i < j < k) of g, if any.
std::optional<Triangle> find_triangle(const BitMatrix& g);

// sum_{i,j,k} m_ij m_jk m_ki for a dense row-major n x n matrix.
double trace_cube(std::span<const double> m, std::size_t n);

// Row-major matrix of squared distances.
std::vector<double> squared_distances(std::span<const double> coords, std::size_t n, std::size_t dim);

PenaltyEval triple_penalty(std::span<const double> coords, std::size_t n, std::size_t dim, bool with_gradient);

}  // namespace serial

namespace parallel {

std::optional<Triangle> find_triangle(const BitMatrix& g);
double trace_cube(std::span<const double> m, std::size_t n);
std::vector<double> squared_distances(std::span<const double> coords, std::size_t n, std::size_t dim);
PenaltyEval triple_penalty(std::span<const double> coords, std::size_t n, std::size_t dim, bool with_gradient);

}  // namespace parallel

// Sets the OpenMP thread count used by the parallel kernels (0 = runtime default).
void set_thread_count(int threads);
int thread_count();

}  // namespace aeq::kernels
