#include <bit>

#include "aeq/kernels.hpp"

namespace aeq::kernels::serial {

std::optional<Triangle> find_triangle(const BitMatrix& g) {
  const std::size_t n = g.size();
  const std::size_t words = g.words();
  for (std::size_t i = 0; i < n; ++i) {
    auto ri = g.row(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!g.test(i, j)) continue;
      auto rj = g.row(j);
      // first common neighbour k > j
      for (std::size_t w = (j + 1) / 64; w < words; ++w) {
        std::uint64_t common = ri[w] & rj[w];
        if (w == (j + 1) / 64) common &= ~std::uint64_t{0} << ((j + 1) % 64);
        if (common != 0) return Triangle{i, j, w * 64 + static_cast<std::size_t>(std::countr_zero(common))};
      }
    }
  }
  return std::nullopt;
}

double trace_cube(std::span<const double> m, std::size_t n) {
  std::vector<double> partial(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double mij = m[i * n + j];
      if (mij == 0.0) continue;
      double inner = 0.0;
      for (std::size_t k = 0; k < n; ++k) inner += m[j * n + k] * m[k * n + i];
      acc += mij * inner;
    }
    partial[i] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

std::vector<double> squared_distances(std::span<const double> coords, std::size_t n, std::size_t dim) {
  std::vector<double> out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t c = 0; c < dim; ++c) {
        const double diff = coords[i * dim + c] - coords[j * dim + c];
        acc += diff * diff;
      }
      out[i * n + j] = acc;
      out[j * n + i] = acc;
    }
  }
  return out;
}

PenaltyEval triple_penalty(std::span<const double> coords, std::size_t n, std::size_t dim, bool with_gradient) {
  PenaltyEval out;
  if (with_gradient) out.gradient.assign(n * dim, 0.0);
  if (n < 3) return out;
  const auto d2 = squared_distances(coords, n, dim);

  auto push = [&](std::size_t a, std::size_t b, double defect) {
    const double scale = 4.0 * defect;
    for (std::size_t c = 0; c < dim; ++c) {
      const double g = scale * (coords[a * dim + c] - coords[b * dim + c]);
      out.gradient[a * dim + c] += g;
      out.gradient[b * dim + c] -= g;
    }
  };

  std::vector<double> partial(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double eij = d2[i * n + j] - 1.0;
      for (std::size_t k = j + 1; k < n; ++k) {
        const double eik = d2[i * n + k] - 1.0;
        const double ejk = d2[j * n + k] - 1.0;
        double best = eij * eij;
        int which = 0;
        if (eik * eik < best) { best = eik * eik; which = 1; }
        if (ejk * ejk < best) { best = ejk * ejk; which = 2; }
        acc += best;
        if (with_gradient && best > 0.0) {
          if (which == 0) push(i, j, eij);
          else if (which == 1) push(i, k, eik);
          else push(j, k, ejk);
        }
      }
    }
    partial[i] = acc;
  }
  for (double p : partial) out.value += p;
  return out;
}

}  // namespace aeq::kernels::serial
