#include <omp.h>

#include <bit>
#include <limits>

#include "aeq/kernels.hpp"

namespace aeq::kernels {

namespace {
int g_threads = 0;
}

void set_thread_count(int threads) {
  g_threads = threads;
  if (threads > 0) omp_set_num_threads(threads);
}

int thread_count() { return g_threads > 0 ? g_threads : omp_get_max_threads(); }

namespace parallel {

std::optional<Triangle> find_triangle(const BitMatrix& g) {
  const auto n = static_cast<std::ptrdiff_t>(g.size());
  const std::size_t words = g.words();
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  // Each row's first triangle is recorded; the smallest row wins, so the
  // witness matches the serial scan regardless of thread interleaving.
  std::vector<Triangle> first(g.size(), Triangle{none, none, none});
  std::size_t best_row = none;

#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t si = 0; si < n; ++si) {
    const auto i = static_cast<std::size_t>(si);
    std::size_t current;
#pragma omp critical(aeq_find_triangle)
    current = best_row;
    if (i > current) continue;
    auto ri = g.row(i);
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (!g.test(i, j)) continue;
      auto rj = g.row(j);
      bool found = false;
      for (std::size_t w = (j + 1) / 64; w < words; ++w) {
        std::uint64_t common = ri[w] & rj[w];
        if (w == (j + 1) / 64) common &= ~std::uint64_t{0} << ((j + 1) % 64);
        if (common != 0) {
          first[i] = Triangle{i, j, w * 64 + static_cast<std::size_t>(std::countr_zero(common))};
          found = true;
          break;
        }
      }
      if (found) {
#pragma omp critical(aeq_find_triangle)
        if (i < best_row) best_row = i;
        break;
      }
    }
  }
  if (best_row == none) return std::nullopt;
  return first[best_row];
}

double trace_cube(std::span<const double> m, std::size_t n) {
  std::vector<double> partial(n, 0.0);
  const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t si = 0; si < sn; ++si) {
    const auto i = static_cast<std::size_t>(si);
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
  const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t si = 0; si < sn; ++si) {
    const auto i = static_cast<std::size_t>(si);
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
  const auto d2 = parallel::squared_distances(coords, n, dim);
  const auto sn = static_cast<std::ptrdiff_t>(n);

  // Value: per-row partials reduced in index order (bit-identical to serial).
  std::vector<double> partial(n, 0.0);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t si = 0; si < sn; ++si) {
    const auto i = static_cast<std::size_t>(si);
    double acc = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double eij = d2[i * n + j] - 1.0;
      for (std::size_t k = j + 1; k < n; ++k) {
        const double eik = d2[i * n + k] - 1.0;
        const double ejk = d2[j * n + k] - 1.0;
        double best = eij * eij;
        if (eik * eik < best) best = eik * eik;
        if (ejk * ejk < best) best = ejk * ejk;
        acc += best;
      }
    }
    partial[i] = acc;
  }
  for (double p : partial) out.value += p;
  if (!with_gradient) return out;

  // Gradient: each point gathers the contributions of the triples whose
  // active pair contains it, so no two threads write the same row.
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t sp = 0; sp < sn; ++sp) {
    const auto p = static_cast<std::size_t>(sp);
    double* grad = out.gradient.data() + p * dim;
    for (std::size_t q = 0; q < n; ++q) {
      if (q == p) continue;
      for (std::size_t r = q + 1; r < n; ++r) {
        if (r == p) continue;
        // canonical order of the triple {p, q, r}
        std::size_t a = p, b = q, c = r;
        if (a > b) std::swap(a, b);
        if (b > c) std::swap(b, c);
        if (a > b) std::swap(a, b);
        const double eab = d2[a * n + b] - 1.0;
        const double eac = d2[a * n + c] - 1.0;
        const double ebc = d2[b * n + c] - 1.0;
        double best = eab * eab;
        std::size_t u = a, v = b;
        double e = eab;
        if (eac * eac < best) { best = eac * eac; u = a; v = c; e = eac; }
        if (ebc * ebc < best) { best = ebc * ebc; u = b; v = c; e = ebc; }
        if (best == 0.0 || (u != p && v != p)) continue;
        const std::size_t other = (u == p) ? v : u;
        for (std::size_t k = 0; k < dim; ++k) grad[k] += 4.0 * e * (coords[p * dim + k] - coords[other * dim + k]);
      }
    }
  }
  return out;
}

}  // namespace parallel
}  // namespace aeq::kernels
