#pragma once

// Independent reference computations. None of these call into the library's
// own algorithms; they are deliberately naive.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using Points = std::vector<std::vector<double>>;
using Matrix = std::vector<std::vector<double>>;

inline double d2(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t c = 0; c < a.size(); ++c) s += (a[c] - b[c]) * (a[c] - b[c]);
  return s;
}

// Lexicographically first triple with no pair at unit distance.
inline std::optional<std::array<std::size_t, 3>> bad_triple(const Points& p, double tol) {
  auto unit = [&](std::size_t i, std::size_t j) { return std::abs(d2(p[i], p[j]) - 1.0) <= tol; };
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      for (std::size_t k = j + 1; k < p.size(); ++k)
        if (!unit(i, j) && !unit(i, k) && !unit(j, k)) return std::array<std::size_t, 3>{i, j, k};
  return std::nullopt;
}

inline Matrix u_matrix(const Points& p) {
  Matrix u(p.size(), std::vector<double>(p.size(), 0.0));
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (i != j) u[i][j] = d2(p[i], p[j]) - 1.0;
  return u;
}

// Cyclic Jacobi rotations; eigenvalues in nonincreasing order.
inline std::vector<double> jacobi_eigenvalues(Matrix a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) off += a[i][j] * a[i][j];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.rbegin(), ev.rend());
  return ev;
}

// det(xI - A) by Faddeev-LeVerrier, ascending coefficients.
inline std::vector<mpq_class> charpoly(const std::vector<std::vector<mpq_class>>& a) {
  const std::size_t n = a.size();
  std::vector<mpq_class> c(n + 1);
  c[n] = 1;
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n, 0));
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    std::vector<std::vector<mpq_class>> am(n, std::vector<mpq_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        mpq_class s = 0;
        for (std::size_t l = 0; l < n; ++l) s += a[i][l] * m[l][j];
        am[i][j] = s;
      }
    for (std::size_t i = 0; i < n; ++i) am[i][i] += c[n - k + 1];
    m = am;
    mpq_class tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += a[i][l] * m[l][i];
    c[n - k] = -tr / static_cast<long>(k);
  }
  return c;
}

// Smallest enclosing ball by trying every support set of size <= dim + 1:
// circumcentre within the affine hull, keep the smallest ball containing all.
inline double meb_radius2(const Points& p) {
  const std::size_t n = p.size(), dim = p[0].size();
  double best = INFINITY;
  std::vector<std::size_t> idx;
  auto consider = [&](const std::vector<std::size_t>& s) {
    const std::size_t k = s.size() - 1;
    std::vector<double> centre(dim);
    if (k == 0) {
      centre = p[s[0]];
    } else {
      // Solve Gram system G a = b with G_ij = 2 (p_i - p_0).(p_j - p_0), b_i = |p_i - p_0|^2.
      std::vector<std::vector<double>> g(k, std::vector<double>(k + 1));
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          double dot = 0;
          for (std::size_t c = 0; c < dim; ++c) dot += (p[s[i + 1]][c] - p[s[0]][c]) * (p[s[j + 1]][c] - p[s[0]][c]);
          g[i][j] = 2 * dot;
        }
        g[i][k] = d2(p[s[i + 1]], p[s[0]]);
      }
      for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col; r < k; ++r)
          if (std::abs(g[r][col]) > std::abs(g[piv][col])) piv = r;
        if (std::abs(g[piv][col]) < 1e-12) return;  // affinely dependent support
        std::swap(g[piv], g[col]);
        for (std::size_t r = 0; r < k; ++r) {
          if (r == col) continue;
          const double f = g[r][col] / g[col][col];
          for (std::size_t c = col; c <= k; ++c) g[r][c] -= f * g[col][c];
        }
      }
      centre = p[s[0]];
      for (std::size_t i = 0; i < k; ++i) {
        const double w = g[i][k] / g[i][i];
        for (std::size_t c = 0; c < dim; ++c) centre[c] += w * (p[s[i + 1]][c] - p[s[0]][c]);
      }
    }
    double r2 = 0;
    for (const auto& q : p) r2 = std::max(r2, d2(q, centre));
    best = std::min(best, r2);
  };
  // Enumerate subsets of size 1..dim+1.
  const std::size_t limit = std::min(n, dim + 1);
  for (std::size_t size = 1; size <= limit; ++size) {
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<long>(size), true);
    do {
      idx.clear();
      for (std::size_t i = 0; i < n; ++i)
        if (mask[i]) idx.push_back(i);
      consider(idx);
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return best;
}

inline Points random_points(std::mt19937_64& rng, std::size_t n, std::size_t dim, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Points p(n, std::vector<double>(dim));
  for (auto& row : p)
    for (auto& x : row) x = u(rng);
  return p;
}

}  // namespace oracle
