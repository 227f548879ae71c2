#include "aeq/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>

#include "aeq/geometry.hpp"
#include "aeq/kernels.hpp"
#include "aeq/polynomial.hpp"

namespace aeq {

template <class T>
UMatrix<T> build_u(const BasicPointSet<T>& s) {
  const std::size_t n = s.size();
  UMatrix<T> u(n);
  if constexpr (is_exact_v<T>) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        T e = squared_distance<T>(s[i], s[j]) - 1;
        u(i, j) = e;
        u(j, i) = e;
      }
    }
  } else {
    const auto d2 = kernels::parallel::squared_distances(s.coords(), n, s.dim());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) u(i, j) = (i == j) ? 0.0 : d2[i * n + j] - 1.0;
    }
  }
  return u;
}

Eigen::MatrixXd to_eigen(const SquareMatrix<double>& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  return out;
}

Eigen::MatrixXd to_eigen(const SquareMatrix<Rational>& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).get_d();
    }
  }
  return out;
}

Spectrum eigenvalues(const Eigen::MatrixXd& m, double eig_tol) {
  if (m.rows() != m.cols()) throw InputError("eigenvalues need a square matrix");
  Spectrum out;
  out.eig_tol = eig_tol;
  if (m.rows() == 0) return out;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > eig_tol * scale) {
    throw InputError("matrix is not symmetric within eig_tol");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
  const auto& ev = solver.eigenvalues();  // ascending
  out.values.assign(ev.data(), ev.data() + ev.size());
  std::reverse(out.values.begin(), out.values.end());
  return out;
}

template <class T>
T trace_cube(const UMatrix<T>& u) {
  const std::size_t n = u.size();
  if constexpr (is_exact_v<T>) {
    T total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (u(i, j) == 0) continue;
        T inner = 0;
        for (std::size_t k = 0; k < n; ++k) inner += u(j, k) * u(k, i);
        total += u(i, j) * inner;
      }
    }
    return total;
  } else {
    return kernels::parallel::trace_cube(u.data(), n);
  }
}

template <class T>
T trace(const UMatrix<T>& u) {
  T acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += u(i, i);
  return acc;
}

template <class T>
TraceIdentities trace_identities(const UMatrix<T>& u, const BasicPointSet<T>& s, const Tolerance& tol) {
  if (u.size() != s.size()) throw InputError("U-matrix and point set sizes differ");
  if (!is_almost_equidistant(s, tol)) {
    throw PreconditionError("trace identities require an almost-equidistant set");
  }
  const T t1 = trace(u);
  const T t3 = trace_cube(u);
  TraceIdentities out;
  out.trace_u = to_double(t1);
  out.trace_u3 = to_double(t3);
  if constexpr (is_exact_v<T>) {
    out.holds = (t1 == 0) && (t3 == 0);
  } else {
    const double n = static_cast<double>(u.size());
    out.holds = (t1 == 0.0) && std::abs(t3) <= n * n * n * tol.eig_tol;
  }
  return out;
}

template <class T>
SpectralCertificate certify(const BasicPointSet<T>& s, const Tolerance& tol) {
  const auto u = build_u(s);
  const auto traces = trace_identities(u, s, tol);
  SpectralCertificate cert;
  cert.n = s.size();
  cert.dim = s.dim();
  cert.trace_u = traces.trace_u;
  cert.trace_u3 = traces.trace_u3;

  const double eig_tol = is_exact_v<T> ? Tolerance{}.eig_tol : tol.eig_tol;
  cert.spectrum = eigenvalues(to_eigen(u), eig_tol);
  cert.lambda_max = cert.spectrum.max();
  cert.lambda_min = cert.spectrum.min();

  if constexpr (is_exact_v<T>) {
    // Inertia of U - I from its characteristic polynomial over Q.
    SquareMatrix<Rational> shifted = u;
    for (std::size_t i = 0; i < u.size(); ++i) shifted(i, i) -= 1;
    const auto chi = characteristic_polynomial(shifted);
    cert.count_eq_one = zero_root_multiplicity(chi);
    cert.count_gt_one = positive_root_count(chi);
    cert.exact_counts = true;
  } else {
    for (double v : cert.spectrum.values) {
      if (std::abs(v - 1.0) <= eig_tol) {
        ++cert.count_eq_one;
      } else if (v > 1.0 + eig_tol) {
        ++cert.count_gt_one;
      }
    }
  }

  const long floor_ones = static_cast<long>(cert.n) - static_cast<long>(cert.dim) - 2;
  cert.lemma1_holds =
      traces.holds && cert.count_gt_one <= 1 && static_cast<long>(cert.count_eq_one) >= floor_ones;
  cert.corollary_applies = cert.count_gt_one == 0;
  cert.corollary_holds = !cert.corollary_applies || cert.n <= 2 * cert.dim + 4;
  return cert;
}

std::size_t infer_trailing_count(const Spectrum& spec) {
  const std::size_t n = spec.size();
  if (n == 0) throw PreconditionError("empty spectrum");
  std::size_t ones = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(spec.values[i] - 1.0) <= spec.eig_tol) ++ones;
  }
  return n - 1 - ones;
}

LemmaTwoReport lemma_two_check(const Spectrum& spec) { return lemma_two_check(spec, infer_trailing_count(spec)); }

LemmaTwoReport lemma_two_check(const Spectrum& spec, std::size_t k) {
  const std::size_t n = spec.size();
  const double tol = spec.eig_tol;
  if (n == 0) throw PreconditionError("empty spectrum");
  if (k + 1 > n) throw PreconditionError("trailing count k exceeds n - 1");
  if (!std::is_sorted(spec.values.begin(), spec.values.end(), std::greater<>())) {
    throw PreconditionError("spectrum must be sorted in nonincreasing order");
  }
  const auto& v = spec.values;
  if (v[0] < 1.0 - tol) throw PreconditionError("lambda_0 must be at least 1");
  for (std::size_t i = 1; i < n - k; ++i) {
    if (std::abs(v[i] - 1.0) > tol) throw PreconditionError("values between lambda_0 and the trailing block must equal 1");
  }
  LemmaTwoReport r;
  r.n = n;
  r.k = k;
  r.lambda0 = v[0];
  r.lambda_k = k > 0 ? v[n - 1] : v[0];
  const double rho = std::max({1.0, std::abs(v.front()), std::abs(v.back())});
  for (double x : v) {
    r.trace += x;
    r.trace_cube += x * x * x;
  }
  const double dn = static_cast<double>(n);
  if (std::abs(r.trace) > dn * tol * rho || std::abs(r.trace_cube) > dn * tol * rho * rho * rho) {
    throw PreconditionError("trace and cube trace of the spectrum must vanish");
  }

  const bool n_le_2k = n <= 2 * k;
  r.case1.hypothesis = std::abs(r.lambda0 - 1.0) <= tol;
  r.case1.conclusion = !r.case1.hypothesis || n_le_2k;

  r.case2.hypothesis = k > 0 && r.lambda0 + r.lambda_k <= tol;
  r.case2.conclusion = !r.case2.hypothesis || n_le_2k;

  r.case3.hypothesis = k > 0 && n >= 2 * k && r.lambda0 > 1.0 + tol;
  if (r.case3.hypothesis) {
    const double nk = static_cast<double>(n - k);
    const double dk = static_cast<double>(k);
    r.case3_lhs = r.lambda0 * r.lambda0 * r.lambda0;
    r.case3_rhs = nk * nk * nk / (dk * dk) - (nk - 1.0);
    r.case3.conclusion = r.case3_lhs > r.case3_rhs - dn * tol * std::max(1.0, r.case3_lhs);
  }
  return r;
}

CubicInequality cubic_inequality(std::span<const double> xs, double l, double eig_tol) {
  if (xs.empty()) throw PreconditionError("cubic inequality needs at least one value");
  if (l < 0) throw PreconditionError("l must be nonnegative");
  const double m = static_cast<double>(xs.size());
  double sum = 0, cubes = 0;
  for (double x : xs) {
    if (x < -2.0 - eig_tol) throw PreconditionError("every value must be at least -2");
    sum += x;
    cubes += x * x * x;
  }
  if (std::abs(sum - (m + l)) > m * eig_tol) throw PreconditionError("values must sum to m + l");
  CubicInequality out;
  out.lhs = cubes;
  out.rhs = (m + l) * (m + l) * (m + l) / (m * m);
  out.holds = out.lhs >= out.rhs - m * eig_tol;
  out.equality_point = 1.0 + l / m;
  out.remark_holds = out.rhs >= m + 3.0 * l - m * eig_tol;
  return out;
}

WeylCheck weyl_check(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double eig_tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("Weyl check needs equal-size matrices");
  WeylCheck out;
  out.alpha = eigenvalues(a, eig_tol).max();
  out.beta = eigenvalues(b, eig_tol).max();
  out.gamma = eigenvalues(a + b, eig_tol).max();
  const double scale = std::max({1.0, std::abs(out.alpha), std::abs(out.beta)});
  out.holds = out.gamma <= out.alpha + out.beta + eig_tol * scale;
  return out;
}

PerronCheck perron_frobenius_check(const Eigen::MatrixXd& m, double eig_tol) {
  if (m.rows() != m.cols()) throw InputError("Perron-Frobenius check needs a square matrix");
  if (m.size() > 0 && m.minCoeff() < 0) throw PreconditionError("matrix has a negative entry");
  PerronCheck out;
  if (m.rows() == 0) return out;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  if (solver.info() != Eigen::Success) throw NumericalError("general eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) out.rho = std::max(out.rho, std::abs(ev[i]));
  const double slack = eig_tol * std::max(1.0, out.rho);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const auto& z = ev[i];
    if (std::abs(z.imag()) <= slack && z.real() >= -slack && std::abs(z) >= out.rho - slack) out.attained = true;
  }
  return out;
}

double gershgorin_bound(const Eigen::MatrixXd& m) {
  double bound = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) bound = std::max(bound, m.row(i).cwiseAbs().sum());
  return bound;
}

#define AEQ_INSTANTIATE_SPECTRAL(T)                                                                         \
  template UMatrix<T> build_u<T>(const BasicPointSet<T>&);                                                 \
  template T trace_cube<T>(const UMatrix<T>&);                                                             \
  template T trace<T>(const UMatrix<T>&);                                                                  \
  template TraceIdentities trace_identities<T>(const UMatrix<T>&, const BasicPointSet<T>&, const Tolerance&); \
  template SpectralCertificate certify<T>(const BasicPointSet<T>&, const Tolerance&);

AEQ_INSTANTIATE_SPECTRAL(double)
AEQ_INSTANTIATE_SPECTRAL(Rational)

#undef AEQ_INSTANTIATE_SPECTRAL

}  // namespace aeq
