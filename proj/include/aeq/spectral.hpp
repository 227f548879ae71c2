#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "aeq/matrix.hpp"
#include "aeq/point_set.hpp"

namespace aeq {

// U = (|v_i - v_j|^2) + I - J: zero diagonal, off-diagonal entries |v_i-v_j|^2 - 1.
template <class T>
using UMatrix = SquareMatrix<T>;

template <class T>
UMatrix<T> build_u(const BasicPointSet<T>& s);

Eigen::MatrixXd to_eigen(const SquareMatrix<double>& m);
Eigen::MatrixXd to_eigen(const SquareMatrix<Rational>& m);

// Eigenvalues in nonincreasing order: values[0] is the largest.
struct Spectrum {
  std::vector<double> values;
  double eig_tol = 1e-8;

  std::size_t size() const { return values.size(); }
  double max() const { return values.front(); }
  double min() const { return values.back(); }
};

// Deterministic symmetric eigensolver (tridiagonal QL). Throws InputError
// for non-symmetric input and NumericalError if the iteration cap is hit.
Spectrum eigenvalues(const Eigen::MatrixXd& m, double eig_tol = 1e-8);

// sum_{i,j,k} U_ij U_jk U_ki, computed directly rather than from a spectrum.
template <class T>
T trace_cube(const UMatrix<T>& u);

template <class T>
T trace(const UMatrix<T>& u);

struct TraceIdentities {
  double trace_u = 0;
  double trace_u3 = 0;
  bool holds = false;
};

// Requires s to be almost-equidistant. holds iff tr U = 0 and
// |tr U^3| <= n^3 eig_tol (exactly zero in exact mode).
template <class T>
TraceIdentities trace_identities(const UMatrix<T>& u, const BasicPointSet<T>& s, const Tolerance& tol = {});

struct SpectralCertificate {
  std::size_t n = 0;
  std::size_t dim = 0;
  double trace_u = 0;
  double trace_u3 = 0;
  std::size_t count_eq_one = 0;
  std::size_t count_gt_one = 0;
  double lambda_max = 0;
  double lambda_min = 0;
  bool lemma1_holds = false;
  // Counts came from the characteristic polynomial of U - I over Q.
  bool exact_counts = false;
  // count_gt_one == 0 implies n <= 2d + 4.
  bool corollary_applies = false;
  bool corollary_holds = true;
  Spectrum spectrum;
};

template <class T>
SpectralCertificate certify(const BasicPointSet<T>& s, const Tolerance& tol = {});

// The three cases for a spectrum lambda_0 >= 1 = ... = 1 >= lambda_1 >= ... >= lambda_k
// with vanishing trace and cube trace.
struct LemmaTwoCase {
  bool hypothesis = false;
  bool conclusion = true;  // vacuously true when the hypothesis fails
};

struct LemmaTwoReport {
  std::size_t n = 0;
  std::size_t k = 0;
  double lambda0 = 0;
  double lambda_k = 0;
  double trace = 0;
  double trace_cube = 0;
  LemmaTwoCase case1;  // lambda_0 = 1 => n <= 2k
  LemmaTwoCase case2;  // lambda_0 + lambda_k <= 0 => n <= 2k
  LemmaTwoCase case3;  // n >= 2k, lambda_0 > 1 => lambda_0^3 > (n-k)^3/k^2 - (n-k-1)
  double case3_lhs = 0;
  double case3_rhs = 0;

  bool all_conclusions_hold() const { return case1.conclusion && case2.conclusion && case3.conclusion; }
};

// Number of trailing values once lambda_0 and the block of values within
// eig_tol of 1 are removed.
std::size_t infer_trailing_count(const Spectrum& spec);

// Throws PreconditionError if the spectrum does not have the required shape.
LemmaTwoReport lemma_two_check(const Spectrum& spec, std::size_t k);
LemmaTwoReport lemma_two_check(const Spectrum& spec);

struct CubicInequality {
  double lhs = 0;  // sum x_i^3
  double rhs = 0;  // (m + l)^3 / m^2
  bool holds = false;
  double equality_point = 0;  // 1 + l/m
  bool remark_holds = false;  // rhs >= m + 3l
};

// For x_i >= -2 with sum x_i = m + l, l >= 0: sum x_i^3 >= (m+l)^3/m^2.
CubicInequality cubic_inequality(std::span<const double> xs, double l, double eig_tol = 1e-8);

struct WeylCheck {
  double alpha = 0;
  double beta = 0;
  double gamma = 0;
  bool holds = false;
};

WeylCheck weyl_check(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double eig_tol = 1e-8);

struct PerronCheck {
  double rho = 0;
  bool attained = false;
};

// General (possibly non-symmetric) matrix with nonnegative entries.
PerronCheck perron_frobenius_check(const Eigen::MatrixXd& m, double eig_tol = 1e-8);

// max_i (|m_ii| + sum_{j != i} |m_ij|); for U the disc centres are all 0.
double gershgorin_bound(const Eigen::MatrixXd& m);

}  // namespace aeq
