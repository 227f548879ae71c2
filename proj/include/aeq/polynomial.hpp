#pragma once

// Univariate polynomials over Q: characteristic polynomials, square-free
// decomposition and Sturm root counting. Used for exact eigenvalue
// multiplicities where floating clustering could over-merge.

#include <cstddef>
#include <vector>

#include "aeq/matrix.hpp"
#include "aeq/scalar.hpp"

namespace aeq {

class Polynomial {
 public:
  Polynomial() = default;
  // Coefficients in ascending degree order; trailing zeros are trimmed.
  explicit Polynomial(std::vector<Rational> coeffs);

  static Polynomial monomial(const Rational& c, std::size_t degree);

  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& leading() const { return c_.back(); }
  Rational operator()(const Rational& x) const;

  Polynomial derivative() const;
  Polynomial monic() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<Rational> c_;
};

struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};

DivMod divmod(const Polynomial& a, const Polynomial& b);
// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

// det(x I - A), computed by Hessenberg reduction over Q.
Polynomial characteristic_polynomial(const SquareMatrix<Rational>& a);

// Yun's algorithm: p = lc(p) * prod_i factors[i]^(i+1), each factor monic,
// square-free and pairwise coprime (factors may be 1).
std::vector<Polynomial> squarefree_decomposition(const Polynomial& p);

// Number of distinct real roots of a square-free p in the half-open (lo, hi].
std::size_t sturm_count(const Polynomial& p, const Rational& lo, const Rational& hi);

// Strict upper bound on the absolute value of every complex root.
Rational cauchy_root_bound(const Polynomial& p);

// Multiplicity of x = 0 as a root.
std::size_t zero_root_multiplicity(const Polynomial& p);

// Roots strictly greater than zero, counted with multiplicity.
std::size_t positive_root_count(const Polynomial& p);

}  // namespace aeq
