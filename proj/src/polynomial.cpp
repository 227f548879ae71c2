#include "aeq/polynomial.hpp"

#include <algorithm>
#include <utility>

namespace aeq {

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> coeffs(degree + 1, Rational(0));
  coeffs[degree] = c;
  return Polynomial(std::move(coeffs));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  std::vector<Rational> m(c_);
  const Rational lc = c_.back();
  for (auto& x : m) x /= lc;
  return Polynomial(std::move(m));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
  return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] -= b.c_[i];
  return Polynomial(std::move(out));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return Polynomial(std::move(out));
}

DivMod divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw InputError("polynomial division by zero");
  std::vector<Rational> rem(a.coeffs());
  const auto db = static_cast<std::size_t>(b.degree());
  if (a.degree() < b.degree()) return {Polynomial{}, a};
  std::vector<Rational> quot(rem.size() - db, Rational(0));
  for (std::size_t k = rem.size(); k-- > db;) {
    if (rem[k] == 0) continue;
    const Rational f = rem[k] / b.leading();
    quot[k - db] = f;
    for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] -= f * b.coeffs()[j];
  }
  rem.resize(db);
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = divmod(x, y).remainder;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

Polynomial characteristic_polynomial(const SquareMatrix<Rational>& a) {
  const std::size_t n = a.size();
  SquareMatrix<Rational> h = a;
  // Similarity reduction to upper Hessenberg form.
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t pivot = m;
    while (pivot < n && h(pivot, m - 1) == 0) ++pivot;
    if (pivot == n) continue;
    if (pivot != m) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h(pivot, c), h(m, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h(r, pivot), h(r, m));
    }
    for (std::size_t r = m + 1; r < n; ++r) {
      if (h(r, m - 1) == 0) continue;
      const Rational u = h(r, m - 1) / h(m, m - 1);
      for (std::size_t c = 0; c < n; ++c) h(r, c) -= u * h(m, c);
      for (std::size_t rr = 0; rr < n; ++rr) h(rr, m) += u * h(rr, r);
    }
  }
  // p_k = (x - h_{k-1,k-1}) p_{k-1} - sum_i (prod of subdiagonal) h_{k-1-i,k-1} p_{k-1-i}
  std::vector<Polynomial> p;
  p.reserve(n + 1);
  p.emplace_back(std::vector<Rational>{Rational(1)});
  const Polynomial x({Rational(0), Rational(1)});
  for (std::size_t k = 1; k <= n; ++k) {
    Polynomial next = (x - Polynomial({h(k - 1, k - 1)})) * p[k - 1];
    Rational t = 1;
    for (std::size_t i = 1; i < k; ++i) {
      t *= h(k - i, k - i - 1);
      if (t == 0) break;
      next = next - Polynomial({t * h(k - 1 - i, k - 1)}) * p[k - 1 - i];
    }
    p.push_back(std::move(next));
  }
  return p[n];
}

std::vector<Polynomial> squarefree_decomposition(const Polynomial& p) {
  if (p.degree() < 1) return {};
  const Polynomial f = p.monic();
  const Polynomial df = f.derivative();
  Polynomial a = gcd(f, df);
  Polynomial b = divmod(f, a).quotient;
  Polynomial c = divmod(df, a).quotient;
  Polynomial d = c - b.derivative();
  std::vector<Polynomial> out;
  while (b.degree() >= 1) {
    a = gcd(b, d);
    out.push_back(a);
    b = divmod(b, a).quotient;
    c = divmod(d, a).quotient;
    d = c - b.derivative();
  }
  return out;
}

namespace {

int sign_of(const Rational& x) { return sgn(x); }

std::size_t variations_at(const std::vector<Polynomial>& chain, const Rational& x) {
  std::size_t v = 0;
  int last = 0;
  for (const auto& q : chain) {
    const int s = sign_of(q(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace

std::size_t sturm_count(const Polynomial& p, const Rational& lo, const Rational& hi) {
  if (p.degree() < 1 || !(lo < hi)) return 0;
  std::vector<Polynomial> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    Polynomial r = divmod(chain[chain.size() - 2], chain.back()).remainder;
    if (r.is_zero()) break;
    chain.push_back(Polynomial() - r);
  }
  const std::size_t vlo = variations_at(chain, lo);
  const std::size_t vhi = variations_at(chain, hi);
  return vlo >= vhi ? vlo - vhi : 0;
}

Rational cauchy_root_bound(const Polynomial& p) {
  Rational m = 0;
  if (p.degree() < 1) return Rational(1);
  for (std::size_t i = 0; i + 1 < p.coeffs().size(); ++i) {
    Rational r = abs(p.coeffs()[i] / p.leading());
    if (r > m) m = r;
  }
  return m + 1;
}

std::size_t zero_root_multiplicity(const Polynomial& p) {
  std::size_t k = 0;
  while (k < p.coeffs().size() && p.coeffs()[k] == 0) ++k;
  return k;
}

std::size_t positive_root_count(const Polynomial& p) {
  const auto factors = squarefree_decomposition(p);
  std::size_t total = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const Rational bound = cauchy_root_bound(factors[i]);
    total += (i + 1) * sturm_count(factors[i], Rational(0), bound);
  }
  return total;
}

}  // namespace aeq
