#include <cctype>
#include <cmath>
#include <string>

#include "aeq/error.hpp"
#include "aeq/point_set.hpp"
#include "aeq/scalar.hpp"

namespace aeq {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  std::string_view body = s;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) body.remove_prefix(1);
  if (!all_digits(body)) throw InputError("not an integer: '" + std::string(s) + "'");
  std::string text(s[0] == '+' ? s.substr(1) : s);
  return mpz_class(text, 10);
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw InputError("empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw InputError("bad denominator in '" + std::string(text) + "'");
    mpz_class den(std::string(den_text), 10);
    if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  // decimal, optionally with exponent
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    mpz_class ez = parse_integer(text.substr(e + 1));
    if (!ez.fits_slong_p()) throw InputError("exponent out of range in '" + std::string(text) + "'");
    exponent = ez.get_si();
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long frac_len = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    digits = std::string(mantissa.substr(0, dot)) + std::string(mantissa.substr(dot + 1));
    frac_len = static_cast<long>(mantissa.size() - dot - 1);
  } else {
    digits = std::string(mantissa);
  }
  if (!all_digits(digits)) throw InputError("not a rational literal: '" + std::string(text) + "'");
  mpz_class num(digits, 10);
  if (negative) num = -num;
  const long shift = exponent - frac_len;
  Rational r;
  if (shift >= 0) {
    r = Rational(num * pow10(static_cast<unsigned long>(shift)));
  } else {
    r = Rational(num, pow10(static_cast<unsigned long>(-shift)));
  }
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_str();
}

PointSet to_floating(const ExactPointSet& s) {
  std::vector<double> coords;
  coords.reserve(s.coords().size());
  for (const auto& x : s.coords()) coords.push_back(x.get_d());
  return PointSet(s.dim(), s.size(), std::move(coords));
}

ExactPointSet to_exact(const PointSet& s) {
  std::vector<Rational> coords;
  coords.reserve(s.coords().size());
  for (double x : s.coords()) {
    if (!std::isfinite(x)) throw InputError("non-finite coordinate cannot be made exact");
    coords.emplace_back(x);
  }
  return ExactPointSet(s.dim(), s.size(), std::move(coords));
}

void Tolerance::validate(bool exact_mode) const {
  if (exact_mode) {
    if (dist_tol != 0.0 || eig_tol != 0.0) throw InputError("exact mode requires zero tolerances");
  } else {
    if (!(dist_tol > 0.0) || !(eig_tol > 0.0)) throw InputError("floating mode requires positive tolerances");
  }
}

}  // namespace aeq
