#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <type_traits>

namespace aeq {

using Rational = mpq_class;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.get_d(); }

// Accepts "p/q", "p" and plain decimals such as "-0.25" (converted exactly).
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& x);

template <class T>
T abs_value(const T& x) {
  if constexpr (is_exact_v<T>) {
    return abs(x);
  } else {
    return x < 0 ? -x : x;
  }
}

}  // namespace aeq
