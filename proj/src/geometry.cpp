#include "aeq/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "aeq/kernels.hpp"

namespace aeq {

namespace {

template <class T>
T dot(std::span<const T> a, std::span<const T> b) {
  T acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

template <class T>
T norm2(std::span<const T> a) {
  return dot<T>(a, a);
}

template <class T>
kernels::BitMatrix non_unit_graph(const BasicPointSet<T>& s, const Tolerance& tol) {
  const std::size_t n = s.size();
  kernels::BitMatrix g(n);
  if constexpr (is_exact_v<T>) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!is_unit(squared_distance<T>(s[i], s[j]), tol)) g.set(i, j);
      }
    }
  } else {
    const auto d2 = kernels::parallel::squared_distances(s.coords(), n, s.dim());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!is_unit(d2[i * n + j], tol)) g.set(i, j);
      }
    }
  }
  return g;
}

// Dense Gaussian elimination with partial pivoting; nullopt when singular.
template <class T>
std::optional<std::vector<T>> solve_dense(std::vector<T> a, std::vector<T> b, std::size_t m) {
  double scale = 0.0;
  if constexpr (!is_exact_v<T>) {
    for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, std::abs(a[i * m + i]));
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < m; ++r) {
      if (abs_value(a[r * m + col]) > abs_value(a[pivot * m + col])) pivot = r;
    }
    if constexpr (is_exact_v<T>) {
      if (a[pivot * m + col] == 0) return std::nullopt;
    } else {
      if (std::abs(a[pivot * m + col]) <= 1e-12 * scale) return std::nullopt;
    }
    if (pivot != col) {
      for (std::size_t c = 0; c < m; ++c) std::swap(a[col * m + c], a[pivot * m + c]);
      std::swap(b[col], b[pivot]);
    }
    for (std::size_t r = col + 1; r < m; ++r) {
      if (a[r * m + col] == 0) continue;
      const T factor = a[r * m + col] / a[col * m + col];
      for (std::size_t c = col; c < m; ++c) a[r * m + c] -= factor * a[col * m + c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<T> x(m);
  for (std::size_t ri = m; ri-- > 0;) {
    T acc = b[ri];
    for (std::size_t c = ri + 1; c < m; ++c) acc -= a[ri * m + c] * x[c];
    x[ri] = acc / a[ri * m + ri];
  }
  return x;
}

template <class T>
struct Circumcenter {
  std::vector<T> center;
  std::vector<T> weights;  // affine coordinates of center w.r.t. the support
};

// Point of aff(support) equidistant from every support point.
template <class T>
std::optional<Circumcenter<T>> circumcenter(const BasicPointSet<T>& s, const std::vector<std::size_t>& support) {
  const std::size_t dim = s.dim();
  const std::size_t m = support.size() - 1;
  auto q0 = s[support[0]];
  std::vector<std::vector<T>> u(m, std::vector<T>(dim));
  for (std::size_t j = 0; j < m; ++j) {
    auto qj = s[support[j + 1]];
    for (std::size_t c = 0; c < dim; ++c) u[j][c] = qj[c] - q0[c];
  }
  std::vector<T> gram(m * m), rhs(m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = j; k < m; ++k) {
      gram[j * m + k] = dot<T>(u[j], u[k]);
      gram[k * m + j] = gram[j * m + k];
    }
    rhs[j] = gram[j * m + j] / 2;
  }
  auto alpha = solve_dense<T>(std::move(gram), std::move(rhs), m);
  if (!alpha) return std::nullopt;
  Circumcenter<T> out;
  out.center.assign(q0.begin(), q0.end());
  out.weights.assign(m + 1, T(0));
  T rest = 1;
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t c = 0; c < dim; ++c) out.center[c] += (*alpha)[j] * u[j][c];
    out.weights[j + 1] = (*alpha)[j];
    rest -= (*alpha)[j];
  }
  out.weights[0] = rest;
  return out;
}

}  // namespace

template <class T>
T squared_distance(std::span<const T> p, std::span<const T> q) {
  if (p.size() != q.size()) {
    throw InputError("dimension mismatch: " + std::to_string(p.size()) + " vs " + std::to_string(q.size()));
  }
  T acc = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const T diff = p[i] - q[i];
    acc += diff * diff;
  }
  return acc;
}

template <class T>
EquidistanceCheck is_almost_equidistant(const BasicPointSet<T>& s, const Tolerance& tol) {
  auto tri = kernels::parallel::find_triangle(non_unit_graph(s, tol));
  if (!tri) return {};
  return {false, Triple{(*tri)[0], (*tri)[1], (*tri)[2]}};
}

template <class T>
EquidistanceCheck is_almost_equidistant_serial(const BasicPointSet<T>& s, const Tolerance& tol) {
  const std::size_t n = s.size();
  kernels::BitMatrix g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!is_unit(squared_distance<T>(s[i], s[j]), tol)) g.set(i, j);
    }
  }
  auto tri = kernels::serial::find_triangle(g);
  if (!tri) return {};
  return {false, Triple{(*tri)[0], (*tri)[1], (*tri)[2]}};
}

template <class T>
std::vector<T> barycenter(const BasicPointSet<T>& s) {
  std::vector<T> c(s.dim(), T(0));
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto p = s[i];
    for (std::size_t k = 0; k < s.dim(); ++k) c[k] += p[k];
  }
  const T n = static_cast<long>(s.size());
  for (auto& x : c) x /= n;
  return c;
}

template <class T>
BasicPointSet<T> translate(const BasicPointSet<T>& s, std::span<const T> offset) {
  if (offset.size() != s.dim()) throw InputError("translation has wrong dimension");
  std::vector<T> coords(s.coords().begin(), s.coords().end());
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t k = 0; k < s.dim(); ++k) coords[i * s.dim() + k] += offset[k];
  }
  return BasicPointSet<T>(s.dim(), s.size(), std::move(coords));
}

template <class T>
BasicPointSet<T> recenter_to_barycenter(const BasicPointSet<T>& s) {
  auto c = barycenter(s);
  for (auto& x : c) x = -x;
  return translate<T>(s, c);
}

template <class T>
Ball<T> min_enclosing_ball(const BasicPointSet<T>& s) {
  const std::size_t n = s.size();
  const std::size_t dim = s.dim();
  Ball<T> ball;
  ball.center.assign(s[0].begin(), s[0].end());

  std::size_t far = 0;
  T far_d2 = 0;
  for (std::size_t i = 1; i < n; ++i) {
    T d2 = squared_distance<T>(s[i], ball.center);
    if (d2 > far_d2) {
      far_d2 = d2;
      far = i;
    }
  }
  ball.squared_radius = far_d2;
  if (far_d2 == 0) {
    ball.support = {0};
    return ball;
  }

  // Pivoting walk: the center moves toward the circumcenter of the current
  // support, picking up "stopper" points that reach the shrinking boundary
  // and dropping support points with negative affine weight.
  std::vector<std::size_t> support{far};
  std::vector<char> in_support(n, 0);
  in_support[far] = 1;
  const double diam_scale = std::sqrt(to_double(far_d2));
  const std::size_t cap = 64 * (n + dim + 4);

  for (std::size_t iter = 0; iter < cap; ++iter) {
    auto cc = circumcenter(s, support);
    if (!cc) break;  // degenerate support; current center is still feasible
    std::vector<T> dir(dim);
    for (std::size_t k = 0; k < dim; ++k) dir[k] = cc->center[k] - ball.center[k];

    auto q = s[support[0]];
    T t_stop = 1;
    std::optional<std::size_t> stopper;
    const double dir_norm = std::sqrt(to_double(norm2<T>(dir)));
    for (std::size_t i = 0; i < n; ++i) {
      if (in_support[i]) continue;
      auto p = s[i];
      T denom = 0;
      for (std::size_t k = 0; k < dim; ++k) denom += 2 * dir[k] * (p[k] - q[k]);
      if constexpr (is_exact_v<T>) {
        if (denom >= 0) continue;
      } else {
        if (denom >= -1e-13 * dir_norm * diam_scale) continue;
      }
      T slack = squared_distance<T>(p, ball.center) - squared_distance<T>(q, ball.center);
      if (slack > 0) slack = 0;
      const T t = slack / denom;
      if (t < t_stop) {
        t_stop = t;
        stopper = i;
      }
    }
    for (std::size_t k = 0; k < dim; ++k) ball.center[k] += t_stop * dir[k];

    if (stopper) {
      support.push_back(*stopper);
      in_support[*stopper] = 1;
      continue;
    }
    std::size_t worst = 0;
    T worst_weight = 0;
    for (std::size_t j = 0; j < support.size(); ++j) {
      if (cc->weights[j] < worst_weight) {
        worst_weight = cc->weights[j];
        worst = j;
      }
    }
    bool optimal;
    if constexpr (is_exact_v<T>) {
      optimal = worst_weight >= 0;
    } else {
      optimal = worst_weight >= -1e-12;
    }
    if (optimal) break;
    in_support[support[worst]] = 0;
    support.erase(support.begin() + static_cast<std::ptrdiff_t>(worst));
  }

  ball.support = support;
  if constexpr (is_exact_v<T>) {
    ball.squared_radius = squared_distance<T>(s[support[0]], ball.center);
  } else {
    T r2 = 0;
    for (std::size_t i = 0; i < n; ++i) r2 = std::max(r2, squared_distance<T>(s[i], ball.center));
    ball.squared_radius = r2;
  }
  return ball;
}

template <class T>
T squared_diameter(const BasicPointSet<T>& s) {
  T best = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      T d2 = squared_distance<T>(s[i], s[j]);
      if (d2 > best) best = d2;
    }
  }
  return best;
}

template <class T>
GeometrySummary summarize(const BasicPointSet<T>& s) {
  GeometrySummary out;
  out.diameter = std::sqrt(to_double(squared_diameter(s)));
  auto ball = min_enclosing_ball(s);
  for (const auto& x : ball.center) out.mer_center.push_back(to_double(x));
  out.mer_radius = std::sqrt(to_double(ball.squared_radius));
  for (const auto& x : barycenter(s)) out.barycenter.push_back(to_double(x));
  return out;
}

namespace {

template <class T>
T pair_sum_within(const BasicPointSet<T>& s) {
  T acc = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) acc += squared_distance<T>(s[i], s[j]);
  }
  return acc;
}

template <class T>
T cross_sum(const BasicPointSet<T>& x, const BasicPointSet<T>& y) {
  T acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) acc += squared_distance<T>(x[i], y[j]);
  }
  return acc;
}

template <class T>
void check_pair_shapes(const BasicPointSet<T>& x, const BasicPointSet<T>& y) {
  if (x.size() != y.size()) throw InputError("barycenter identity needs equal cardinalities");
  if (x.dim() != y.dim()) throw InputError("barycenter identity needs equal dimensions");
}

}  // namespace

template <class T>
T barycenter_identity_residual(const BasicPointSet<T>& x, const BasicPointSet<T>& y) {
  check_pair_shapes(x, y);
  const T n = static_cast<long>(x.size());
  auto bx = barycenter(x);
  auto by = barycenter(y);
  T residual = cross_sum(x, y) - pair_sum_within(x) - pair_sum_within(y) -
               n * n * squared_distance<T>(std::span<const T>(bx), std::span<const T>(by));
  return abs_value(residual);
}

double barycenter_identity_relative(const PointSet& x, const PointSet& y) {
  check_pair_shapes(x, y);
  return barycenter_identity_residual(x, y) / std::max(1.0, cross_sum(x, y));
}

template <class T>
T max_sphere_defect(const BasicPointSet<T>& s, std::span<const T> center, const T& squared_radius) {
  T worst = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    T defect = abs_value(T(squared_distance<T>(s[i], center) - squared_radius));
    if (defect > worst) worst = defect;
  }
  return worst;
}

#define AEQ_INSTANTIATE_GEOMETRY(T)                                                                     \
  template T squared_distance<T>(std::span<const T>, std::span<const T>);                              \
  template EquidistanceCheck is_almost_equidistant<T>(const BasicPointSet<T>&, const Tolerance&);        \
  template EquidistanceCheck is_almost_equidistant_serial<T>(const BasicPointSet<T>&, const Tolerance&); \
  template std::vector<T> barycenter<T>(const BasicPointSet<T>&);                                        \
  template BasicPointSet<T> recenter_to_barycenter<T>(const BasicPointSet<T>&);                          \
  template BasicPointSet<T> translate<T>(const BasicPointSet<T>&, std::span<const T>);                   \
  template Ball<T> min_enclosing_ball<T>(const BasicPointSet<T>&);                                       \
  template T squared_diameter<T>(const BasicPointSet<T>&);                                               \
  template GeometrySummary summarize<T>(const BasicPointSet<T>&);                                        \
  template T barycenter_identity_residual<T>(const BasicPointSet<T>&, const BasicPointSet<T>&);          \
  template T max_sphere_defect<T>(const BasicPointSet<T>&, std::span<const T>, const T&);

AEQ_INSTANTIATE_GEOMETRY(double)
AEQ_INSTANTIATE_GEOMETRY(Rational)

#undef AEQ_INSTANTIATE_GEOMETRY

}  // namespace aeq
