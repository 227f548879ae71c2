#include "aeq/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "aeq/geometry.hpp"
#include "aeq/spectral.hpp"

namespace aeq {

void BoundReport::observe(std::size_t n) {
  n_observed = n;
  satisfied = !bound || n <= *bound;
}

BoundReport sphere_bound(std::size_t d, double r, double dist_tol) {
  if (d == 0) throw InputError("dimension must be positive");
  const double critical = std::sqrt(0.5);
  if (!(r > 0.0)) throw InputError("sphere radius must be positive");
  if (r > critical + dist_tol) throw InputError("sphere bound needs r <= 1/sqrt(2)");
  BoundReport out;
  out.theorem = "sphere";
  out.dim = d;
  out.params["radius"] = r;
  if (std::abs(r - critical) <= dist_tol) {
    out.bound = 2 * d;
    out.notes.push_back("critical sphere of radius 1/sqrt(2): at most 2d points");
  } else {
    out.bound = 2 * d + 2;
  }
  return out;
}

std::size_t conjectured_diameter_bound(std::size_t d) { return 3 * (d + 1) / 2; }

BoundReport diameter_bound(std::size_t d) {
  if (d == 0) throw InputError("dimension must be positive");
  BoundReport out;
  out.theorem = "diameter";
  out.dim = d;
  out.bound = 2 * d + 4;
  out.detail["conjectured_bound"] = static_cast<double>(conjectured_diameter_bound(d));
  return out;
}

namespace {

// (2nr + 1)^3 - [(n-d-1)^3/(d+1)^2 - (n-d-2)]; the set size n is ruled out
// for the one-large-eigenvalue branch when this is <= 0.
double ball_gap(double n, double d, double r) {
  const double lhs = std::pow(2.0 * n * r + 1.0, 3);
  const double a = n - d - 1.0;
  const double rhs = a * a * a / ((d + 1.0) * (d + 1.0)) - (n - d - 2.0);
  return lhs - rhs;
}

}  // namespace

std::optional<std::size_t> ball_bound_threshold(std::size_t d, double c0) {
  if (d == 0) throw InputError("dimension must be positive");
  if (!(c0 >= 0.0) || !(c0 < 0.5)) throw InputError("c0 must lie in [0, 1/2)");
  const double dd = static_cast<double>(d);
  const double r = c0 / std::pow(dd + 1.0, 2.0 / 3.0);

  // gap(n) is a cubic in n with positive leading coefficient (1 - 8 c0^3)/(d+1)^2
  // once negated; scan past its Cauchy root bound so no sign change is missed.
  const double D = (dd + 1.0) * (dd + 1.0);
  const double a = dd + 1.0;
  const double c3 = 1.0 / D - 8.0 * r * r * r;
  const double c2 = -3.0 * a / D - 12.0 * r * r;
  const double c1 = 3.0 * a * a / D - 1.0 - 6.0 * r;
  const double c0coef = -a * a * a / D + a + 1.0 - 1.0;
  const double cauchy = 1.0 + std::max({std::abs(c2 / c3), std::abs(c1 / c3), std::abs(c0coef / c3)});
  const double cap = std::max(100.0 * (dd + 1.0), std::ceil(cauchy) + 1.0);
  if (cap > 1e8) return std::nullopt;

  const auto first = 2 * d + 2;
  const auto last = static_cast<std::size_t>(cap);
  std::size_t last_feasible = first - 1;
  for (std::size_t n = first; n <= last; ++n) {
    if (ball_gap(static_cast<double>(n), dd, r) > 0.0) last_feasible = n;
  }
  if (last_feasible == last) return std::nullopt;
  return last_feasible + 1;
}

BoundReport ball_bound(std::size_t d, double c0) {
  BoundReport out;
  out.theorem = "ball";
  out.dim = d;
  out.params["c0"] = c0;
  const double r = c0 / std::pow(static_cast<double>(d) + 1.0, 2.0 / 3.0);
  out.params["radius"] = std::sqrt(0.5 + r);
  const auto threshold = ball_bound_threshold(d, c0);
  if (!threshold) {
    out.notes.push_back("threshold scan did not terminate; only the asymptotic bound applies");
    return out;
  }
  out.detail["threshold"] = static_cast<double>(*threshold);
  out.detail["no_large_eigenvalue_bound"] = static_cast<double>(2 * d + 4);
  out.bound = std::max(*threshold - 1, 2 * d + 4);
  return out;
}

template <class T>
FStatistic<T> f_statistic(const BasicPointSet<T>& s) {
  const std::size_t n = s.size();
  FStatistic<T> out;
  out.per_point_sums.assign(n, T(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const T e = squared_distance<T>(s[i], s[j]) - 1;
      out.per_point_sums[i] += e;
      out.per_point_sums[j] += e;
    }
  }
  out.value = T(0);
  out.full_value = T(0);
  for (std::size_t i = 0; i < n; ++i) {
    const T a = abs_value(out.per_point_sums[i]);
    if (a > out.value) {
      out.value = a;
      out.argmax_index = i;
    }
    const T full = abs_value(T(out.per_point_sums[i] - 1));
    if (full > out.full_value) {
      out.full_value = full;
      out.full_argmax_index = i;
    }
  }
  return out;
}

template <class T>
NormBounds recentred_norm_bounds(const BasicPointSet<T>& s, const Tolerance& tol) {
  const auto c = barycenter(s);
  for (const auto& x : c) {
    bool centred;
    if constexpr (is_exact_v<T>) {
      centred = x == 0;
    } else {
      centred = std::abs(x) <= tol.dist_tol;
    }
    if (!centred) throw PreconditionError("point set is not recentred to its barycenter");
  }
  const auto f = f_statistic(s);
  const std::vector<T> origin(s.dim(), T(0));
  NormBounds out;
  T worst = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    T dev = abs_value(T(squared_distance<T>(s[i], origin) - T(1) / 2));
    if (dev > worst) worst = dev;
  }
  out.max_deviation = to_double(worst);
  if constexpr (is_exact_v<T>) {
    const T budget = T(3) * f.full_value / (T(2) * static_cast<long>(s.size()));
    out.f_over_n_bound = to_double(budget);
    out.holds = worst <= budget;
  } else {
    out.f_over_n_bound = 3.0 * f.full_value / (2.0 * static_cast<double>(s.size()));
    out.holds = out.max_deviation <= out.f_over_n_bound + tol.dist_tol;
  }
  return out;
}

LemmaEnd lemma_end_check(const PointSet& s, std::size_t w0_index, double x, const Tolerance& tol) {
  if (w0_index >= s.size()) throw InputError("w0 index out of range");
  if (!(x > 0.0)) throw PreconditionError("x must be positive");
  if (!is_almost_equidistant(s, tol)) throw PreconditionError("lemma needs an almost-equidistant set");
  const std::vector<double> origin(s.dim(), 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::abs(squared_distance<double>(s[i], origin) - 0.5) > x + tol.dist_tol) {
      throw PreconditionError("point " + std::to_string(i) + " violates | |w_i|^2 - 1/2 | <= x");
    }
  }
  // Drop points at unit distance from w0; the rest must form a unit simplex.
  std::vector<std::size_t> reduced;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i == w0_index) continue;
    if (!is_unit(squared_distance<double>(s[w0_index], s[i]), tol)) reduced.push_back(i);
  }
  for (std::size_t a = 0; a < reduced.size(); ++a) {
    for (std::size_t b = a + 1; b < reduced.size(); ++b) {
      if (!is_unit(squared_distance<double>(s[reduced[a]], s[reduced[b]]), tol)) {
        throw PreconditionError("points far from w0 are not pairwise at unit distance");
      }
    }
  }
  LemmaEnd out;
  out.reduced_size = reduced.size();
  double sum = 0.0;
  for (std::size_t i : reduced) sum += squared_distance<double>(s[w0_index], s[i]) - 1.0;
  out.lhs = std::abs(sum);
  const double d = static_cast<double>(s.dim());
  out.rhs_without_constant = std::sqrt(d) + d * std::sqrt(x) + d * x;
  out.ratio = out.lhs / out.rhs_without_constant;
  return out;
}

namespace {

double implied_c0(double squared_radius, std::size_t d) {
  return std::max(0.0, squared_radius - 0.5) * std::pow(static_cast<double>(d) + 1.0, 2.0 / 3.0);
}

}  // namespace

template <class T>
PipelineReport general_bound_pipeline(const BasicPointSet<T>& s, const Tolerance& tol, bool require_diameter) {
  PipelineReport out;
  const std::size_t n = s.size();
  const std::size_t d = s.dim();
  out.report.theorem = "general";
  out.report.dim = d;
  std::vector<std::size_t> finite;

  auto halt = [&](PipelineStage stage) {
    stage.passed = false;
    out.stages.push_back(std::move(stage));
    out.report.satisfied = false;
    out.report.n_observed = n;
    return out;
  };

  PipelineStage verify;
  verify.name = "verify";
  if (auto check = is_almost_equidistant(s, tol); !check) {
    const auto& w = *check.witness;
    verify.message = "triple (" + std::to_string(w[0]) + ", " + std::to_string(w[1]) + ", " + std::to_string(w[2]) +
                     ") has no unit pair";
    return halt(std::move(verify));
  }
  out.stages.push_back(verify);

  const auto centred = recenter_to_barycenter(s);
  PipelineStage recenter;
  recenter.name = "recenter";
  out.stages.push_back(recenter);

  const auto f = f_statistic(centred);
  PipelineStage fstage;
  fstage.name = "f_statistic";
  fstage.values["f"] = to_double(f.full_value);
  fstage.values["f_offdiagonal"] = to_double(f.value);
  fstage.values["argmax_index"] = static_cast<double>(f.full_argmax_index);
  out.stages.push_back(fstage);

  const auto norms = recentred_norm_bounds(centred, tol);
  PipelineStage band;
  band.name = "norm_bounds";
  band.values["max_deviation"] = norms.max_deviation;
  band.values["f_over_n_bound"] = norms.f_over_n_bound;
  if (!norms.holds) {
    band.message = "recentred norms leave the 3f/(2n) band";
    return halt(std::move(band));
  }
  out.stages.push_back(band);

  const auto cert = certify(s, tol);
  PipelineStage spectral;
  spectral.name = "certificate";
  spectral.values["count_gt_one"] = static_cast<double>(cert.count_gt_one);
  spectral.values["count_eq_one"] = static_cast<double>(cert.count_eq_one);
  spectral.values["lambda_max"] = cert.lambda_max;
  spectral.values["lambda_min"] = cert.lambda_min;
  if (!cert.lemma1_holds) {
    spectral.message = "eigenvalue structure of U violates the at-most-one-above-1 / n-d-2 ones pattern";
    return halt(std::move(spectral));
  }
  if (cert.count_gt_one == 0) {
    spectral.bound = 2 * d + 4;
    finite.push_back(*spectral.bound);
  }
  out.stages.push_back(spectral);

  // Ball implied by the norm band around the barycenter.
  PipelineStage implied;
  implied.name = "implied_ball";
  const double implied_r2 = 0.5 + norms.f_over_n_bound;
  implied.values["radius"] = std::sqrt(implied_r2);
  implied.values["c0"] = implied_c0(implied_r2, d);
  if (implied.values["c0"] < 0.5) {
    auto b = ball_bound(d, implied.values["c0"]);
    implied.bound = b.bound;
    if (b.bound) finite.push_back(*b.bound);
  } else {
    implied.message = "implied radius outside the small-ball regime";
  }
  out.stages.push_back(implied);

  const auto ball = min_enclosing_ball(s);
  const double r2 = to_double(ball.squared_radius);
  PipelineStage enclosing;
  enclosing.name = "enclosing_ball";
  enclosing.values["radius"] = std::sqrt(r2);
  enclosing.values["c0"] = implied_c0(r2, d);
  if (enclosing.values["c0"] < 0.5) {
    auto b = ball_bound(d, enclosing.values["c0"]);
    enclosing.bound = b.bound;
    if (b.bound) finite.push_back(*b.bound);
  } else {
    enclosing.message = "enclosing ball outside the small-ball regime";
  }
  out.stages.push_back(enclosing);

  PipelineStage sphere;
  sphere.name = "sphere";
  const T defect = max_sphere_defect<T>(s, ball.center, ball.squared_radius);
  const bool cospherical = is_exact_v<T> ? defect == 0 : to_double(defect) <= tol.dist_tol;
  sphere.values["defect"] = to_double(defect);
  if (cospherical && std::sqrt(r2) > 0.0 && std::sqrt(r2) <= std::sqrt(0.5) + tol.dist_tol) {
    auto b = sphere_bound(d, std::min(std::sqrt(r2), std::sqrt(0.5)), tol.dist_tol);
    sphere.bound = b.bound;
    finite.push_back(*b.bound);
  } else {
    sphere.message = "not on a sphere of radius at most 1/sqrt(2)";
  }
  out.stages.push_back(sphere);

  PipelineStage diam;
  diam.name = "diameter_bound";
  const double diameter2 = to_double(squared_diameter(s));
  diam.values["diameter"] = std::sqrt(diameter2);
  if (diameter2 <= 1.0 + tol.dist_tol) {
    diam.bound = 2 * d + 4;
    finite.push_back(*diam.bound);
  } else if (require_diameter) {
    diam.message = "diameter exceeds 1";
    return halt(std::move(diam));
  } else {
    diam.message = "diameter exceeds 1; branch not applicable";
  }
  out.stages.push_back(diam);

  if (!finite.empty()) out.report.bound = *std::min_element(finite.begin(), finite.end());
  out.report.observe(n);
  out.report.detail["f"] = to_double(f.full_value);
  out.report.detail["implied_radius"] = std::sqrt(implied_r2);
  out.report.detail["enclosing_radius"] = std::sqrt(r2);
  out.completed = true;
  if (!out.report.satisfied) {
    out.stages.back().message += (out.stages.back().message.empty() ? "" : "; ") + std::string("n exceeds the bound");
  }
  return out;
}

BoundReport check_sphere(const PointSet& s, std::optional<double> radius, const Tolerance& tol) {
  const auto ball = min_enclosing_ball(s);
  const double r = radius.value_or(std::sqrt(ball.squared_radius));
  if (max_sphere_defect<double>(s, ball.center, r * r) > tol.dist_tol) {
    throw PreconditionError("points do not lie on a common sphere of the given radius");
  }
  if (!is_almost_equidistant(s, tol)) throw PreconditionError("configuration is not almost-equidistant");
  auto out = sphere_bound(s.dim(), r, tol.dist_tol);
  out.observe(s.size());
  return out;
}

BoundReport check_diameter(const PointSet& s, const Tolerance& tol) {
  const double diameter2 = squared_diameter(s);
  if (diameter2 > 1.0 + tol.dist_tol) throw PreconditionError("configuration has diameter greater than 1");
  if (!is_almost_equidistant(s, tol)) throw PreconditionError("configuration is not almost-equidistant");
  auto out = diameter_bound(s.dim());
  const auto u = build_u(s);
  Eigen::MatrixXd neg = -to_eigen(u);
  neg = neg.cwiseMax(0.0);  // entries of U are <= dist_tol here
  const auto pf = perron_frobenius_check(neg, tol.eig_tol);
  const auto spec = eigenvalues(to_eigen(u), tol.eig_tol);
  out.detail["rho_neg_u"] = pf.rho;
  out.detail["lambda_max"] = spec.max();
  out.detail["lambda_min"] = spec.min();
  out.detail["perron_attained"] = pf.attained ? 1.0 : 0.0;
  out.observe(s.size());
  if (!pf.attained || spec.max() + spec.min() > tol.eig_tol) {
    out.satisfied = false;
    out.notes.push_back("lambda_max(U) + lambda_min(U) exceeds eig_tol");
  }
  return out;
}

BoundReport check_ball(const PointSet& s, std::optional<double> c0, const Tolerance& tol) {
  if (!is_almost_equidistant(s, tol)) throw PreconditionError("configuration is not almost-equidistant");
  const auto ball = min_enclosing_ball(s);
  const double derived = implied_c0(ball.squared_radius, s.dim());
  const double used = c0.value_or(derived);
  if (used + 1e-12 < derived) throw PreconditionError("configuration does not fit in the ball for this c0");
  auto out = ball_bound(s.dim(), used);
  out.detail["enclosing_radius"] = std::sqrt(ball.squared_radius);
  out.observe(s.size());
  return out;
}

template FStatistic<double> f_statistic<double>(const BasicPointSet<double>&);
template FStatistic<Rational> f_statistic<Rational>(const BasicPointSet<Rational>&);
template NormBounds recentred_norm_bounds<double>(const BasicPointSet<double>&, const Tolerance&);
template NormBounds recentred_norm_bounds<Rational>(const BasicPointSet<Rational>&, const Tolerance&);
template PipelineReport general_bound_pipeline<double>(const BasicPointSet<double>&, const Tolerance&, bool);
template PipelineReport general_bound_pipeline<Rational>(const BasicPointSet<Rational>&, const Tolerance&, bool);

}  // namespace aeq
