#include "aeq/search.hpp"

#include <omp.h>

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <utility>

#include "aeq/bounds.hpp"
#include "aeq/constructions.hpp"
#include "aeq/geometry.hpp"
#include "aeq/kernels.hpp"

namespace aeq {

void SearchConfig::validate() const {
  if (dim == 0) throw InputError("search dimension must be positive");
  if (target_n == 0) throw InputError("target_n must be positive");
  if (restarts == 0) throw InputError("restarts must be at least 1");
  if (!(penalty_tol > 0.0)) throw InputError("penalty_tol must be positive");
  if (!(step_schedule.start > 0.0) || !(step_schedule.end > 0.0)) throw InputError("step sizes must be positive");
  if (sphere_radius && !(*sphere_radius > 0.0)) throw InputError("sphere radius must be positive");
  if (!(min_separation >= 0.0)) throw InputError("min_separation must be nonnegative");
  if (!(softmin_temperature >= 0.0)) throw InputError("softmin temperature must be nonnegative");
}

double triple_penalty(const PointSet& s) {
  return kernels::serial::triple_penalty(s.coords(), s.size(), s.dim(), false).value;
}

Rational triple_penalty(const ExactPointSet& s) {
  const std::size_t n = s.size();
  Rational total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Rational eij = squared_distance<Rational>(s[i], s[j]) - 1;
      for (std::size_t k = j + 1; k < n; ++k) {
        const Rational eik = squared_distance<Rational>(s[i], s[k]) - 1;
        const Rational ejk = squared_distance<Rational>(s[j], s[k]) - 1;
        total += std::min({Rational(eij * eij), Rational(eik * eik), Rational(ejk * ejk)});
      }
    }
  }
  return total;
}

namespace {

// SplitMix64 finaliser: decorrelates per-restart seeds.
std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Box-Muller over mt19937_64 so the stream is identical on every platform
// (std::normal_distribution is implementation-defined).
class Gaussian {
 public:
  explicit Gaussian(std::uint64_t seed) : engine_(seed) {}
  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform_open();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct Eval {
  double value = 0;
  std::vector<double> grad;
};

void add_pair_grad(std::vector<double>& g, std::span<const double> x, std::size_t dim, std::size_t a, std::size_t b,
                   double scale) {
  for (std::size_t c = 0; c < dim; ++c) {
    const double v = scale * (x[a * dim + c] - x[b * dim + c]);
    g[a * dim + c] += v;
    g[b * dim + c] -= v;
  }
}

double pair_d2(std::span<const double> x, std::size_t dim, std::size_t a, std::size_t b) {
  double acc = 0;
  for (std::size_t c = 0; c < dim; ++c) {
    const double diff = x[a * dim + c] - x[b * dim + c];
    acc += diff * diff;
  }
  return acc;
}

Eval softmin_triples(std::span<const double> x, std::size_t n, std::size_t dim, double temperature, bool with_grad) {
  Eval out;
  out.value = kernels::serial::triple_penalty(x, n, dim, false).value;
  if (!with_grad) return out;
  out.grad.assign(n * dim, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double eij = pair_d2(x, dim, i, j) - 1.0;
      for (std::size_t k = j + 1; k < n; ++k) {
        const double eik = pair_d2(x, dim, i, k) - 1.0;
        const double ejk = pair_d2(x, dim, j, k) - 1.0;
        const double q[3] = {eij * eij, eik * eik, ejk * ejk};
        const double m = std::min({q[0], q[1], q[2]});
        double w[3], total = 0;
        for (int t = 0; t < 3; ++t) total += (w[t] = std::exp(-(q[t] - m) / temperature));
        add_pair_grad(out.grad, x, dim, i, j, 4.0 * eij * w[0] / total);
        add_pair_grad(out.grad, x, dim, i, k, 4.0 * eik * w[1] / total);
        add_pair_grad(out.grad, x, dim, j, k, 4.0 * ejk * w[2] / total);
      }
    }
  }
  return out;
}

Eval evaluate(std::span<const double> x, std::size_t n, const SearchConfig& cfg, bool with_grad) {
  const std::size_t dim = cfg.dim;
  Eval out;
  if (cfg.softmin_temperature > 0.0) {
    out = softmin_triples(x, n, dim, cfg.softmin_temperature, with_grad);
  } else {
    auto k = kernels::serial::triple_penalty(x, n, dim, with_grad);
    out.value = k.value;
    out.grad = std::move(k.gradient);
  }
  if (with_grad && out.grad.empty()) out.grad.assign(n * dim, 0.0);
  const double sep2 = cfg.min_separation * cfg.min_separation;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double d2 = pair_d2(x, dim, a, b);
      if (cfg.diameter_le_1 && d2 > 1.0) {
        out.value += (d2 - 1.0) * (d2 - 1.0);
        if (with_grad) add_pair_grad(out.grad, x, dim, a, b, 4.0 * (d2 - 1.0));
      }
      if (d2 < sep2) {
        out.value += (sep2 - d2) * (sep2 - d2);
        if (with_grad) add_pair_grad(out.grad, x, dim, a, b, -4.0 * (sep2 - d2));
      }
    }
  }
  if (cfg.sphere_radius) {
    const double r2 = *cfg.sphere_radius * *cfg.sphere_radius;
    for (std::size_t a = 0; a < n; ++a) {
      double norm2 = 0;
      for (std::size_t c = 0; c < dim; ++c) norm2 += x[a * dim + c] * x[a * dim + c];
      const double e = norm2 - r2;
      out.value += e * e;
      if (with_grad) {
        for (std::size_t c = 0; c < dim; ++c) out.grad[a * dim + c] += 4.0 * e * x[a * dim + c];
      }
    }
  }
  return out;
}

// Residuals whose squares vanish exactly at a feasible configuration: the
// active pair of every triple plus the active hinge / sphere terms.
void residuals(std::span<const double> x, std::size_t n, const SearchConfig& cfg, Eigen::VectorXd& r,
               Eigen::MatrixXd& jac) {
  const std::size_t dim = cfg.dim;
  std::set<std::pair<std::size_t, std::size_t>> active;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double eij = std::abs(pair_d2(x, dim, i, j) - 1.0);
      for (std::size_t k = j + 1; k < n; ++k) {
        const double eik = std::abs(pair_d2(x, dim, i, k) - 1.0);
        const double ejk = std::abs(pair_d2(x, dim, j, k) - 1.0);
        if (eij <= eik && eij <= ejk) active.emplace(i, j);
        else if (eik <= ejk) active.emplace(i, k);
        else active.emplace(j, k);
      }
    }
  }
  struct Row {
    std::size_t a, b;  // b == n marks a single-point (sphere) row
    double value, scale;
  };
  std::vector<Row> rows;
  for (auto [a, b] : active) rows.push_back({a, b, pair_d2(x, dim, a, b) - 1.0, 2.0});
  const double sep2 = cfg.min_separation * cfg.min_separation;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double d2 = pair_d2(x, dim, a, b);
      if (cfg.diameter_le_1 && d2 > 1.0 && !active.count({a, b})) rows.push_back({a, b, d2 - 1.0, 2.0});
      if (d2 < sep2) rows.push_back({a, b, sep2 - d2, -2.0});
    }
  }
  if (cfg.sphere_radius) {
    const double r2 = *cfg.sphere_radius * *cfg.sphere_radius;
    for (std::size_t a = 0; a < n; ++a) {
      double norm2 = 0;
      for (std::size_t c = 0; c < dim; ++c) norm2 += x[a * dim + c] * x[a * dim + c];
      rows.push_back({a, n, norm2 - r2, 2.0});
    }
  }
  const auto m = static_cast<Eigen::Index>(rows.size());
  r.resize(m);
  jac.setZero(m, static_cast<Eigen::Index>(n * dim));
  for (Eigen::Index row = 0; row < m; ++row) {
    const auto& rw = rows[static_cast<std::size_t>(row)];
    r(row) = rw.value;
    for (std::size_t c = 0; c < dim; ++c) {
      const auto ca = static_cast<Eigen::Index>(rw.a * dim + c);
      if (rw.b == n) {
        jac(row, ca) = rw.scale * x[rw.a * dim + c];
      } else {
        const double diff = x[rw.a * dim + c] - x[rw.b * dim + c];
        jac(row, ca) = rw.scale * diff;
        jac(row, static_cast<Eigen::Index>(rw.b * dim + c)) = -rw.scale * diff;
      }
    }
  }
}

// Levenberg-Marquardt on the active residuals, accepting steps that lower
// the true objective.
double polish(std::vector<double>& x, std::size_t n, const SearchConfig& cfg, double current) {
  double mu = 1e-3;
  Eigen::VectorXd r;
  Eigen::MatrixXd jac;
  const auto N = static_cast<Eigen::Index>(x.size());
  for (int it = 0; it < 60 && current > cfg.penalty_tol * 1e-6; ++it) {
    residuals(x, n, cfg, r, jac);
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * r;
    bool accepted = false;
    for (int attempt = 0; attempt < 8 && !accepted; ++attempt) {
      Eigen::MatrixXd lhs = jtj;
      lhs.diagonal().array() += mu * (1.0 + jtj.diagonal().array());
      const Eigen::VectorXd step = lhs.ldlt().solve(-jtr);
      std::vector<double> trial(x);
      for (Eigen::Index i = 0; i < N; ++i) trial[static_cast<std::size_t>(i)] += step(i);
      const double value = evaluate(trial, n, cfg, false).value;
      if (std::isfinite(value) && value < current) {
        x = std::move(trial);
        current = value;
        mu = std::max(mu * 0.3, 1e-12);
        accepted = true;
      } else {
        mu *= 10.0;
      }
    }
    if (!accepted) break;
  }
  return current;
}

enum class SeedKind { gaussian, two_simplices, rosenfeld, simplex };

std::vector<double> initial_points(const SearchConfig& cfg, std::size_t restart, Gaussian& rng) {
  const std::size_t n = cfg.target_n, dim = cfg.dim;
  std::vector<double> x(n * dim, 0.0);
  const double sigma = std::sqrt(1.0 / (2.0 * static_cast<double>(dim)));
  for (auto& v : x) v = sigma * rng();
  if (restart % 2 == 1) return x;

  // Even restarts: a construction, padded with the Gaussian points above.
  static constexpr SeedKind cycle[] = {SeedKind::two_simplices, SeedKind::rosenfeld, SeedKind::simplex};
  const SeedKind kind = cycle[(restart / 2) % 3];
  std::optional<PointSet> seed;
  if (kind == SeedKind::two_simplices && dim >= 2) seed = construct_two_simplices(dim);
  if (kind == SeedKind::rosenfeld && dim >= 2) seed = construct_rosenfeld(dim);
  if (!seed) seed = construct_simplex(dim + 1, dim);
  const std::size_t take = std::min(n, seed->size());
  std::copy_n(seed->coords().begin(), take * dim, x.begin());
  if (restart != 0) {
    for (std::size_t i = 0; i < take * dim; ++i) x[i] += 0.05 * rng();
  }
  return x;
}

struct RestartOutcome {
  std::vector<double> x;
  double value = 0;
  std::size_t iterations = 0;
};

RestartOutcome run_restart(const SearchConfig& cfg, std::size_t restart) {
  Gaussian rng(mix_seed(cfg.seed ^ mix_seed(restart + 1)));
  const std::size_t n = cfg.target_n;
  RestartOutcome out;
  out.x = initial_points(cfg, restart, rng);
  const double ratio = cfg.step_schedule.end / cfg.step_schedule.start;
  const double denom = cfg.max_iters > 1 ? static_cast<double>(cfg.max_iters - 1) : 1.0;

  std::size_t t = 0;
  double value = evaluate(out.x, n, cfg, false).value;
  for (; t < cfg.max_iters && value > cfg.penalty_tol; ++t) {
    auto ev = evaluate(out.x, n, cfg, true);
    value = ev.value;
    if (value <= cfg.penalty_tol) break;
    if (cfg.polish && value < 5e-2 && t % 50 == 0) {
      std::vector<double> trial(out.x);
      const double polished = polish(trial, n, cfg, value);
      if (polished < value) {
        out.x = std::move(trial);
        value = polished;
        continue;
      }
    }
    double gnorm = 0;
    for (double g : ev.grad) gnorm += g * g;
    gnorm = std::sqrt(gnorm);
    const double eta = cfg.step_schedule.start * std::pow(ratio, static_cast<double>(t) / denom);
    const double scale = eta / std::max(1.0, gnorm);
    for (std::size_t i = 0; i < out.x.size(); ++i) out.x[i] -= scale * ev.grad[i];
  }
  value = evaluate(out.x, n, cfg, false).value;
  if (cfg.polish && value > cfg.penalty_tol) value = polish(out.x, n, cfg, value);
  out.value = value;
  out.iterations = t;
  return out;
}

bool separated(const PointSet& s, double min_separation) {
  const double sep2 = min_separation * min_separation;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (squared_distance<double>(s[i], s[j]) < sep2 * (1.0 - 1e-9)) return false;
    }
  }
  return true;
}

}  // namespace

double search_objective(const PointSet& s, const SearchConfig& cfg) {
  if (s.dim() != cfg.dim) throw InputError("point set dimension does not match the search config");
  return evaluate(s.coords(), s.size(), cfg, false).value;
}

SearchResult optimize(const SearchConfig& cfg) {
  cfg.validate();
  constexpr std::size_t batch = 8;
  SearchResult result;
  std::optional<RestartOutcome> best;

  for (std::size_t first = 0; first < cfg.restarts; first += batch) {
    const std::size_t count = std::min(batch, cfg.restarts - first);
    std::vector<RestartOutcome> outcomes(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(count); ++b) {
      outcomes[static_cast<std::size_t>(b)] = run_restart(cfg, first + static_cast<std::size_t>(b));
    }
    // Reduction in restart order: strict improvement only, so ties keep the
    // lower restart index.
    for (std::size_t b = 0; b < count; ++b) {
      result.iterations_used += outcomes[b].iterations;
      ++result.restarts_run;
      if (!best || outcomes[b].value < best->value) {
        best = std::move(outcomes[b]);
        result.best_restart = first + b;
      }
    }
    if (best->value <= cfg.penalty_tol) break;
  }

  result.best_points = PointSet(cfg.dim, cfg.target_n, best->x);
  result.best_penalty = best->value;
  Tolerance tol;
  tol.dist_tol = std::max(tol.dist_tol, 2.0 * std::sqrt(cfg.penalty_tol));
  result.feasible = result.best_penalty <= cfg.penalty_tol && separated(result.best_points, cfg.min_separation) &&
                    static_cast<bool>(is_almost_equidistant(result.best_points, tol));
  if (result.feasible) result.certificate = certify(result.best_points, tol);
  return result;
}

ProbeTable conjecture1_probe(std::size_t d, const SearchConfig& budget) {
  if (d == 0) throw InputError("dimension must be positive");
  ProbeTable table;
  table.dim = d;
  table.conjectured_bound = conjectured_diameter_bound(d);
  for (std::size_t n = d + 1; n <= table.conjectured_bound + 2; ++n) {
    SearchConfig cfg = budget;
    cfg.dim = d;
    cfg.target_n = n;
    cfg.diameter_le_1 = true;
    auto res = optimize(cfg);
    const bool feasible = res.feasible && squared_diameter(res.best_points) <= 1.0 + Tolerance{}.dist_tol;
    table.rows.push_back({n, feasible, res.best_penalty});
    if (feasible) {
      table.largest_feasible = n;
      table.feasible_results.push_back(std::move(res));
    }
  }
  return table;
}

}  // namespace aeq
