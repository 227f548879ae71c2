#include "aeq/tdgraph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "aeq/geometry.hpp"
#include "aeq/polynomial.hpp"
#include "aeq/spectral.hpp"

namespace aeq {

Graph::Graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) : n_(n) {
  for (auto [u, v] : edges) add_edge(u, v);
}

void Graph::add_edge(std::size_t u, std::size_t v) {
  if (u >= n_ || v >= n_) throw InputError("edge endpoint out of range");
  if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
  const std::pair<std::size_t, std::size_t> e{std::min(u, v), std::max(u, v)};
  const auto pos = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (pos == edges_.end() || *pos != e) edges_.insert(pos, e);
}

bool Graph::adjacent(std::size_t u, std::size_t v) const {
  return std::binary_search(edges_.begin(), edges_.end(), std::pair{std::min(u, v), std::max(u, v)});
}

Graph complement(const Graph& g) {
  Graph out(g.size());
  for (std::size_t u = 0; u < g.size(); ++u) {
    for (std::size_t v = u + 1; v < g.size(); ++v) {
      if (!g.adjacent(u, v)) out.add_edge(u, v);
    }
  }
  return out;
}

kernels::BitMatrix adjacency_bits(const Graph& g) {
  kernels::BitMatrix bits(g.size());
  for (auto [u, v] : g.edges()) bits.set(u, v);
  return bits;
}

TriangleCheck is_triangle_free(const Graph& g) {
  TriangleCheck out;
  out.witness = kernels::parallel::find_triangle(adjacency_bits(g));
  out.triangle_free = !out.witness;
  return out;
}

Graph unit_distance_graph(const PointSet& s, const Tolerance& tol) {
  Graph g(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (is_unit(squared_distance<double>(s[i], s[j]), tol)) g.add_edge(i, j);
    }
  }
  return g;
}

Graph two_distance_to_graph(const PointSet& s, double a, const Tolerance& tol) {
  if (!(a > 1.0)) throw InputError("the second distance a must exceed 1");
  if (auto check = is_almost_equidistant(s, tol); !check) {
    throw PreconditionError("point set is not almost-equidistant");
  }
  const double a2 = a * a;
  Graph g(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const double d2 = squared_distance<double>(s[i], s[j]);
      if (std::abs(d2 - a2) <= tol.dist_tol) {
        g.add_edge(i, j);
      } else if (!is_unit(d2, tol)) {
        throw PreconditionError("pair (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") realizes a third distance, sqrt(" + std::to_string(d2) + ")");
      }
    }
  }
  if (auto tri = is_triangle_free(g); !tri) {
    throw NumericalError("a-distance graph contains a triangle despite the almost-equidistant check");
  }
  return g;
}

std::size_t exact_eigenvalue_multiplicity(const Graph& g, double estimate) {
  SquareMatrix<Rational> a(g.size());
  for (auto [u, v] : g.edges()) a(u, v) = a(v, u) = 1;
  const auto factors = squarefree_decomposition(characteristic_polynomial(a));
  Polynomial radical({Rational(1)});
  for (const auto& f : factors) radical = radical * f;

  const Rational centre(estimate);
  Rational delta(1, 1 << 20);
  for (int attempt = 0; attempt < 200; ++attempt) {
    const std::size_t count = sturm_count(radical, centre - delta, centre + delta);
    if (count == 1) {
      std::size_t mult = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        mult += (i + 1) * sturm_count(factors[i], centre - delta, centre + delta);
      }
      return mult;
    }
    if (count > 1) delta /= 2;
    else delta *= 3;
  }
  throw NumericalError("could not isolate the eigenvalue near " + std::to_string(estimate));
}

GraphRankRecord lambda2_rank(const Graph& g, const Tolerance& tol, bool exact) {
  const std::size_t n = g.size();
  if (n < 2) throw InputError("lambda2 needs at least two vertices");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (auto [u, v] : g.edges()) {
    a(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) = 1.0;
    a(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(u)) = 1.0;
  }
  const auto spec = eigenvalues(a, tol.eig_tol);

  GraphRankRecord rec;
  rec.graph = g;
  rec.lambda2 = spec.values[1];
  rec.numeric_multiplicity = static_cast<std::size_t>(std::count_if(
      spec.values.begin(), spec.values.end(), [&](double x) { return std::abs(x - rec.lambda2) <= tol.eig_tol; }));
  rec.multiplicity = rec.numeric_multiplicity;
  if (exact) {
    rec.exact_multiplicity = exact_eigenvalue_multiplicity(g, rec.lambda2);
    rec.multiplicity = *rec.exact_multiplicity;
  }
  rec.rank = n - rec.multiplicity;
  rec.lambda2_positive = rec.lambda2 > tol.eig_tol;
  return rec;
}

MinRankResult min_rank_scan(std::size_t n, const std::vector<Graph>& graphs, const Tolerance& tol, bool exact) {
  MinRankResult out;
  out.n = n;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (graphs[i].size() != n) {
      throw InputError("graph " + std::to_string(i) + " has " + std::to_string(graphs[i].size()) +
                       " vertices, expected " + std::to_string(n));
    }
    if (auto tri = is_triangle_free(graphs[i]); !tri) {
      const auto& w = *tri.witness;
      throw InputError("graph " + std::to_string(i) + " is not triangle-free: triangle (" + std::to_string(w[0]) +
                       ", " + std::to_string(w[1]) + ", " + std::to_string(w[2]) + ")");
    }
  }

  out.records.resize(graphs.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(graphs.size()); ++i) {
    out.records[static_cast<std::size_t>(i)] = lambda2_rank(graphs[static_cast<std::size_t>(i)], tol, exact);
  }

  for (std::size_t i = 0; i < out.records.size(); ++i) {
    const auto& rec = out.records[i];
    if (!rec.lambda2_positive) {
      ++out.skipped;
      continue;
    }
    if (!out.min_rank || rec.rank < *out.min_rank) {
      out.min_rank = rec.rank;
      out.argmin.clear();
      out.argmin_indices.clear();
    }
    if (rec.rank == *out.min_rank) {
      out.argmin.push_back(rec);
      out.argmin_indices.push_back(i);
    }
  }
  return out;
}

std::vector<Graph> read_graphs(std::istream& in) {
  std::vector<Graph> graphs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long n = -1, m = -1;
    if (!(fields >> n >> m) || n < 0 || m < 0) {
      throw InputError("line " + std::to_string(line_no) + ": expected header 'n m'");
    }
    Graph g(static_cast<std::size_t>(n));
    for (long long e = 0; e < m; ++e) {
      long long u = -1, v = -1;
      if (!(fields >> u >> v) || u < 0 || v < 0) {
        throw InputError("line " + std::to_string(line_no) + ": expected " + std::to_string(m) + " edge pairs");
      }
      try {
        g.add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
      } catch (const InputError& err) {
        throw InputError("line " + std::to_string(line_no) + ": " + err.what());
      }
    }
    std::string extra;
    if (fields >> extra) throw InputError("line " + std::to_string(line_no) + ": trailing tokens after edge list");
    graphs.push_back(std::move(g));
  }
  return graphs;
}

}  // namespace aeq
