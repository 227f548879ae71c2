#pragma once

// Two-distance almost-equidistant sets as triangle-free graphs, and the
// rank of A - lambda_2 I over triangle-free graphs.

#include <cstddef>
#include <istream>
#include <optional>
#include <utility>
#include <vector>

#include "aeq/kernels.hpp"
#include "aeq/point_set.hpp"

namespace aeq {

class Graph {
 public:
  explicit Graph(std::size_t n = 0) : n_(n) {}
  // Duplicate edges are merged; self-loops and out-of-range ends throw InputError.
  Graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t size() const { return n_; }
  // Sorted, each pair (u, v) with u < v.
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  void add_edge(std::size_t u, std::size_t v);
  bool adjacent(std::size_t u, std::size_t v) const;

 private:
  std::size_t n_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

Graph complement(const Graph& g);
kernels::BitMatrix adjacency_bits(const Graph& g);

struct TriangleCheck {
  bool triangle_free = true;
  std::optional<kernels::Triangle> witness;
  explicit operator bool() const { return triangle_free; }
};

TriangleCheck is_triangle_free(const Graph& g);

// Edges at the unit-distance pairs (squared distance within dist_tol of 1).
Graph unit_distance_graph(const PointSet& s, const Tolerance& tol = {});

// Edge {i, j} iff |v_i - v_j| is a. Requires an almost-equidistant set whose
// distances are all 1 or a, with a > 1. The result equals U / (a^2 - 1) and
// is checked to be triangle-free.
Graph two_distance_to_graph(const PointSet& s, double a, const Tolerance& tol = {});

struct GraphRankRecord {
  Graph graph;
  double lambda2 = 0;
  std::size_t multiplicity = 1;
  std::size_t rank = 0;  // n - multiplicity
  bool lambda2_positive = false;
  std::size_t numeric_multiplicity = 1;    // eigenvalues within eig_tol of lambda2
  std::optional<std::size_t> exact_multiplicity;  // from the factored characteristic polynomial
};

// lambda2 is the second largest adjacency eigenvalue counted with
// multiplicity. With exact, multiplicity comes from the square-free
// decomposition of det(xI - A) over Q.
GraphRankRecord lambda2_rank(const Graph& g, const Tolerance& tol = {}, bool exact = false);

// Multiplicity of the real root of det(xI - A) nearest to estimate, isolated by
// Sturm sequences.
std::size_t exact_eigenvalue_multiplicity(const Graph& g, double estimate);

struct MinRankResult {
  std::size_t n = 0;
  std::optional<std::size_t> min_rank;  // nullopt when no graph has lambda2 > 0
  std::vector<std::size_t> argmin_indices;
  std::vector<GraphRankRecord> argmin;
  std::vector<GraphRankRecord> records;  // every graph of the stream, in order
  std::size_t skipped = 0;               // graphs with lambda2 <= eig_tol
};

// Every graph must have n vertices and be triangle-free; the offender's
// stream index is named in the InputError otherwise.
MinRankResult min_rank_scan(std::size_t n, const std::vector<Graph>& graphs, const Tolerance& tol = {},
                            bool exact = false);

// One graph per line: "n m u1 v1 ... um vm". Blank lines and lines starting
// with '#' are ignored.
std::vector<Graph> read_graphs(std::istream& in);

}  // namespace aeq
