#include "aeq/constructions.hpp"

#include <cmath>
#include <numbers>

#include "aeq/geometry.hpp"

namespace aeq {

ConstructionKind parse_construction_kind(const std::string& name) {
  if (name == "simplex") return ConstructionKind::simplex;
  if (name == "two-simplices" || name == "two_simplices") return ConstructionKind::two_simplices;
  if (name == "rosenfeld") return ConstructionKind::rosenfeld;
  throw InputError("unknown construction kind '" + name + "'");
}

std::string to_string(ConstructionKind kind) {
  switch (kind) {
    case ConstructionKind::simplex: return "simplex";
    case ConstructionKind::two_simplices: return "two-simplices";
    case ConstructionKind::rosenfeld: return "rosenfeld";
  }
  return "unknown";
}

PointSet construct_simplex(std::size_t k, std::size_t d) {
  if (d == 0) throw InputError("dimension must be positive");
  if (k == 0) throw InputError("a simplex needs at least one vertex");
  if (k > d + 1) {
    throw InputError("no unit simplex with " + std::to_string(k) + " vertices fits in R^" + std::to_string(d));
  }
  // Vertex i sits above the centroid of vertices 0..i-1 along axis i-1.
  std::vector<std::vector<double>> pts(k, std::vector<double>(d, 0.0));
  std::vector<double> centroid(d, 0.0);
  for (std::size_t i = 1; i < k; ++i) {
    for (std::size_t c = 0; c < d; ++c) {
      double acc = 0.0;
      for (std::size_t j = 0; j < i; ++j) acc += pts[j][c];
      centroid[c] = acc / static_cast<double>(i);
    }
    const double prev_r2 = static_cast<double>(i - 1) / (2.0 * static_cast<double>(i));
    pts[i] = centroid;
    pts[i][i - 1] = std::sqrt(1.0 - prev_r2);
  }
  return recenter_to_barycenter(PointSet(d, std::move(pts)));
}

bool two_simplices_degenerate(std::size_t d) { return d == 1; }

PointSet construct_two_simplices(std::size_t d) {
  const PointSet first = construct_simplex(d + 1, d);
  // In R^1 every reflection or rotation maps the segment onto itself.
  if (two_simplices_degenerate(d)) return first;
  const std::size_t n = first.size();
  std::vector<double> coords(first.coords().begin(), first.coords().end());
  std::vector<double> second(first.coords().size());
  for (std::size_t i = 0; i < second.size(); ++i) second[i] = -coords[i];

  auto collides = [&](const std::vector<double>& other) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        std::span<const double> a(coords.data() + i * d, d), b(other.data() + j * d, d);
        if (squared_distance(a, b) <= 1e-9) return true;
      }
    }
    return false;
  };
  if (d >= 2 && collides(second)) {
    const double angle = std::numbers::pi / static_cast<double>(d + 1);
    const double c = std::cos(angle), s = std::sin(angle);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = second[i * d], y = second[i * d + 1];
      second[i * d] = c * x - s * y;
      second[i * d + 1] = s * x + c * y;
    }
  }
  coords.insert(coords.end(), second.begin(), second.end());
  return PointSet(d, 2 * n, std::move(coords));
}

PointSet construct_rosenfeld(std::size_t d) {
  if (d < 2) throw InputError("the radius 1/sqrt(2) configuration needs d >= 2");
  const PointSet base = construct_simplex(d, d - 1);
  const double h = std::sqrt(1.0 / (2.0 * static_cast<double>(d)));
  std::vector<std::vector<double>> pts;
  pts.reserve(2 * d);
  for (double sign : {1.0, -1.0}) {
    for (std::size_t i = 0; i < base.size(); ++i) {
      std::vector<double> p(base[i].begin(), base[i].end());
      p.push_back(sign * h);
      pts.push_back(std::move(p));
    }
  }
  return PointSet(d, std::move(pts));
}

PointSet lift_to_halfsphere(const PointSet& s, double r, double dist_tol) {
  const double half = 0.5;
  if (!(r >= 0.0)) throw InputError("radius must be nonnegative");
  if (r * r > half + dist_tol) throw InputError("lifting needs r <= 1/sqrt(2)");
  const std::vector<double> origin(s.dim(), 0.0);
  if (max_sphere_defect<double>(s, origin, r * r) > dist_tol) {
    throw PreconditionError("points do not lie on the origin-centred sphere of radius r");
  }
  const double h = std::sqrt(std::max(0.0, half - r * r));
  const std::size_t d = s.dim();
  std::vector<double> coords;
  coords.reserve(s.size() * (d + 1));
  for (std::size_t i = 0; i < s.size(); ++i) {
    coords.insert(coords.end(), s[i].begin(), s[i].end());
    coords.push_back(h);
  }
  return PointSet(d + 1, s.size(), std::move(coords));
}

Construction construct(ConstructionKind kind, std::size_t dim, std::size_t k, bool lift) {
  Construction out{PointSet(1, {{0.0}}), {}};
  double radius = 0.0;
  switch (kind) {
    case ConstructionKind::simplex: {
      const std::size_t vertices = k == 0 ? dim + 1 : k;
      out.points = construct_simplex(vertices, dim);
      radius = std::sqrt(static_cast<double>(vertices - 1) / (2.0 * static_cast<double>(vertices)));
      break;
    }
    case ConstructionKind::two_simplices:
      out.points = construct_two_simplices(dim);
      radius = std::sqrt(static_cast<double>(dim) / (2.0 * static_cast<double>(dim + 1)));
      if (two_simplices_degenerate(dim)) {
        out.warnings.push_back(
            "d = 1: the antipodal segment coincides with the original, so only its 2 distinct points are emitted "
            "(2d + 2 = 4 is not realizable by this recipe in R^1)");
      }
      break;
    case ConstructionKind::rosenfeld:
      out.points = construct_rosenfeld(dim);
      radius = std::sqrt(0.5);
      break;
  }
  if (lift) out.points = lift_to_halfsphere(out.points, radius);
  return out;
}

}  // namespace aeq
