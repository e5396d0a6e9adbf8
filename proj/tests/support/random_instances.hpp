#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "homdist/complex.hpp"
#include "homdist/persistence.hpp"

namespace homdist::testutil {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Connected complex: random spanning tree, extra edges, and (dim >= 2)
/// random triangles on existing edges' endpoints.
inline ComplexPtr random_connected_complex(Rng& rng, int vertices, int max_dim = 2) {
  std::vector<Simplex> simplices;
  for (int v = 0; v < vertices; ++v) simplices.push_back({v});
  for (int v = 1; v < vertices; ++v) simplices.push_back({uniform_int(rng, 0, v - 1), v});
  const int extra_edges = uniform_int(rng, 0, vertices);
  for (int i = 0; i < extra_edges && vertices > 1; ++i) {
    int a = uniform_int(rng, 0, vertices - 1), b = uniform_int(rng, 0, vertices - 1);
    if (a != b) simplices.push_back({std::min(a, b), std::max(a, b)});
  }
  if (max_dim >= 2 && vertices >= 3) {
    const int triangles = uniform_int(rng, 0, vertices);
    for (int i = 0; i < triangles; ++i) {
      std::set<int> t;
      while (t.size() < 3) t.insert(uniform_int(rng, 0, vertices - 1));
      simplices.emplace_back(t.begin(), t.end());
    }
  }
  if (max_dim >= 3 && vertices >= 4 && uniform_int(rng, 0, 2) == 0) {
    std::set<int> t;
    while (t.size() < 4) t.insert(uniform_int(rng, 0, vertices - 1));
    simplices.emplace_back(t.begin(), t.end());
  }
  return share(SimplicialComplex::from_simplices(simplices));
}

/// Values on a quarter-integer grid in [-range, range]; exact under shifts by
/// dyadic constants, with frequent ties.
inline VertexFunction random_function(Rng& rng, int vertices, int range = 4) {
  std::vector<double> values;
  for (int v = 0; v < vertices; ++v) values.push_back(uniform_int(rng, -4 * range, 4 * range) / 4.0);
  return VertexFunction(std::move(values));
}

inline VertexFunction random_integer_function(Rng& rng, int vertices, int lo, int hi) {
  std::vector<double> values;
  for (int v = 0; v < vertices; ++v) values.push_back(uniform_int(rng, lo, hi));
  return VertexFunction(std::move(values));
}

/// Random diagram with up to `max_points` points, a few of them essential.
inline PersistenceDiagram random_diagram(Rng& rng, int max_points, bool allow_essential = true) {
  PersistenceDiagram d;
  const int n = uniform_int(rng, 0, max_points);
  for (int i = 0; i < n; ++i) {
    const double b = uniform_int(rng, 0, 20) / 2.0;
    if (allow_essential && uniform_int(rng, 0, 5) == 0) {
      d.points.push_back({b, kInfinity});
    } else {
      d.points.push_back({b, b + uniform_int(rng, 1, 16) / 2.0});
    }
  }
  return d;
}

}  // namespace homdist::testutil
