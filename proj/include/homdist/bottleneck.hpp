#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "homdist/complex.hpp"
#include "homdist/persistence.hpp"

namespace homdist {

inline constexpr int kDiagonal = -1;

/// Pairs of (index in first diagram, index in second diagram); kDiagonal on
/// either side means the point is matched to the diagonal.
struct Matching {
  std::vector<std::pair<int, int>> pairs;
  double cost = 0.0;
};

struct BottleneckResult {
  double distance = 0.0;
  Matching matching;
};

/// Cost of matching two points: L∞ in the plane. Two essential points cost
/// |b1 - b2|; an essential point against a finite one costs infinity.
double point_cost(const DiagramPoint& p, const DiagramPoint& q);
/// Cost of sending a point to the diagonal: (death - birth) / 2.
double diagonal_cost(const DiagramPoint& p);

/// Exact bottleneck distance with an optimal matching. Returns kInfinity when
/// the diagrams carry different numbers of essential points.
/// Throws InvalidInput if the degrees differ.
BottleneckResult bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b);

/// Exhaustive enumeration over all partial matchings. At most 8 points per diagram.
double bottleneck_bruteforce(const PersistenceDiagram& a, const PersistenceDiagram& b);

/// max_v |f(v) - g(v)|.
double linf_distance(const VertexFunction& f, const VertexFunction& g);

/// Vertex bijections K1 -> K2 that map the simplex set onto the simplex set.
std::vector<std::vector<int>> simplicial_isomorphisms(const SimplicialComplex& k1,
                                                      const SimplicialComplex& k2);

/**
 * Upper bound on the natural pseudo-distance: the minimum over simplicial
 * isomorphisms h: K1 -> K2 of max_v |f(v) - g(h(v))|, kInfinity if there is
 * none. This is an upper bound only: it ranges over finitely many
 * homeomorphisms.
 *
 * Without `isomorphisms`, all isomorphisms are enumerated, which requires at
 * most 9 vertices (throws InvalidInput otherwise).
 */
double natural_pseudo_upper(const SimplicialComplex& k1, const VertexFunction& f,
                            const SimplicialComplex& k2, const VertexFunction& g,
                            const std::optional<std::vector<std::vector<int>>>& isomorphisms = {});

}  // namespace homdist
