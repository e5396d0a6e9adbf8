#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "homdist/complex.hpp"

namespace homdist {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct DiagramPoint {
  double birth = 0.0;
  double death = kInfinity;

  bool essential() const noexcept { return death == kInfinity; }
  double persistence() const noexcept { return death - birth; }

  friend auto operator<=>(const DiagramPoint&, const DiagramPoint&) = default;
};

/// Degree-k persistence diagram: a multiset of (birth, death) points with
/// birth < death. Point order carries no meaning; compare with `same_multiset`.
struct PersistenceDiagram {
  int degree = 0;
  std::vector<DiagramPoint> points;

  std::size_t essential_count() const;
  /// Points sorted by (birth, death).
  PersistenceDiagram sorted() const;
};

bool same_multiset(const PersistenceDiagram& a, const PersistenceDiagram& b);

/// Raw output of the boundary-matrix reduction, kept for consistency checks.
struct PersistencePairing {
  /// Filtration order: simplex indices sorted by (value, dimension, lex).
  std::vector<std::size_t> order;
  /// (birth simplex, death simplex), including zero-persistence pairs.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  /// Simplices that create an essential class.
  std::vector<std::size_t> essential;
};

/// Standard left-to-right reduction over the two-element field.
PersistencePairing compute_pairing(const FilteredComplex& fc);

/// Diagrams for degrees 0..max_degree. Zero-persistence pairs are dropped.
/// Throws InvalidInput if max_degree is negative or above the dimension cap.
std::vector<PersistenceDiagram> compute_diagrams(const FilteredComplex& fc, int max_degree);

/// Degree-0 diagram from a union-find sweep over vertices and edges with the
/// elder rule. Independent of the matrix reduction.
PersistenceDiagram h0_diagram_unionfind(const FilteredComplex& fc);

/// Every point (b, d) becomes (b + c, d + c); infinite deaths stay infinite.
PersistenceDiagram shift_diagram(const PersistenceDiagram& d, double c);

}  // namespace homdist
