#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace homdist {

/// Raised when an input violates the contract of a constructor or operation.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sorted, duplicate-free list of vertex indices.
using Simplex = std::vector<int>;

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int v : s) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

inline constexpr int kDefaultMaxDimension = 3;

/**
 * Finite abstract simplicial complex on vertices [0, vertex_count).
 *
 * Simplices are stored face-closed and in canonical order: by dimension,
 * then lexicographically. The order is stable, so a simplex's index can be
 * used to attach per-simplex data (see FilteredComplex).
 */
class SimplicialComplex {
 public:
  /// Face closure of `simplices`. Each input list may be unsorted but must not
  /// repeat a vertex. Throws InvalidInput on negative indices, empty lists,
  /// repeated vertices, or simplices above `max_dimension`.
  static SimplicialComplex from_simplices(std::span<const Simplex> simplices,
                                          int max_dimension = kDefaultMaxDimension);

  int vertex_count() const noexcept { return vertex_count_; }
  int dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return simplices_.size(); }

  const std::vector<Simplex>& simplices() const noexcept { return simplices_; }
  const Simplex& simplex(std::size_t index) const { return simplices_.at(index); }

  bool contains(const Simplex& sorted) const { return index_.contains(sorted); }
  /// Index of a sorted simplex, or -1 if absent.
  std::ptrdiff_t index_of(const Simplex& sorted) const;

  /// True iff the vertex set (any order, duplicates allowed) spans a simplex.
  bool spans_simplex(std::span<const int> vertices) const;

  /// Simplices of dimension >= 1 whose largest vertex is `v`; used by
  /// vertex-by-vertex backtracking searches.
  const std::vector<std::size_t>& simplices_topped_by(int v) const { return topped_by_.at(v); }

  /// Number of connected components of the 1-skeleton.
  int component_count() const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.vertex_count_ == b.vertex_count_ && a.simplices_ == b.simplices_;
  }

 private:
  int vertex_count_ = 0;
  int dimension_ = -1;
  std::vector<Simplex> simplices_;
  std::unordered_map<Simplex, std::size_t, SimplexHash> index_;
  std::vector<std::vector<std::size_t>> topped_by_;
};

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

inline ComplexPtr share(SimplicialComplex k) {
  return std::make_shared<const SimplicialComplex>(std::move(k));
}

/// Real values on vertices. Rejects NaN and infinities.
class VertexFunction {
 public:
  VertexFunction() = default;
  explicit VertexFunction(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t v) const { return values_[v]; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// f + c, pointwise.
  VertexFunction shifted(double c) const;

  friend bool operator==(const VertexFunction&, const VertexFunction&) = default;

 private:
  std::vector<double> values_;
};

/**
 * A complex with a monotone filtration value on every simplex.
 *
 * Values are indexed like `complex().simplices()`. Construction checks
 * monotonicity (face value <= coface value) and finiteness.
 */
class FilteredComplex {
 public:
  FilteredComplex(ComplexPtr complex, std::vector<double> values);

  const SimplicialComplex& complex() const noexcept { return *complex_; }
  const ComplexPtr& complex_ptr() const noexcept { return complex_; }

  const std::vector<double>& values() const noexcept { return values_; }
  double value(std::size_t simplex_index) const { return values_.at(simplex_index); }
  /// Value of a simplex given by its vertices (any order, duplicates allowed).
  /// Throws InvalidInput if the vertices do not span a simplex.
  double value_of(std::span<const int> vertices) const;
  double vertex_value(int v) const { return values_[static_cast<std::size_t>(v)]; }

  /// Every value shifted by c.
  FilteredComplex shifted(double c) const;

 private:
  ComplexPtr complex_;
  std::vector<double> values_;
};

/// Lower-star extension: value(sigma) = max of f over the vertices of sigma.
FilteredComplex lower_star(ComplexPtr complex, const VertexFunction& f);

/// Vertex map between complexes; `is_simplicial` reports whether it induces a
/// simplicial map. Image indices are range-checked on construction.
class SimplicialMap {
 public:
  SimplicialMap(ComplexPtr source, ComplexPtr target, std::vector<int> vertex_image);

  static SimplicialMap identity(const ComplexPtr& k);
  static SimplicialMap constant(const ComplexPtr& source, const ComplexPtr& target, int vertex);

  const SimplicialComplex& source() const noexcept { return *source_; }
  const SimplicialComplex& target() const noexcept { return *target_; }
  const ComplexPtr& source_ptr() const noexcept { return source_; }
  const ComplexPtr& target_ptr() const noexcept { return target_; }
  const std::vector<int>& images() const noexcept { return image_; }
  int operator()(int v) const { return image_[static_cast<std::size_t>(v)]; }

  bool is_simplicial() const;

  /// (this ∘ first): apply `first`, then this map.
  SimplicialMap after(const SimplicialMap& first) const;

  bool same_endpoints(const SimplicialMap& other) const;

 private:
  ComplexPtr source_;
  ComplexPtr target_;
  std::vector<int> image_;
};

inline bool check_simplicial(const SimplicialMap& map) { return map.is_simplicial(); }

/// Contiguity of two maps with the same endpoints: phi(sigma) ∪ psi(sigma)
/// spans a target simplex for every source simplex sigma.
bool contiguous(const SimplicialMap& a, const SimplicialMap& b);

/// Nonempty sequence of maps sharing source and target.
using ContiguityChain = std::vector<SimplicialMap>;

/// True iff consecutive maps are contiguous. Throws InvalidInput on an empty
/// chain or maps with mismatched endpoints.
bool check_contiguity_chain(std::span<const SimplicialMap> chain);

/// Per source vertex v: the largest filtration value of `target_values` swept
/// by the straight-line homotopy along the chain, i.e. the max over the chain
/// of value({phi_i(v)}) and over consecutive pairs of value({phi_i(v), phi_{i+1}(v)}).
std::vector<double> homotopy_sup_control(std::span<const SimplicialMap> chain,
                                         const FilteredComplex& target_values);

}  // namespace homdist
