#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "homdist/complex.hpp"
#include "homdist/persistence.hpp"

namespace homdist {

/**
 * Merge tree of a sublevel-set filtration, reduced to its critical nodes.
 *
 * Leaves are component births, internal nodes are merges. Heights strictly
 * increase towards the root; the root carries an implicit ray to +infinity.
 * Nodes with exactly one child are not allowed (they are not critical).
 */
class MergeTree {
 public:
  /// `parent[i] == -1` marks the root. `ids` are external labels used by the
  /// text format; defaults to 0..n-1. Throws InvalidInput on any violated
  /// invariant.
  MergeTree(std::vector<double> heights, std::vector<int> parent, std::vector<std::int64_t> ids = {});

  std::size_t size() const noexcept { return heights_.size(); }
  double height(int node) const { return heights_.at(static_cast<std::size_t>(node)); }
  int parent(int node) const { return parent_.at(static_cast<std::size_t>(node)); }
  std::int64_t id(int node) const { return ids_.at(static_cast<std::size_t>(node)); }
  const std::vector<int>& children(int node) const { return children_.at(static_cast<std::size_t>(node)); }
  int root() const noexcept { return root_; }
  bool is_leaf(int node) const { return children(node).empty(); }
  /// Leaves in increasing node index.
  const std::vector<int>& leaves() const noexcept { return leaves_; }

  const std::vector<double>& heights() const noexcept { return heights_; }
  const std::vector<int>& parents() const noexcept { return parent_; }
  const std::vector<std::int64_t>& ids() const noexcept { return ids_; }

  int depth(int node) const { return depth_.at(static_cast<std::size_t>(node)); }
  int lowest_common_ancestor(int a, int b) const;
  /// Lowest node on the path from `node` to the root whose outgoing edge (or
  /// the root ray) contains height h. Requires h >= height(node).
  int edge_at(int node, double h) const;

 private:
  std::vector<double> heights_;
  std::vector<int> parent_;
  std::vector<std::int64_t> ids_;
  std::vector<std::vector<int>> children_;
  std::vector<int> depth_;
  std::vector<int> leaves_;
  int root_ = -1;
};

/// Union-find sweep over vertices and edges in filtration order. Equal-height
/// merges are collapsed and non-critical nodes contracted. Throws InvalidInput
/// for an empty or disconnected complex.
MergeTree build_merge_tree(const FilteredComplex& fc);

/// Elder-rule readout: (lowest leaf, infinity) plus one point per branch that
/// dies at a merge.
PersistenceDiagram diagram_from_tree(const MergeTree& t);

/// A point of a merge tree: height `height` on the edge from `node` to its
/// parent (the root ray if `node` is the root).
struct TreePoint {
  int node = -1;
  double height = 0.0;
  friend bool operator==(const TreePoint&, const TreePoint&) = default;
};

/// Height at which the upward paths of two points meet.
double merge_height(const MergeTree& t, const TreePoint& p, const TreePoint& q);

/// Shift maps of an eps-interleaving, recorded on leaves: alpha[i] is the
/// image in t2 of t1.leaves()[i], beta[j] the image in t1 of t2.leaves()[j].
/// Images of all other points follow by moving up the tree.
struct InterleavingWitness {
  std::vector<TreePoint> alpha;
  std::vector<TreePoint> beta;
};

/// Decides whether an eps-interleaving exists, returning the shift maps if so.
/// Throws InvalidInput when eps is negative or not finite.
std::optional<InterleavingWitness> find_interleaving(const MergeTree& t1, const MergeTree& t2, double eps);

inline bool check_interleaving(const MergeTree& t1, const MergeTree& t2, double eps) {
  return find_interleaving(t1, t2, eps).has_value();
}

inline constexpr std::size_t kInterleavingExactNodeLimit = 12;

struct InterleavingDistance {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = true;

  /// The distance when exact; the certified upper bound otherwise.
  double value() const noexcept { return upper; }
};

/**
 * Interleaving distance. Exact (lower == upper) when both trees have at most
 * kInterleavingExactNodeLimit nodes; the optimum is one of the differences or
 * half-differences of node heights across both trees.
 *
 * Above the limit the result is a bracket: the degree-0 bottleneck distance
 * from below and the smallest eps found by a budgeted search from above.
 */
InterleavingDistance interleaving_distance(const MergeTree& t1, const MergeTree& t2);

/// Candidate values that contain the interleaving distance, sorted, unique.
std::vector<double> interleaving_candidates(const MergeTree& t1, const MergeTree& t2);

}  // namespace homdist
