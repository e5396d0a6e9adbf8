#include "homdist/mergetree.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "homdist/bottleneck.hpp"

namespace homdist {

MergeTree::MergeTree(std::vector<double> heights, std::vector<int> parent, std::vector<std::int64_t> ids)
    : heights_(std::move(heights)), parent_(std::move(parent)), ids_(std::move(ids)) {
  const std::size_t n = heights_.size();
  if (n == 0) throw InvalidInput("merge tree has no nodes");
  if (parent_.size() != n) throw InvalidInput("merge tree parent list has the wrong length");
  if (ids_.empty()) {
    ids_.resize(n);
    std::iota(ids_.begin(), ids_.end(), 0);
  }
  if (ids_.size() != n) throw InvalidInput("merge tree id list has the wrong length");
  {
    auto sorted_ids = ids_;
    std::sort(sorted_ids.begin(), sorted_ids.end());
    if (std::adjacent_find(sorted_ids.begin(), sorted_ids.end()) != sorted_ids.end()) {
      throw InvalidInput("duplicate merge tree node id");
    }
  }

  children_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(heights_[i])) throw InvalidInput("merge tree heights must be finite");
    const int p = parent_[i];
    if (p == -1) {
      if (root_ != -1) throw InvalidInput("merge tree has more than one root");
      root_ = static_cast<int>(i);
      continue;
    }
    if (p < 0 || static_cast<std::size_t>(p) >= n) throw InvalidInput("merge tree parent out of range");
    if (!(heights_[i] < heights_[static_cast<std::size_t>(p)])) {
      throw InvalidInput("merge tree node " + std::to_string(ids_[i]) +
                         " is not strictly below its parent");
    }
    children_[static_cast<std::size_t>(p)].push_back(static_cast<int>(i));
  }
  if (root_ == -1) throw InvalidInput("merge tree has no root");
  // Strictly increasing heights rule out cycles, so every node reaches the root.

  depth_.assign(n, 0);
  std::vector<int> stack{root_};
  std::size_t visited = 0;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    ++visited;
    for (int c : children_[static_cast<std::size_t>(u)]) {
      depth_[static_cast<std::size_t>(c)] = depth_[static_cast<std::size_t>(u)] + 1;
      stack.push_back(c);
    }
  }
  if (visited != n) throw InvalidInput("merge tree is not connected");

  for (std::size_t i = 0; i < n; ++i) {
    if (children_[i].size() == 1) {
      throw InvalidInput("merge tree node " + std::to_string(ids_[i]) + " has a single child");
    }
    if (children_[i].empty()) leaves_.push_back(static_cast<int>(i));
  }
}

int MergeTree::lowest_common_ancestor(int a, int b) const {
  while (depth(a) > depth(b)) a = parent(a);
  while (depth(b) > depth(a)) b = parent(b);
  while (a != b) {
    a = parent(a);
    b = parent(b);
  }
  return a;
}

int MergeTree::edge_at(int node, double h) const {
  while (parent(node) != -1 && height(parent(node)) <= h) node = parent(node);
  return node;
}

MergeTree build_merge_tree(const FilteredComplex& fc) {
  const auto& k = fc.complex();
  if (k.vertex_count() == 0) throw InvalidInput("merge tree of an empty complex");
  if (k.component_count() != 1) throw InvalidInput("merge trees require a connected complex");

  struct Event {
    double value;
    int dim;
    std::size_t index;
  };
  std::vector<Event> events;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const auto sz = k.simplex(i).size();
    if (sz <= 2) events.push_back({fc.value(i), static_cast<int>(sz) - 1, i});
  }
  std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.dim < b.dim;
  });

  std::vector<double> heights;
  std::vector<std::vector<int>> children;
  auto new_node = [&](double h) {
    heights.push_back(h);
    children.emplace_back();
    return static_cast<int>(heights.size()) - 1;
  };

  const auto nv = static_cast<std::size_t>(k.vertex_count());
  std::vector<int> uf(nv), top(nv, -1);
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](int v) {
    while (uf[v] != v) v = uf[v] = uf[uf[v]];
    return v;
  };

  for (const auto& e : events) {
    const auto& s = k.simplex(e.index);
    if (e.dim == 0) {
      top[static_cast<std::size_t>(s[0])] = new_node(e.value);
      continue;
    }
    const int a = find(s[0]), b = find(s[1]);
    if (a == b) continue;
    const int merged = new_node(e.value);
    std::vector<int> kids;
    for (int c : {top[a], top[b]}) {
      if (heights[c] == e.value) {
        // Same height: absorb instead of stacking two nodes at one level.
        kids.insert(kids.end(), children[c].begin(), children[c].end());
      } else {
        kids.push_back(c);
      }
    }
    int new_top = merged;
    if (kids.size() == 1) {
      new_top = kids.front();
    } else {
      children[merged] = std::move(kids);
    }
    uf[b] = a;
    top[a] = new_top;
  }

  const int root = top[find(0)];
  // Reachable nodes from the root, renumbered by (height, creation order).
  std::vector<int> order;
  std::vector<int> stack{root};
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    order.push_back(u);
    for (int c : children[u]) stack.push_back(c);
  }
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (heights[x] != heights[y]) return heights[x] < heights[y];
    return x < y;
  });
  std::vector<int> renumber(heights.size(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) renumber[order[i]] = static_cast<int>(i);

  std::vector<double> out_heights(order.size());
  std::vector<int> out_parent(order.size(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    out_heights[i] = heights[order[i]];
    for (int c : children[order[i]]) out_parent[renumber[c]] = static_cast<int>(i);
  }
  return MergeTree(std::move(out_heights), std::move(out_parent));
}

PersistenceDiagram diagram_from_tree(const MergeTree& t) {
  PersistenceDiagram out;
  out.degree = 0;
  std::function<double(int)> lowest = [&](int u) {
    const auto& kids = t.children(u);
    if (kids.empty()) return t.height(u);
    std::vector<double> births;
    births.reserve(kids.size());
    for (int c : kids) births.push_back(lowest(c));
    const auto elder = std::min_element(births.begin(), births.end()) - births.begin();
    for (std::size_t i = 0; i < births.size(); ++i) {
      if (static_cast<std::ptrdiff_t>(i) != elder) out.points.push_back({births[i], t.height(u)});
    }
    return births[static_cast<std::size_t>(elder)];
  };
  out.points.push_back({lowest(t.root()), kInfinity});
  std::sort(out.points.begin(), out.points.end());
  return out;
}

double merge_height(const MergeTree& t, const TreePoint& p, const TreePoint& q) {
  const int lca = t.lowest_common_ancestor(p.node, q.node);
  return std::max({p.height, q.height, t.height(lca)});
}

namespace {

enum class SearchOutcome { kFound, kNone, kBudgetExhausted };

/// Backtracking search for an eps-interleaving. A nonzero budget bounds the
/// number of partial assignments visited.
class InterleavingSearch {
 public:
  InterleavingSearch(const MergeTree& t1, const MergeTree& t2, double eps, std::size_t budget)
      : t1_(t1), t2_(t2), eps_(eps), budget_(budget) {}

  SearchOutcome run(InterleavingWitness& witness) {
    const auto& l1 = t1_.leaves();
    const auto& l2 = t2_.leaves();
    alpha_options_ = options(t1_, t2_);
    beta_options_ = options(t2_, t1_);
    for (const auto& o : alpha_options_) {
      if (o.empty()) return SearchOutcome::kNone;
    }
    for (const auto& o : beta_options_) {
      if (o.empty()) return SearchOutcome::kNone;
    }
    alpha_.assign(l1.size(), {});
    beta_.assign(l2.size(), {});
    const bool found = assign_alpha(0);
    if (found) {
      witness.alpha = alpha_;
      witness.beta = beta_;
      return SearchOutcome::kFound;
    }
    return exhausted_ ? SearchOutcome::kBudgetExhausted : SearchOutcome::kNone;
  }

 private:
  // For each leaf of `from`, the points of `to` at height (leaf height + eps).
  std::vector<std::vector<TreePoint>> options(const MergeTree& from, const MergeTree& to) const {
    std::vector<std::vector<TreePoint>> out;
    for (int leaf : from.leaves()) {
      const double h = from.height(leaf) + eps_;
      std::vector<TreePoint> pts;
      for (std::size_t c = 0; c < to.size(); ++c) {
        const int ci = static_cast<int>(c);
        if (to.height(ci) > h) continue;
        if (to.parent(ci) != -1 && to.height(to.parent(ci)) <= h) continue;
        pts.push_back({ci, h});
      }
      out.push_back(std::move(pts));
    }
    return out;
  }

  bool tick() {
    if (budget_ == 0) return true;
    if (visited_++ >= budget_) {
      exhausted_ = true;
      return false;
    }
    return true;
  }

  // alpha(leaf_i) and alpha(leaf_j) must meet no later than lca_1(i, j) + eps.
  static bool consistent(const MergeTree& from, const MergeTree& to, const std::vector<int>& leaves,
                         const std::vector<TreePoint>& images, std::size_t upto, double eps) {
    for (std::size_t j = 0; j < upto; ++j) {
      const double meet = from.height(from.lowest_common_ancestor(leaves[upto], leaves[j]));
      if (merge_height(to, images[upto], images[j]) > meet + eps) return false;
    }
    return true;
  }

  bool assign_alpha(std::size_t i) {
    if (i == alpha_.size()) return assign_beta(0);
    for (const auto& p : alpha_options_[i]) {
      if (!tick()) return false;
      alpha_[i] = p;
      if (!consistent(t1_, t2_, t1_.leaves(), alpha_, i, eps_)) continue;
      if (assign_alpha(i + 1)) return true;
      if (exhausted_) return false;
    }
    return false;
  }

  // Some leaf of `to` below `node`.
  static int leaf_below(const MergeTree& to, int node) {
    while (!to.is_leaf(node)) node = to.children(node).front();
    return node;
  }

  static std::size_t leaf_position(const MergeTree& t, int leaf) {
    const auto& l = t.leaves();
    return static_cast<std::size_t>(std::lower_bound(l.begin(), l.end(), leaf) - l.begin());
  }

  // Round trip through both maps lands 2 eps above the start.
  bool round_trip_ok(const MergeTree& home, const MergeTree& away, int leaf, const TreePoint& image,
                     const std::vector<TreePoint>& back) const {
    const int rep = leaf_below(away, image.node);
    const TreePoint& returned = back[leaf_position(away, rep)];
    const TreePoint start{leaf, home.height(leaf)};
    return merge_height(home, returned, start) <= home.height(leaf) + 2 * eps_;
  }

  bool assign_beta(std::size_t j) {
    const auto& l1 = t1_.leaves();
    const auto& l2 = t2_.leaves();
    if (j == beta_.size()) return true;
    for (const auto& p : beta_options_[j]) {
      if (!tick()) return false;
      beta_[j] = p;
      if (!consistent(t2_, t1_, l2, beta_, j, eps_)) continue;
      // alpha(beta(l2[j])) must equal l2[j] raised by 2 eps.
      if (!round_trip_ok(t2_, t1_, l2[j], p, alpha_)) continue;
      // beta(alpha(l1[i])) for the t1 leaves whose representative is l2[j].
      bool ok = true;
      for (std::size_t i = 0; i < l1.size() && ok; ++i) {
        if (leaf_below(t2_, alpha_[i].node) != l2[j]) continue;
        ok = round_trip_ok(t1_, t2_, l1[i], alpha_[i], beta_);
      }
      if (!ok) continue;
      if (assign_beta(j + 1)) return true;
      if (exhausted_) return false;
    }
    return false;
  }

  const MergeTree& t1_;
  const MergeTree& t2_;
  double eps_;
  std::size_t budget_;
  std::size_t visited_ = 0;
  bool exhausted_ = false;
  std::vector<std::vector<TreePoint>> alpha_options_, beta_options_;
  std::vector<TreePoint> alpha_, beta_;
};

SearchOutcome search(const MergeTree& t1, const MergeTree& t2, double eps, std::size_t budget,
                     InterleavingWitness& witness) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw InvalidInput("eps must be finite and non-negative");
  return InterleavingSearch(t1, t2, eps, budget).run(witness);
}

double min_leaf_height(const MergeTree& t) {
  double m = kInfinity;
  for (int leaf : t.leaves()) m = std::min(m, t.height(leaf));
  return m;
}

// Every point of both trees can be sent to the root rays at this shift.
double trivial_upper(const MergeTree& t1, const MergeTree& t2) {
  const double r1 = t1.height(t1.root()), r2 = t2.height(t2.root());
  const double m1 = min_leaf_height(t1), m2 = min_leaf_height(t2);
  return std::max({0.0, r2 - m1, r1 - m2, (r1 - m1) / 2, (r2 - m2) / 2});
}

constexpr std::size_t kBracketBudget = 200000;

}  // namespace

std::optional<InterleavingWitness> find_interleaving(const MergeTree& t1, const MergeTree& t2, double eps) {
  InterleavingWitness w;
  if (search(t1, t2, eps, 0, w) == SearchOutcome::kFound) return w;
  return std::nullopt;
}

std::vector<double> interleaving_candidates(const MergeTree& t1, const MergeTree& t2) {
  std::vector<double> heights = t1.heights();
  heights.insert(heights.end(), t2.heights().begin(), t2.heights().end());
  std::vector<double> out{0.0};
  for (double a : heights) {
    for (double b : heights) {
      if (a > b) {
        out.push_back(a - b);
        out.push_back((a - b) / 2);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

InterleavingDistance interleaving_distance(const MergeTree& t1, const MergeTree& t2) {
  const bool exact = t1.size() <= kInterleavingExactNodeLimit && t2.size() <= kInterleavingExactNodeLimit;
  const std::size_t budget = exact ? 0 : kBracketBudget;

  double lower_bound = 0.0;
  if (!exact) {
    lower_bound = bottleneck_distance(diagram_from_tree(t1), diagram_from_tree(t2)).distance;
  }
  const auto all = interleaving_candidates(t1, t2);
  double trivial = trivial_upper(t1, t2);
  InterleavingWitness scratch;
  // Rounding in h + eps can push the root-ray solution just out of reach.
  for (int i = 0; i < 16 && search(t1, t2, trivial, 0, scratch) != SearchOutcome::kFound; ++i) {
    trivial = std::nextafter(trivial, kInfinity);
  }
  std::vector<double> candidates;
  for (double c : all) {
    if (c >= lower_bound && c < trivial) candidates.push_back(c);
  }
  candidates.push_back(trivial);

  // Feasibility is monotone in eps; the last candidate is always feasible.
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (search(t1, t2, candidates[mid], budget, scratch) == SearchOutcome::kFound) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  InterleavingDistance result;
  result.exact = exact;
  result.upper = candidates[lo];
  result.lower = exact ? result.upper : lower_bound;
  return result;
}

}  // namespace homdist
