#include "homdist/bottleneck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <string>

namespace homdist {

double point_cost(const DiagramPoint& p, const DiagramPoint& q) {
  if (p.essential() && q.essential()) return std::abs(p.birth - q.birth);
  if (p.essential() || q.essential()) return kInfinity;
  return std::max(std::abs(p.birth - q.birth), std::abs(p.death - q.death));
}

double diagonal_cost(const DiagramPoint& p) {
  if (p.essential()) return kInfinity;
  return (p.death - p.birth) / 2.0;
}

namespace {

/// Hopcroft-Karp on a bipartite graph given as left adjacency lists.
class BipartiteMatcher {
 public:
  BipartiteMatcher(std::size_t left, std::size_t right)
      : adj_(left), match_left_(left, kFree), match_right_(right, kFree), dist_(left) {}

  void add_edge(std::size_t u, std::size_t v) { adj_[u].push_back(v); }

  std::size_t max_matching() {
    std::size_t size = 0;
    while (bfs()) {
      for (std::size_t u = 0; u < adj_.size(); ++u) {
        if (match_left_[u] == kFree && dfs(u)) ++size;
      }
    }
    return size;
  }

  std::size_t partner_of_left(std::size_t u) const { return match_left_[u]; }

  static constexpr std::size_t kFree = static_cast<std::size_t>(-1);

 private:
  bool bfs() {
    std::queue<std::size_t> q;
    bool found = false;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      if (match_left_[u] == kFree) {
        dist_[u] = 0;
        q.push(u);
      } else {
        dist_[u] = kFree;
      }
    }
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (auto v : adj_[u]) {
        auto w = match_right_[v];
        if (w == kFree) {
          found = true;
        } else if (dist_[w] == kFree) {
          dist_[w] = dist_[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(std::size_t u) {
    for (auto v : adj_[u]) {
      auto w = match_right_[v];
      if (w == kFree || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        match_left_[u] = v;
        match_right_[v] = u;
        return true;
      }
    }
    dist_[u] = kFree;
    return false;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> match_left_, match_right_, dist_;
};

struct Split {
  std::vector<int> finite, essential;
};

Split split_points(const PersistenceDiagram& d) {
  Split s;
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    (d.points[i].essential() ? s.essential : s.finite).push_back(static_cast<int>(i));
  }
  std::stable_sort(s.essential.begin(), s.essential.end(),
                   [&](int x, int y) { return d.points[x].birth < d.points[y].birth; });
  return s;
}

// Perfect matching of the finite parts within `threshold`, or nullopt.
// Left: points of A, then diagonal copies of B's points.
// Right: points of B, then diagonal copies of A's points.
std::optional<std::vector<std::pair<int, int>>> finite_matching(
    const PersistenceDiagram& a, const std::vector<int>& fa, const PersistenceDiagram& b,
    const std::vector<int>& fb, double threshold) {
  const std::size_t na = fa.size(), nb = fb.size();
  BipartiteMatcher m(na + nb, na + nb);
  for (std::size_t i = 0; i < na; ++i) {
    const auto& p = a.points[fa[i]];
    for (std::size_t j = 0; j < nb; ++j) {
      if (point_cost(p, b.points[fb[j]]) <= threshold) m.add_edge(i, j);
    }
    if (diagonal_cost(p) <= threshold) m.add_edge(i, nb + i);
  }
  for (std::size_t j = 0; j < nb; ++j) {
    if (diagonal_cost(b.points[fb[j]]) <= threshold) m.add_edge(na + j, j);
    for (std::size_t i = 0; i < na; ++i) m.add_edge(na + j, nb + i);
  }
  if (m.max_matching() != na + nb) return std::nullopt;

  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < na; ++i) {
    auto r = m.partner_of_left(i);
    pairs.emplace_back(fa[i], r < nb ? fb[r] : kDiagonal);
  }
  for (std::size_t j = 0; j < nb; ++j) {
    if (m.partner_of_left(na + j) == j) pairs.emplace_back(kDiagonal, fb[j]);
  }
  return pairs;
}

}  // namespace

BottleneckResult bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  if (a.degree != b.degree) throw InvalidInput("bottleneck distance across different degrees");
  const auto sa = split_points(a);
  const auto sb = split_points(b);

  BottleneckResult result;
  auto& pairs = result.matching.pairs;
  double essential_cost = 0.0;
  const std::size_t common = std::min(sa.essential.size(), sb.essential.size());
  for (std::size_t i = 0; i < common; ++i) {
    const int x = sa.essential[i], y = sb.essential[i];
    essential_cost = std::max(essential_cost, point_cost(a.points[x], b.points[y]));
    pairs.emplace_back(x, y);
  }
  for (std::size_t i = common; i < sa.essential.size(); ++i) pairs.emplace_back(sa.essential[i], kDiagonal);
  for (std::size_t i = common; i < sb.essential.size(); ++i) pairs.emplace_back(kDiagonal, sb.essential[i]);
  if (sa.essential.size() != sb.essential.size()) essential_cost = kInfinity;

  std::vector<double> candidates{0.0};
  for (int i : sa.finite) {
    candidates.push_back(diagonal_cost(a.points[i]));
    for (int j : sb.finite) candidates.push_back(point_cost(a.points[i], b.points[j]));
  }
  for (int j : sb.finite) candidates.push_back(diagonal_cost(b.points[j]));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // The largest candidate is always feasible (everything to the diagonal).
  std::size_t lo = 0, hi = candidates.size() - 1;
  auto best = finite_matching(a, sa.finite, b, sb.finite, candidates[hi]);
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (auto m = finite_matching(a, sa.finite, b, sb.finite, candidates[mid])) {
      best = std::move(m);
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  pairs.insert(pairs.end(), best->begin(), best->end());

  result.distance = std::max(essential_cost, candidates[lo]);
  result.matching.cost = result.distance;
  return result;
}

double bottleneck_bruteforce(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  if (a.degree != b.degree) throw InvalidInput("bottleneck distance across different degrees");
  if (a.points.size() > 8 || b.points.size() > 8) {
    throw InvalidInput("bottleneck_bruteforce is limited to 8 points per diagram");
  }
  const auto& pa = a.points;
  const auto& pb = b.points;
  std::vector<bool> used(pb.size(), false);
  double best = kInfinity;
  bool any = false;

  std::function<void(std::size_t, double)> rec = [&](std::size_t i, double cost) {
    if (any && cost >= best) return;
    if (i == pa.size()) {
      double total = cost;
      for (std::size_t j = 0; j < pb.size(); ++j) {
        if (!used[j]) total = std::max(total, diagonal_cost(pb[j]));
      }
      if (!any || total < best) best = total;
      any = true;
      return;
    }
    rec(i + 1, std::max(cost, diagonal_cost(pa[i])));
    for (std::size_t j = 0; j < pb.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      rec(i + 1, std::max(cost, point_cost(pa[i], pb[j])));
      used[j] = false;
    }
  };
  rec(0, 0.0);
  return best;
}

double linf_distance(const VertexFunction& f, const VertexFunction& g) {
  if (f.size() != g.size()) throw InvalidInput("L-infinity distance of functions of different length");
  double m = 0.0;
  for (std::size_t v = 0; v < f.size(); ++v) m = std::max(m, std::abs(f[v] - g[v]));
  return m;
}

std::vector<std::vector<int>> simplicial_isomorphisms(const SimplicialComplex& k1,
                                                      const SimplicialComplex& k2) {
  std::vector<std::vector<int>> out;
  if (k1.vertex_count() != k2.vertex_count() || k1.size() != k2.size()) return out;
  const auto slots = static_cast<std::size_t>(std::max(k1.dimension(), k2.dimension()) + 2);
  std::vector<std::size_t> count1(slots, 0), count2(slots, 0);
  for (const auto& s : k1.simplices()) ++count1[s.size()];
  for (const auto& s : k2.simplices()) ++count2[s.size()];
  if (count1 != count2) return out;

  const int n = k1.vertex_count();
  std::vector<int> image(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::vector<int> buffer;
  // Injective, simplex-preserving, equal counts per dimension => onto.
  std::function<void(int)> rec = [&](int v) {
    if (v == n) {
      out.push_back(image);
      return;
    }
    for (int w = 0; w < n; ++w) {
      if (used[w]) continue;
      image[v] = w;
      bool ok = true;
      for (auto idx : k1.simplices_topped_by(v)) {
        buffer.clear();
        for (int u : k1.simplex(idx)) buffer.push_back(image[u]);
        if (!k2.spans_simplex(buffer)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        used[w] = true;
        rec(v + 1);
        used[w] = false;
      }
    }
    image[v] = -1;
  };
  rec(0);
  return out;
}

double natural_pseudo_upper(const SimplicialComplex& k1, const VertexFunction& f,
                            const SimplicialComplex& k2, const VertexFunction& g,
                            const std::optional<std::vector<std::vector<int>>>& isomorphisms) {
  if (f.size() != static_cast<std::size_t>(k1.vertex_count()) ||
      g.size() != static_cast<std::size_t>(k2.vertex_count())) {
    throw InvalidInput("function length does not match its complex");
  }
  std::vector<std::vector<int>> enumerated;
  const std::vector<std::vector<int>>* candidates = nullptr;
  if (isomorphisms) {
    for (const auto& h : *isomorphisms) {
      if (h.size() != f.size()) throw InvalidInput("supplied isomorphism has the wrong length");
      for (int w : h) {
        if (w < 0 || w >= k2.vertex_count()) throw InvalidInput("supplied isomorphism out of range");
      }
    }
    candidates = &*isomorphisms;
  } else {
    if (k1.vertex_count() > 9 || k2.vertex_count() > 9) {
      throw InvalidInput("natural_pseudo_upper enumerates at most 9 vertices; supply isomorphisms");
    }
    enumerated = simplicial_isomorphisms(k1, k2);
    candidates = &enumerated;
  }
  double best = kInfinity;
  for (const auto& h : *candidates) {
    double m = 0.0;
    for (std::size_t v = 0; v < h.size(); ++v) {
      m = std::max(m, std::abs(f[v] - g[static_cast<std::size_t>(h[v])]));
    }
    best = std::min(best, m);
  }
  return best;
}

}  // namespace homdist
