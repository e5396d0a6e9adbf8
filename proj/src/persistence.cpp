#include "homdist/persistence.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace homdist {

std::size_t PersistenceDiagram::essential_count() const {
  return static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [](const DiagramPoint& p) { return p.essential(); }));
}

PersistenceDiagram PersistenceDiagram::sorted() const {
  PersistenceDiagram out = *this;
  std::sort(out.points.begin(), out.points.end());
  return out;
}

bool same_multiset(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  return a.degree == b.degree && a.sorted().points == b.sorted().points;
}

namespace {

std::vector<std::size_t> filtration_order(const FilteredComplex& fc) {
  const auto& k = fc.complex();
  std::vector<std::size_t> order(k.size());
  std::iota(order.begin(), order.end(), 0);
  // Simplex indices are already in (dimension, lex) order, so a stable sort
  // by value yields the (value, dimension, lex) order.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return fc.value(a) < fc.value(b); });
  return order;
}

// Symmetric difference of two sorted index lists.
void add_column(std::vector<std::size_t>& target, const std::vector<std::size_t>& source) {
  std::vector<std::size_t> out;
  out.reserve(target.size() + source.size());
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(out));
  target.swap(out);
}

}  // namespace

PersistencePairing compute_pairing(const FilteredComplex& fc) {
  const auto& k = fc.complex();
  PersistencePairing result;
  result.order = filtration_order(fc);

  const std::size_t n = k.size();
  std::vector<std::size_t> position(n);
  for (std::size_t i = 0; i < n; ++i) position[result.order[i]] = i;

  // Columns indexed by filtration position; entries are positions of faces.
  std::vector<std::vector<std::size_t>> columns(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = k.simplex(result.order[i]);
    if (s.size() < 2) continue;
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      Simplex face;
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (j != drop) face.push_back(s[j]);
      }
      columns[i].push_back(position[static_cast<std::size_t>(k.index_of(face))]);
    }
    std::sort(columns[i].begin(), columns[i].end());
  }

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> column_with_low(n, kNone);
  std::vector<bool> is_birth(n, false), is_death(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    auto& col = columns[j];
    while (!col.empty() && column_with_low[col.back()] != kNone) {
      add_column(col, columns[column_with_low[col.back()]]);
    }
    if (!col.empty()) {
      const std::size_t low = col.back();
      column_with_low[low] = j;
      is_birth[low] = true;
      is_death[j] = true;
      result.pairs.emplace_back(result.order[low], result.order[j]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_birth[i] && !is_death[i]) result.essential.push_back(result.order[i]);
  }
  return result;
}

std::vector<PersistenceDiagram> compute_diagrams(const FilteredComplex& fc, int max_degree) {
  if (max_degree < 0 || max_degree > kDefaultMaxDimension) {
    throw InvalidInput("max_degree must lie in [0, " + std::to_string(kDefaultMaxDimension) + "]");
  }
  std::vector<PersistenceDiagram> diagrams(static_cast<std::size_t>(max_degree) + 1);
  for (int d = 0; d <= max_degree; ++d) diagrams[static_cast<std::size_t>(d)].degree = d;

  const auto& k = fc.complex();
  const auto pairing = compute_pairing(fc);
  for (auto [b, d] : pairing.pairs) {
    const int degree = static_cast<int>(k.simplex(b).size()) - 1;
    if (degree > max_degree) continue;
    if (fc.value(b) == fc.value(d)) continue;
    diagrams[static_cast<std::size_t>(degree)].points.push_back({fc.value(b), fc.value(d)});
  }
  for (auto s : pairing.essential) {
    const int degree = static_cast<int>(k.simplex(s).size()) - 1;
    if (degree > max_degree) continue;
    diagrams[static_cast<std::size_t>(degree)].points.push_back({fc.value(s), kInfinity});
  }
  for (auto& dg : diagrams) std::sort(dg.points.begin(), dg.points.end());
  return diagrams;
}

PersistenceDiagram h0_diagram_unionfind(const FilteredComplex& fc) {
  const auto& k = fc.complex();
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
  std::sort(events.begin(), events.end(), [&](const Event& a, const Event& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.dim != b.dim) return a.dim < b.dim;
    return k.simplex(a.index) < k.simplex(b.index);
  });

  const auto nv = static_cast<std::size_t>(k.vertex_count());
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<double> birth(nv, 0.0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };

  PersistenceDiagram out;
  out.degree = 0;
  for (const auto& e : events) {
    const auto& s = k.simplex(e.index);
    if (e.dim == 0) {
      birth[static_cast<std::size_t>(s[0])] = e.value;
      continue;
    }
    int a = find(s[0]), b = find(s[1]);
    if (a == b) continue;
    // Elder rule: the root with the later birth dies.
    if (birth[a] > birth[b]) std::swap(a, b);
    if (birth[b] < e.value) out.points.push_back({birth[b], e.value});
    parent[b] = a;
  }
  for (std::size_t v = 0; v < nv; ++v) {
    if (find(static_cast<int>(v)) == static_cast<int>(v)) out.points.push_back({birth[v], kInfinity});
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

PersistenceDiagram shift_diagram(const PersistenceDiagram& d, double c) {
  PersistenceDiagram out = d;
  for (auto& p : out.points) {
    p.birth += c;
    if (!p.essential()) p.death += c;
  }
  return out;
}

}  // namespace homdist
