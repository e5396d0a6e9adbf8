#include "homdist/complex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace homdist {

namespace {

bool dimension_then_lex(const Simplex& a, const Simplex& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

Simplex sorted_unique(std::span<const int> vertices) {
  Simplex s(vertices.begin(), vertices.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace

SimplicialComplex SimplicialComplex::from_simplices(std::span<const Simplex> simplices,
                                                    int max_dimension) {
  std::set<Simplex> closed;
  int max_vertex = -1;
  for (const auto& raw : simplices) {
    if (raw.empty()) throw InvalidInput("empty simplex");
    Simplex s = raw;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw InvalidInput("simplex repeats a vertex");
    }
    if (s.front() < 0) throw InvalidInput("negative vertex index");
    if (static_cast<int>(s.size()) - 1 > max_dimension) {
      throw InvalidInput("simplex of dimension " + std::to_string(s.size() - 1) +
                         " exceeds the dimension cap " + std::to_string(max_dimension));
    }
    max_vertex = std::max(max_vertex, s.back());
    if (s.size() > 20) throw InvalidInput("simplex too large");
    // all nonempty subsets
    const std::uint32_t n = static_cast<std::uint32_t>(s.size());
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      Simplex face;
      for (std::uint32_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) face.push_back(s[i]);
      }
      closed.insert(std::move(face));
    }
  }

  SimplicialComplex k;
  k.vertex_count_ = max_vertex + 1;
  for (int v = 0; v <= max_vertex; ++v) closed.insert(Simplex{v});
  k.simplices_.assign(closed.begin(), closed.end());
  std::sort(k.simplices_.begin(), k.simplices_.end(), dimension_then_lex);
  k.index_.reserve(k.simplices_.size());
  k.topped_by_.assign(static_cast<std::size_t>(k.vertex_count_), {});
  for (std::size_t i = 0; i < k.simplices_.size(); ++i) {
    const auto& s = k.simplices_[i];
    k.index_.emplace(s, i);
    k.dimension_ = std::max(k.dimension_, static_cast<int>(s.size()) - 1);
    if (s.size() > 1) k.topped_by_[static_cast<std::size_t>(s.back())].push_back(i);
  }
  return k;
}

std::ptrdiff_t SimplicialComplex::index_of(const Simplex& sorted) const {
  auto it = index_.find(sorted);
  return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

bool SimplicialComplex::spans_simplex(std::span<const int> vertices) const {
  return contains(sorted_unique(vertices));
}

int SimplicialComplex::component_count() const {
  std::vector<int> parent(static_cast<std::size_t>(vertex_count_));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  int components = vertex_count_;
  for (const auto& s : simplices_) {
    if (s.size() != 2) continue;
    int a = find(s[0]), b = find(s[1]);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components;
}

VertexFunction::VertexFunction(std::vector<double> values) : values_(std::move(values)) {
  for (double x : values_) {
    if (!std::isfinite(x)) throw InvalidInput("vertex function values must be finite");
  }
}

VertexFunction VertexFunction::shifted(double c) const {
  std::vector<double> out = values_;
  for (double& x : out) x += c;
  return VertexFunction(std::move(out));
}

FilteredComplex::FilteredComplex(ComplexPtr complex, std::vector<double> values)
    : complex_(std::move(complex)), values_(std::move(values)) {
  if (!complex_) throw InvalidInput("null complex");
  if (values_.size() != complex_->size()) {
    throw InvalidInput("filtration has " + std::to_string(values_.size()) + " values for " +
                       std::to_string(complex_->size()) + " simplices");
  }
  for (double x : values_) {
    if (!std::isfinite(x)) throw InvalidInput("filtration values must be finite");
  }
  // Codimension-one faces suffice for monotonicity.
  for (std::size_t i = 0; i < complex_->size(); ++i) {
    const auto& s = complex_->simplex(i);
    if (s.size() < 2) continue;
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      Simplex face;
      face.reserve(s.size() - 1);
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (j != drop) face.push_back(s[j]);
      }
      if (values_[static_cast<std::size_t>(complex_->index_of(face))] > values_[i]) {
        throw InvalidInput("filtration is not monotone");
      }
    }
  }
}

double FilteredComplex::value_of(std::span<const int> vertices) const {
  auto idx = complex_->index_of(sorted_unique(vertices));
  if (idx < 0) throw InvalidInput("vertices do not span a simplex");
  return values_[static_cast<std::size_t>(idx)];
}

FilteredComplex FilteredComplex::shifted(double c) const {
  std::vector<double> out = values_;
  for (double& x : out) x += c;
  return FilteredComplex(complex_, std::move(out));
}

FilteredComplex lower_star(ComplexPtr complex, const VertexFunction& f) {
  if (!complex) throw InvalidInput("null complex");
  if (f.size() != static_cast<std::size_t>(complex->vertex_count())) {
    throw InvalidInput("vertex function has " + std::to_string(f.size()) + " values for " +
                       std::to_string(complex->vertex_count()) + " vertices");
  }
  std::vector<double> values;
  values.reserve(complex->size());
  for (const auto& s : complex->simplices()) {
    double m = f[static_cast<std::size_t>(s.front())];
    for (int v : s) m = std::max(m, f[static_cast<std::size_t>(v)]);
    values.push_back(m);
  }
  return FilteredComplex(std::move(complex), std::move(values));
}

SimplicialMap::SimplicialMap(ComplexPtr source, ComplexPtr target, std::vector<int> vertex_image)
    : source_(std::move(source)), target_(std::move(target)), image_(std::move(vertex_image)) {
  if (!source_ || !target_) throw InvalidInput("null complex");
  if (image_.size() != static_cast<std::size_t>(source_->vertex_count())) {
    throw InvalidInput("map has " + std::to_string(image_.size()) + " images for " +
                       std::to_string(source_->vertex_count()) + " source vertices");
  }
  for (int w : image_) {
    if (w < 0 || w >= target_->vertex_count()) {
      throw InvalidInput("vertex image " + std::to_string(w) + " out of range");
    }
  }
}

SimplicialMap SimplicialMap::identity(const ComplexPtr& k) {
  std::vector<int> img(static_cast<std::size_t>(k->vertex_count()));
  std::iota(img.begin(), img.end(), 0);
  return SimplicialMap(k, k, std::move(img));
}

SimplicialMap SimplicialMap::constant(const ComplexPtr& source, const ComplexPtr& target,
                                      int vertex) {
  return SimplicialMap(source, target,
                       std::vector<int>(static_cast<std::size_t>(source->vertex_count()), vertex));
}

bool SimplicialMap::is_simplicial() const {
  std::vector<int> img;
  for (const auto& s : source_->simplices()) {
    if (s.size() < 2) continue;
    img.clear();
    for (int v : s) img.push_back(image_[static_cast<std::size_t>(v)]);
    if (!target_->spans_simplex(img)) return false;
  }
  return true;
}

SimplicialMap SimplicialMap::after(const SimplicialMap& first) const {
  if (!(*first.target_ == *source_)) throw InvalidInput("cannot compose: endpoints differ");
  std::vector<int> img;
  img.reserve(first.image_.size());
  for (int v : first.image_) img.push_back(image_[static_cast<std::size_t>(v)]);
  return SimplicialMap(first.source_, target_, std::move(img));
}

bool SimplicialMap::same_endpoints(const SimplicialMap& other) const {
  auto same = [](const ComplexPtr& a, const ComplexPtr& b) { return a == b || *a == *b; };
  return same(source_, other.source_) && same(target_, other.target_);
}

bool contiguous(const SimplicialMap& a, const SimplicialMap& b) {
  if (!a.same_endpoints(b)) throw InvalidInput("contiguity of maps with different endpoints");
  std::vector<int> img;
  for (const auto& s : a.source().simplices()) {
    img.clear();
    for (int v : s) {
      img.push_back(a(v));
      img.push_back(b(v));
    }
    if (!a.target().spans_simplex(img)) return false;
  }
  return true;
}

bool check_contiguity_chain(std::span<const SimplicialMap> chain) {
  if (chain.empty()) throw InvalidInput("empty contiguity chain");
  for (const auto& m : chain) {
    if (!m.same_endpoints(chain.front())) {
      throw InvalidInput("contiguity chain maps have mismatched source/target");
    }
  }
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (!contiguous(chain[i], chain[i + 1])) return false;
  }
  return true;
}

std::vector<double> homotopy_sup_control(std::span<const SimplicialMap> chain,
                                         const FilteredComplex& target_values) {
  if (chain.empty()) throw InvalidInput("empty contiguity chain");
  if (!(chain.front().target() == target_values.complex())) {
    throw InvalidInput("chain target is not the filtered complex");
  }
  const auto n = static_cast<std::size_t>(chain.front().source().vertex_count());
  std::vector<double> bound(n);
  for (std::size_t v = 0; v < n; ++v) {
    const int vi = static_cast<int>(v);
    double m = target_values.vertex_value(chain[0](vi));
    for (std::size_t i = 1; i < chain.size(); ++i) {
      const int pair[2] = {chain[i - 1](vi), chain[i](vi)};
      m = std::max(m, target_values.value_of(pair));
    }
    bound[v] = m;
  }
  return bound;
}

}  // namespace homdist
