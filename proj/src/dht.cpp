#include "homdist/dht.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "homdist/bottleneck.hpp"

namespace homdist {

std::string_view condition_name(CertificateCondition c) {
  switch (c) {
    case CertificateCondition::kNone: return "none";
    case CertificateCondition::kBadParameters: return "bad_parameters";
    case CertificateCondition::kPhiNotSimplicial: return "phi_not_simplicial";
    case CertificateCondition::kPsiNotSimplicial: return "psi_not_simplicial";
    case CertificateCondition::kChainXNotContiguous: return "chain_x_not_contiguous";
    case CertificateCondition::kChainYNotContiguous: return "chain_y_not_contiguous";
    case CertificateCondition::kChainXEndpoints: return "chain_x_endpoints";
    case CertificateCondition::kChainYEndpoints: return "chain_y_endpoints";
    case CertificateCondition::kShiftPhi: return "shift_phi";
    case CertificateCondition::kShiftPsi: return "shift_psi";
    case CertificateCondition::kControlX: return "control_x";
    case CertificateCondition::kControlY: return "control_y";
  }
  return "unknown";
}

namespace {

bool same_complex(const SimplicialComplex& a, const SimplicialComplex& b) { return &a == &b || a == b; }

void require_structure(const FilteredComplex& x, const FilteredComplex& y, const DhtCertificate& cert) {
  const auto& kx = x.complex();
  const auto& ky = y.complex();
  if (!same_complex(cert.phi.source(), kx) || !same_complex(cert.phi.target(), ky)) {
    throw InvalidInput("phi must map X to Y");
  }
  if (!same_complex(cert.psi.source(), ky) || !same_complex(cert.psi.target(), kx)) {
    throw InvalidInput("psi must map Y to X");
  }
  if (cert.chain_x.empty() || cert.chain_y.empty()) throw InvalidInput("certificate chains must be nonempty");
  for (const auto& m : cert.chain_x) {
    if (!same_complex(m.source(), kx) || !same_complex(m.target(), kx)) {
      throw InvalidInput("chain_x maps must be self-maps of X");
    }
  }
  for (const auto& m : cert.chain_y) {
    if (!same_complex(m.source(), ky) || !same_complex(m.target(), ky)) {
      throw InvalidInput("chain_y maps must be self-maps of Y");
    }
  }
}

bool is_identity(const SimplicialMap& m) {
  for (std::size_t v = 0; v < m.images().size(); ++v) {
    if (m.images()[v] != static_cast<int>(v)) return false;
  }
  return true;
}

std::string vertex_detail(const char* what, std::size_t v, double lhs, double rhs) {
  std::ostringstream os;
  os.precision(17);
  os << what << " at vertex " << v << ": " << lhs << " > " << rhs;
  return os.str();
}

struct Excess {
  double shift_phi = 0, shift_psi = 0, control_x = 0, control_y = 0;
};

// Largest amounts by which each condition exceeds eps = 0 (control in units of the factor).
Excess excesses(const FilteredComplex& x, const FilteredComplex& y, const DhtCertificate& cert) {
  Excess e;
  const auto nx = static_cast<std::size_t>(x.complex().vertex_count());
  const auto ny = static_cast<std::size_t>(y.complex().vertex_count());
  const auto cx = homotopy_sup_control(cert.chain_x, x);
  const auto cy = homotopy_sup_control(cert.chain_y, y);
  e.shift_phi = e.shift_psi = e.control_x = e.control_y = -kInfinity;
  for (std::size_t v = 0; v < nx; ++v) {
    const double fv = x.vertex_value(static_cast<int>(v));
    e.shift_phi = std::max(e.shift_phi, y.vertex_value(cert.phi(static_cast<int>(v))) - fv);
    e.control_x = std::max(e.control_x, cx[v] - fv);
  }
  for (std::size_t w = 0; w < ny; ++w) {
    const double gw = y.vertex_value(static_cast<int>(w));
    e.shift_psi = std::max(e.shift_psi, x.vertex_value(cert.psi(static_cast<int>(w))) - gw);
    e.control_y = std::max(e.control_y, cy[w] - gw);
  }
  return e;
}

}  // namespace

CertificateCheck check_certificate(const FilteredComplex& x, const FilteredComplex& y,
                                   const DhtCertificate& cert) {
  require_structure(x, y, cert);
  using C = CertificateCondition;
  if (!(cert.eps >= 0.0) || !std::isfinite(cert.eps) || !(cert.factor > 0.0) || !std::isfinite(cert.factor)) {
    return {C::kBadParameters, "eps must be finite and >= 0, factor finite and > 0"};
  }
  if (!cert.phi.is_simplicial()) return {C::kPhiNotSimplicial, "phi does not map simplices to simplices"};
  if (!cert.psi.is_simplicial()) return {C::kPsiNotSimplicial, "psi does not map simplices to simplices"};
  if (!check_contiguity_chain(cert.chain_x)) return {C::kChainXNotContiguous, "consecutive maps in chain_x are not contiguous"};
  if (!check_contiguity_chain(cert.chain_y)) return {C::kChainYNotContiguous, "consecutive maps in chain_y are not contiguous"};
  if (cert.chain_x.front().images() != cert.psi.after(cert.phi).images() || !is_identity(cert.chain_x.back())) {
    return {C::kChainXEndpoints, "chain_x must run from psi∘phi to the identity"};
  }
  if (cert.chain_y.front().images() != cert.phi.after(cert.psi).images() || !is_identity(cert.chain_y.back())) {
    return {C::kChainYEndpoints, "chain_y must run from phi∘psi to the identity"};
  }

  const auto nx = static_cast<std::size_t>(x.complex().vertex_count());
  const auto ny = static_cast<std::size_t>(y.complex().vertex_count());
  for (std::size_t v = 0; v < nx; ++v) {
    const double lhs = y.vertex_value(cert.phi(static_cast<int>(v)));
    const double rhs = x.vertex_value(static_cast<int>(v)) + cert.eps;
    if (lhs > rhs) return {C::kShiftPhi, vertex_detail("g(phi(v)) > f(v) + eps", v, lhs, rhs)};
  }
  for (std::size_t w = 0; w < ny; ++w) {
    const double lhs = x.vertex_value(cert.psi(static_cast<int>(w)));
    const double rhs = y.vertex_value(static_cast<int>(w)) + cert.eps;
    if (lhs > rhs) return {C::kShiftPsi, vertex_detail("f(psi(w)) > g(w) + eps", w, lhs, rhs)};
  }
  const auto cx = homotopy_sup_control(cert.chain_x, x);
  for (std::size_t v = 0; v < nx; ++v) {
    const double rhs = x.vertex_value(static_cast<int>(v)) + cert.factor * cert.eps;
    if (cx[v] > rhs) return {C::kControlX, vertex_detail("chain_x sweep > f(v) + factor*eps", v, cx[v], rhs)};
  }
  const auto cy = homotopy_sup_control(cert.chain_y, y);
  for (std::size_t w = 0; w < ny; ++w) {
    const double rhs = y.vertex_value(static_cast<int>(w)) + cert.factor * cert.eps;
    if (cy[w] > rhs) return {C::kControlY, vertex_detail("chain_y sweep > g(w) + factor*eps", w, cy[w], rhs)};
  }
  return {};
}

double minimal_eps(const FilteredComplex& x, const FilteredComplex& y, const DhtCertificate& cert) {
  require_structure(x, y, cert);
  if (!(cert.factor > 0.0) || !std::isfinite(cert.factor)) return kInfinity;
  const auto e = excesses(x, y, cert);
  DhtCertificate trial = cert;
  trial.eps = std::max({0.0, e.shift_phi, e.shift_psi, e.control_x / cert.factor, e.control_y / cert.factor});
  // The closed form can land an ulp short after rounding; step up until it passes.
  for (int i = 0; i < 64; ++i) {
    const auto check = check_certificate(x, y, trial);
    if (check.ok()) return trial.eps;
    const auto v = check.violated;
    if (v != CertificateCondition::kShiftPhi && v != CertificateCondition::kShiftPsi &&
        v != CertificateCondition::kControlX && v != CertificateCondition::kControlY) {
      return kInfinity;
    }
    trial.eps = std::nextafter(trial.eps, kInfinity);
  }
  return kInfinity;
}

namespace {

using MapCode = std::uint64_t;

MapCode encode(const std::vector<int>& images, int base) {
  MapCode code = 0;
  for (auto it = images.rbegin(); it != images.rend(); ++it) code = code * static_cast<MapCode>(base) + static_cast<MapCode>(*it);
  return code;
}

std::vector<int> decode(MapCode code, int size, int base) {
  std::vector<int> images(static_cast<std::size_t>(size));
  for (auto& w : images) {
    w = static_cast<int>(code % static_cast<MapCode>(base));
    code /= static_cast<MapCode>(base);
  }
  return images;
}

/// All vertex maps source -> target that are simplicial, in lexicographic order
/// of their image lists.
std::vector<std::vector<int>> simplicial_maps(const SimplicialComplex& source, const SimplicialComplex& target) {
  std::vector<std::vector<int>> out;
  const int n = source.vertex_count();
  std::vector<int> image(static_cast<std::size_t>(n), 0);
  std::vector<int> buffer;
  std::function<void(int)> rec = [&](int v) {
    if (v == n) {
      out.push_back(image);
      return;
    }
    for (int w = 0; w < target.vertex_count(); ++w) {
      image[static_cast<std::size_t>(v)] = w;
      bool ok = true;
      for (auto idx : source.simplices_topped_by(v)) {
        buffer.clear();
        for (int u : source.simplex(idx)) buffer.push_back(image[static_cast<std::size_t>(u)]);
        if (!target.spans_simplex(buffer)) {
          ok = false;
          break;
        }
      }
      if (ok) rec(v + 1);
    }
  };
  rec(0);
  return out;
}

/**
 * Minimax contiguity paths from the identity of a filtered complex to its
 * self-maps, with at most `max_steps` contiguity steps.
 *
 * The cost of a chain is the largest amount its straight-line homotopy rises
 * above the starting value at any vertex, i.e. max_v(sweep(v) - f(v)).
 */
class ChainTable {
 public:
  ChainTable(const FilteredComplex& fc, int max_steps)
      : fc_(fc), k_(fc.complex()), n_(k_.vertex_count()) {
    std::vector<int> id(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) id[static_cast<std::size_t>(v)] = v;
    const MapCode id_code = encode(id, n_);
    history_[id_code].push_back({0, 0.0, id_code});

    std::vector<std::pair<MapCode, double>> frontier{{id_code, 0.0}};
    for (int layer = 1; layer <= max_steps && !frontier.empty(); ++layer) {
      std::unordered_map<MapCode, double> improved;
      for (const auto& [code, cost] : frontier) {
        const auto from = decode(code, n_, n_);
        for_each_contiguous(from, [&](const std::vector<int>& to) {
          const double candidate = std::max(cost, step_cost(from, to));
          const MapCode to_code = encode(to, n_);
          auto& h = history_[to_code];
          if (!h.empty() && h.back().cost <= candidate) return;
          if (!h.empty() && h.back().layer == layer) {
            h.back() = {layer, candidate, code};
          } else {
            h.push_back({layer, candidate, code});
          }
          improved[to_code] = candidate;
        });
      }
      frontier.assign(improved.begin(), improved.end());
      std::sort(frontier.begin(), frontier.end());
    }
  }

  /// Minimax cost of reaching `images`, or infinity if out of reach.
  double cost(const std::vector<int>& images) const {
    auto it = history_.find(encode(images, n_));
    return it == history_.end() ? kInfinity : it->second.back().cost;
  }

  /// Chain from `images` to the identity realising `cost(images)`.
  std::vector<std::vector<int>> chain_to_identity(const std::vector<int>& images) const {
    std::vector<std::vector<int>> chain;
    MapCode code = encode(images, n_);
    int layer = history_.at(code).back().layer;
    while (true) {
      chain.push_back(decode(code, n_, n_));
      if (layer == 0) break;
      const auto& h = history_.at(code);
      auto it = std::find_if(h.rbegin(), h.rend(), [&](const Entry& e) { return e.layer <= layer; });
      code = it->parent;
      layer = it->layer - 1;
      // Parent's entry is the one recorded at exactly this layer.
    }
    return chain;
  }

 private:
  struct Entry {
    int layer;
    double cost;
    MapCode parent;
  };

  double step_cost(const std::vector<int>& a, const std::vector<int>& b) const {
    double m = -kInfinity;
    for (int v = 0; v < n_; ++v) {
      const int pair[2] = {a[static_cast<std::size_t>(v)], b[static_cast<std::size_t>(v)]};
      m = std::max(m, fc_.value_of(pair) - fc_.vertex_value(v));
    }
    return m;
  }

  template <typename Visit>
  void for_each_contiguous(const std::vector<int>& from, Visit&& visit) const {
    std::vector<int> to(static_cast<std::size_t>(n_), 0);
    std::vector<int> buffer;
    std::function<void(int)> rec = [&](int v) {
      if (v == n_) {
        visit(to);
        return;
      }
      const auto vi = static_cast<std::size_t>(v);
      for (int w = 0; w < n_; ++w) {
        to[vi] = w;
        const int pair[2] = {from[vi], w};
        if (!k_.spans_simplex(pair)) continue;
        bool ok = true;
        for (auto idx : k_.simplices_topped_by(v)) {
          buffer.clear();
          for (int u : k_.simplex(idx)) {
            buffer.push_back(from[static_cast<std::size_t>(u)]);
            buffer.push_back(to[static_cast<std::size_t>(u)]);
          }
          if (!k_.spans_simplex(buffer)) {
            ok = false;
            break;
          }
        }
        if (ok) rec(v + 1);
      }
    };
    rec(0);
  }

  const FilteredComplex& fc_;
  const SimplicialComplex& k_;
  int n_;
  std::unordered_map<MapCode, std::vector<Entry>> history_;
};

double shift_excess(const std::vector<int>& map, const FilteredComplex& from, const FilteredComplex& to) {
  double m = -kInfinity;
  for (std::size_t v = 0; v < map.size(); ++v) {
    m = std::max(m, to.vertex_value(map[v]) - from.vertex_value(static_cast<int>(v)));
  }
  return m;
}

std::vector<int> compose(const std::vector<int>& second, const std::vector<int>& first) {
  std::vector<int> out(first.size());
  for (std::size_t v = 0; v < first.size(); ++v) out[v] = second[static_cast<std::size_t>(first[v])];
  return out;
}

ContiguityChain make_chain(const ComplexPtr& k, const std::vector<std::vector<int>>& maps) {
  ContiguityChain chain;
  for (const auto& m : maps) chain.emplace_back(k, k, m);
  return chain;
}

}  // namespace

SearchResult search_certificate(const FilteredComplex& x, const FilteredComplex& y, const SearchOptions& options) {
  if (x.complex().vertex_count() > kSearchVertexLimit || y.complex().vertex_count() > kSearchVertexLimit) {
    throw InvalidInput("search_certificate is limited to " + std::to_string(kSearchVertexLimit) +
                       " vertices per complex");
  }
  if (x.complex().vertex_count() == 0 || y.complex().vertex_count() == 0) {
    throw InvalidInput("search_certificate needs nonempty complexes");
  }
  if (options.max_chain_length < 0) throw InvalidInput("max_chain_length must be non-negative");
  if (!(options.factor > 0.0) || !std::isfinite(options.factor)) throw InvalidInput("factor must be positive");

  const auto phis = simplicial_maps(x.complex(), y.complex());
  const auto psis = simplicial_maps(y.complex(), x.complex());
  const ChainTable table_x(x, options.max_chain_length);
  const ChainTable table_y(y, options.max_chain_length);

  std::vector<double> psi_shift(psis.size());
  for (std::size_t j = 0; j < psis.size(); ++j) psi_shift[j] = shift_excess(psis[j], y, x);

  double best = kInfinity;
  std::size_t best_phi = 0, best_psi = 0;
  for (std::size_t i = 0; i < phis.size(); ++i) {
    const double sphi = std::max(0.0, shift_excess(phis[i], x, y));
    if (sphi >= best) continue;
    for (std::size_t j = 0; j < psis.size(); ++j) {
      double eps = std::max(sphi, psi_shift[j]);
      if (eps >= best) continue;
      eps = std::max(eps, table_x.cost(compose(psis[j], phis[i])) / options.factor);
      if (eps >= best) continue;
      eps = std::max(eps, table_y.cost(compose(phis[i], psis[j])) / options.factor);
      if (eps >= best) continue;
      best = eps;
      best_phi = i;
      best_psi = j;
    }
  }

  SearchResult result;
  if (best == kInfinity) return result;

  const auto& phi = phis[best_phi];
  const auto& psi = psis[best_psi];
  DhtCertificate cert{
      SimplicialMap(x.complex_ptr(), y.complex_ptr(), phi),
      SimplicialMap(y.complex_ptr(), x.complex_ptr(), psi),
      best,
      make_chain(x.complex_ptr(), table_x.chain_to_identity(compose(psi, phi))),
      make_chain(y.complex_ptr(), table_y.chain_to_identity(compose(phi, psi))),
      options.factor,
  };
  cert.eps = minimal_eps(x, y, cert);
  if (!check_certificate(x, y, cert)) throw std::logic_error("search produced an invalid certificate");
  result.eps_upper = cert.eps;
  result.certificate = std::move(cert);
  return result;
}

DhtCertificate identity_certificate(const FilteredComplex& x, const FilteredComplex& y) {
  if (!same_complex(x.complex(), y.complex())) throw InvalidInput("identity certificate needs a shared complex");
  auto id_x = SimplicialMap::identity(x.complex_ptr());
  auto id_yx = SimplicialMap(y.complex_ptr(), x.complex_ptr(), id_x.images());
  auto id_xy = SimplicialMap(x.complex_ptr(), y.complex_ptr(), id_x.images());
  DhtCertificate cert{id_xy, id_yx, 0.0, {SimplicialMap::identity(x.complex_ptr())},
                      {SimplicialMap::identity(y.complex_ptr())}, kDefaultControlFactor};
  cert.eps = minimal_eps(x, y, cert);
  return cert;
}

StabilityReport verify_stability(const FilteredComplex& x, const FilteredComplex& y, const DhtCertificate& cert,
                                 int max_degree) {
  if (auto check = check_certificate(x, y, cert); !check) {
    throw InvalidInput("certificate fails " + std::string(condition_name(check.violated)) + ": " + check.detail);
  }
  const auto dx = compute_diagrams(x, max_degree);
  const auto dy = compute_diagrams(y, max_degree);
  StabilityReport report;
  for (int k = 0; k <= max_degree; ++k) {
    DegreeComparison row;
    row.degree = k;
    row.bottleneck = bottleneck_distance(dx[static_cast<std::size_t>(k)], dy[static_cast<std::size_t>(k)]).distance;
    row.eps = cert.eps;
    row.slack = cert.eps - row.bottleneck;
    row.holds = row.bottleneck <= cert.eps + kStabilityTolerance;
    report.falsified = report.falsified || !row.holds;
    report.degrees.push_back(row);
  }
  return report;
}

ProbeReport upshift_asymmetry_probe(const FilteredComplex& x, const FilteredComplex& y, const DhtCertificate& cert,
                                    double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw InvalidInput("delta must be finite and non-negative");
  if (auto check = check_certificate(x, y, cert); !check) {
    throw InvalidInput("certificate fails " + std::string(condition_name(check.violated)) + ": " + check.detail);
  }
  ProbeReport report;
  report.delta = delta;
  DhtCertificate raised = cert;
  raised.eps = cert.eps + delta;
  report.up_shift = check_certificate(x, y.shifted(delta), raised);
  report.down_shift = check_certificate(x, y.shifted(-delta), cert);
  return report;
}

}  // namespace homdist
