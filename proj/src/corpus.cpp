#include "homdist/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "homdist/bottleneck.hpp"

namespace homdist {

namespace fs = std::filesystem;

int CorpusReport::exit_code() const {
  bool failed = false;
  for (const auto& p : pairs) {
    if (p.falsified) return 3;
    failed = failed || !p.failures.empty();
  }
  return failed ? 1 : 0;
}

namespace {

bool leq(double a, double b) { return a <= b + kCorpusTolerance; }

void check_certificate_use(PairReport& report, const FilteredComplex& x, const FilteredComplex& y,
                           const DhtCertificate& cert, const std::string& label) {
  auto stability = verify_stability(x, y, cert, kCorpusMaxDegree);
  if (stability.falsified) {
    report.falsified = true;
    report.failures.push_back(label + " certificate: bottleneck exceeds eps (stability falsified)");
  }
  report.stability.push_back(std::move(stability));
  for (double delta : kProbeDeltas) {
    auto probe = upshift_asymmetry_probe(x, y, cert, delta);
    if (!probe.up_shift) {
      report.failures.push_back(label + " certificate: up-shift by " + format_distance(delta) +
                                " not re-certified (" + std::string(condition_name(probe.up_shift.violated)) + ")");
    }
    report.probes.push_back({label, std::move(probe)});
  }
}

PairReport run_pair(const fs::path& dir, const SearchOptions& options) {
  PairReport report;
  report.name = dir.filename().string();
  const auto x_path = dir / "x.cplx";
  const auto y_path = dir / "y.cplx";
  if (!fs::exists(x_path) || !fs::exists(y_path)) {
    throw CorpusLayoutError("pair '" + report.name + "' lacks x.cplx or y.cplx");
  }
  const auto xi = load_instance(x_path.string());
  const auto yi = load_instance(y_path.string());
  const auto x = xi.filtered();
  const auto y = yi.filtered();

  report.same_domain = *xi.complex == *yi.complex;
  const auto dx = compute_diagrams(x, kCorpusMaxDegree);
  const auto dy = compute_diagrams(y, kCorpusMaxDegree);
  for (int k = 0; k <= kCorpusMaxDegree; ++k) {
    report.bottleneck.push_back(
        bottleneck_distance(dx[static_cast<std::size_t>(k)], dy[static_cast<std::size_t>(k)]).distance);
  }
  const double d_b = *std::max_element(report.bottleneck.begin(), report.bottleneck.end());
  if (report.same_domain) report.linf = linf_distance(xi.function, yi.function);
  if (xi.complex->vertex_count() <= 9 && yi.complex->vertex_count() <= 9) {
    report.np_upper = natural_pseudo_upper(*xi.complex, xi.function, *yi.complex, yi.function);
  }

  const auto cert_path = dir / "cert.txt";
  if (fs::exists(cert_path)) {
    std::istringstream in(read_file(cert_path.string()));
    const auto cert = parse_certificate(in, xi.complex, yi.complex, cert_path.string());
    report.shipped_eps = cert.eps;
    report.shipped_check = check_certificate(x, y, cert);
    if (!*report.shipped_check) {
      report.failures.push_back("shipped certificate rejected: " +
                                std::string(condition_name(report.shipped_check->violated)) + " (" +
                                report.shipped_check->detail + ")");
    } else {
      report.dht_upper = std::min(report.dht_upper, cert.eps);
      check_certificate_use(report, x, y, cert, "shipped");
    }
  }

  if (xi.complex->vertex_count() <= kSearchVertexLimit && yi.complex->vertex_count() <= kSearchVertexLimit) {
    const auto found = search_certificate(x, y, options);
    report.searched_eps = found.eps_upper;
    if (found.certificate) {
      report.dht_upper = std::min(report.dht_upper, found.eps_upper);
      check_certificate_use(report, x, y, *found.certificate, "searched");
    }
  }

  if (report.dht_upper < kInfinity && !leq(d_b, report.dht_upper)) {
    report.failures.push_back("sandwich: bottleneck " + format_distance(d_b) + " > dht_upper " +
                              format_distance(report.dht_upper));
  }
  if (report.np_upper < kInfinity) {
    if (!leq(report.dht_upper, report.np_upper)) {
      report.failures.push_back("sandwich: dht_upper " + format_distance(report.dht_upper) + " > np_upper " +
                                format_distance(report.np_upper));
    }
    if (!leq(d_b, report.np_upper)) {
      report.failures.push_back("sandwich: bottleneck " + format_distance(d_b) + " > np_upper " +
                                format_distance(report.np_upper));
    }
  }
  if (report.linf && !leq(report.dht_upper, *report.linf)) {
    report.failures.push_back("sandwich: dht_upper " + format_distance(report.dht_upper) + " > linf " +
                              format_distance(*report.linf));
  }
  return report;
}

}  // namespace

CorpusReport run_corpus(const std::string& directory, const SearchOptions& options) {
  if (!fs::is_directory(directory)) throw CorpusLayoutError("corpus directory '" + directory + "' not found");
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  if (dirs.empty()) throw CorpusLayoutError("corpus directory '" + directory + "' has no pairs");
  std::sort(dirs.begin(), dirs.end());
  CorpusReport report;
  for (const auto& d : dirs) report.pairs.push_back(run_pair(d, options));
  return report;
}

void write_corpus_summary(std::ostream& out, const CorpusReport& report) {
  out << "pair\tquantity\tvalue\n";
  for (const auto& p : report.pairs) {
    for (std::size_t k = 0; k < p.bottleneck.size(); ++k) {
      out << p.name << "\tbottleneck" << k << '\t' << format_distance(p.bottleneck[k]) << '\n';
    }
    if (p.linf) out << p.name << "\tlinf\t" << format_distance(*p.linf) << '\n';
    out << p.name << "\tnp_upper\t" << format_distance(p.np_upper) << '\n';
    if (p.shipped_eps) {
      out << p.name << "\tshipped_eps\t" << format_distance(*p.shipped_eps) << '\t'
          << (p.shipped_check && p.shipped_check->ok() ? "valid" : "rejected") << '\n';
    }
    if (p.searched_eps) {
      out << p.name << "\tsearched_eps\t" << format_distance(*p.searched_eps)
          << (*p.searched_eps == kInfinity ? "\tno certificate found" : "") << '\n';
    }
    out << p.name << "\tdht_upper\t" << format_distance(p.dht_upper) << '\n';
    for (const auto& probe : p.probes) {
      out << p.name << "\tprobe_" << probe.certificate << "_delta" << format_distance(probe.report.delta)
          << "\tup=" << (probe.report.up_shift ? "certified" : "rejected")
          << " down=" << (probe.report.down_shift ? "certified" : "rejected") << '\n';
    }
    for (const auto& f : p.failures) out << p.name << "\tFAIL\t" << f << '\n';
    out << p.name << "\tstatus\t" << (p.failures.empty() ? "ok" : "FAILED") << '\n';
  }
}

}  // namespace homdist
