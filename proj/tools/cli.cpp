#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "homdist/bottleneck.hpp"
#include "homdist/corpus.hpp"
#include "homdist/dht.hpp"
#include "homdist/io.hpp"
#include "homdist/mergetree.hpp"
#include "homdist/persistence.hpp"

namespace homdist::cli {

namespace {

enum class FileKind { kInstance, kMergeTree, kDiagram };

FileKind sniff(const std::string& text) {
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;
    if (tok == "n") return FileKind::kInstance;
    if (tok == "node" || tok == "edge") return FileKind::kMergeTree;
    return FileKind::kDiagram;
  }
  return FileKind::kInstance;
}

std::vector<PersistenceDiagram> diagrams_from(const std::string& path, int max_degree) {
  const auto text = read_file(path);
  std::istringstream in(text);
  switch (sniff(text)) {
    case FileKind::kInstance:
      return compute_diagrams(parse_instance(in, path).filtered(), max_degree);
    case FileKind::kMergeTree:
      return {diagram_from_tree(parse_merge_tree(in, path))};
    case FileKind::kDiagram:
      break;
  }
  return parse_diagrams(in, path);
}

PersistenceDiagram degree_of(const std::vector<PersistenceDiagram>& ds, int degree) {
  if (degree < static_cast<int>(ds.size())) return ds[static_cast<std::size_t>(degree)];
  return PersistenceDiagram{degree, {}};
}

MergeTree tree_from(const std::string& path) {
  const auto text = read_file(path);
  std::istringstream in(text);
  if (sniff(text) == FileKind::kInstance) return build_merge_tree(parse_instance(in, path).filtered());
  return parse_merge_tree(in, path);
}

DhtCertificate certificate_from(const std::string& path, const Instance& x, const Instance& y) {
  std::istringstream in(read_file(path));
  return parse_certificate(in, x.complex, y.complex, path);
}

/// Writes to `path` when given, else to `fallback`.
template <typename Emit>
void emit_to(const std::string& path, std::ostream& fallback, Emit&& emit) {
  if (path.empty() || path == "-") {
    emit(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ParseError(path, 0, "cannot open for writing");
  emit(file);
}

void print_check(std::ostream& out, const CertificateCheck& check) {
  out << "valid\t" << (check ? "true" : "false") << '\n';
  if (!check) out << "violated\t" << condition_name(check.violated) << '\t' << check.detail << '\n';
}

void print_stability(std::ostream& out, const StabilityReport& report) {
  out << "degree\tbottleneck\teps\tslack\tholds\n";
  for (const auto& row : report.degrees) {
    out << row.degree << '\t' << format_distance(row.bottleneck) << '\t' << format_distance(row.eps) << '\t'
        << format_distance(row.slack) << '\t' << (row.holds ? "yes" : "NO") << '\n';
  }
  if (report.falsified) out << "FALSIFIED\tbottleneck exceeds certified eps\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distances between filtered simplicial complexes: persistence diagrams, bottleneck, "
               "L-infinity, natural pseudo-distance bounds, merge-tree interleaving and certified "
               "homotopy type distance bounds."};
  app.require_subcommand(1);

  std::string input, input_b, cert_path, output;
  int max_degree = 2;
  int degree = 0;
  bool matching = false;

  auto* diagram = app.add_subcommand("diagram", "Persistence diagrams of a complex + function file (TSV)");
  diagram->add_option("input", input, "Complex + function file")->required();
  diagram->add_option("--max-degree", max_degree, "Highest homology degree")->capture_default_str();
  diagram->add_option("-o,--output", output, "Output path (default stdout)");

  auto* bottleneck = app.add_subcommand("bottleneck", "Bottleneck distance between two diagrams");
  bottleneck->add_option("a", input, "Complex + function file or diagram TSV")->required();
  bottleneck->add_option("b", input_b, "Complex + function file or diagram TSV")->required();
  bottleneck->add_option("--degree", degree, "Homology degree")->capture_default_str();
  bottleneck->add_flag("--matching", matching, "Also print an optimal matching (i<TAB>j, -1 = diagonal)");

  auto* linf = app.add_subcommand("linf", "L-infinity distance of two functions on the same complex");
  linf->add_option("a", input)->required();
  linf->add_option("b", input_b)->required();

  auto* np = app.add_subcommand("np-bound", "Upper bound on the natural pseudo-distance via simplicial isomorphisms");
  np->add_option("a", input)->required();
  np->add_option("b", input_b)->required();

  auto* mergetree = app.add_subcommand("mergetree", "Merge trees");
  mergetree->require_subcommand(1);
  auto* mt_build = mergetree->add_subcommand("build", "Merge tree of a connected complex + function file");
  mt_build->add_option("input", input)->required();
  mt_build->add_option("-o,--output", output);
  auto* mt_interleave = mergetree->add_subcommand("interleave", "Interleaving test or distance");
  mt_interleave->add_option("a", input, "Merge tree or complex + function file")->required();
  mt_interleave->add_option("b", input_b, "Merge tree or complex + function file")->required();
  double eps = 0.0;
  bool distance = false;
  auto* eps_opt = mt_interleave->add_option("--eps", eps, "Decide whether an eps-interleaving exists");
  auto* dist_opt = mt_interleave->add_flag("--distance", distance, "Compute the interleaving distance");
  eps_opt->excludes(dist_opt);

  auto* dht = app.add_subcommand("dht", "Certified upper bounds on the homotopy type distance");
  dht->require_subcommand(1);
  auto* dht_check = dht->add_subcommand("check", "Check a certificate");
  auto* dht_search = dht->add_subcommand("search", "Search for the best certificate (<= 6 vertices each)");
  auto* dht_stability = dht->add_subcommand("stability", "Compare bottleneck distances with a certificate's eps");
  auto* dht_probe = dht->add_subcommand("probe", "Re-check a certificate after shifting g up and down");
  for (auto* sub : {dht_check, dht_search, dht_stability, dht_probe}) {
    sub->add_option("x", input, "Complex + function file for X")->required();
    sub->add_option("y", input_b, "Complex + function file for Y")->required();
  }
  for (auto* sub : {dht_check, dht_stability, dht_probe}) {
    sub->add_option("cert", cert_path, "Certificate file")->required();
  }
  SearchOptions search_options;
  dht_search->add_option("--max-chain", search_options.max_chain_length, "Contiguity steps per chain")
      ->capture_default_str();
  dht_search->add_option("--factor", search_options.factor, "Homotopy control factor")->capture_default_str();
  dht_search->add_option("-o,--output", output, "Write the certificate here");
  dht_stability->add_option("--max-degree", max_degree)->capture_default_str();
  double delta = 0.0;
  dht_probe->add_option("--delta", delta, "Shift applied to g")->required();

  auto* distances = app.add_subcommand("distances", "Several distances for one pair");
  distances->add_option("x", input)->required();
  distances->add_option("y", input_b)->required();
  bool want_linf = false, want_bottleneck = false, want_np = false, want_interleaving = false, want_dht = false;
  distances->add_flag("--linf", want_linf);
  distances->add_flag("--bottleneck", want_bottleneck);
  auto* degree_opt = distances->add_option("--degree", degree, "Restrict --bottleneck to one degree");
  distances->add_option("--max-degree", max_degree)->capture_default_str();
  distances->add_flag("--np-bound", want_np);
  distances->add_flag("--interleaving", want_interleaving);
  distances->add_flag("--dht-search", want_dht);
  distances->add_option("--max-chain", search_options.max_chain_length)->capture_default_str();
  distances->add_option("--cert", cert_path, "Certificate to check and compare against");

  auto* corpus = app.add_subcommand("corpus", "Run every check on a corpus directory");
  corpus->add_option("dir", input)->required();

  std::vector<std::string> argv_storage = args;
  if (argv_storage.empty()) argv_storage.emplace_back("homdist");
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (diagram->parsed()) {
      const auto inst = load_instance(input);
      const auto ds = compute_diagrams(inst.filtered(), max_degree);
      emit_to(output, out, [&](std::ostream& o) { write_diagrams(o, ds); });
      return kSuccess;
    }
    if (bottleneck->parsed()) {
      const auto a = degree_of(diagrams_from(input, std::max(degree, 0)), degree);
      const auto b = degree_of(diagrams_from(input_b, std::max(degree, 0)), degree);
      const auto result = bottleneck_distance(a, b);
      out << "bottleneck" << degree << '\t' << format_distance(result.distance) << '\n';
      if (matching) {
        for (auto [i, j] : result.matching.pairs) out << i << '\t' << j << '\n';
      }
      return kSuccess;
    }
    if (linf->parsed()) {
      const auto a = load_instance(input);
      const auto b = load_instance(input_b);
      if (!(*a.complex == *b.complex)) {
        err << "linf requires both functions on the same complex\n";
        return kUsageError;
      }
      out << "linf\t" << format_distance(linf_distance(a.function, b.function)) << '\n';
      return kSuccess;
    }
    if (np->parsed()) {
      const auto a = load_instance(input);
      const auto b = load_instance(input_b);
      out << "np_upper\t"
          << format_distance(natural_pseudo_upper(*a.complex, a.function, *b.complex, b.function)) << '\n';
      return kSuccess;
    }
    if (mt_build->parsed()) {
      const auto tree = build_merge_tree(load_instance(input).filtered());
      emit_to(output, out, [&](std::ostream& o) { write_merge_tree(o, tree); });
      return kSuccess;
    }
    if (mt_interleave->parsed()) {
      const auto t1 = tree_from(input);
      const auto t2 = tree_from(input_b);
      if (distance) {
        const auto d = interleaving_distance(t1, t2);
        if (d.exact) {
          out << "interleaving\t" << format_distance(d.upper) << '\n';
        } else {
          out << "interleaving_lower\t" << format_distance(d.lower) << '\n';
          out << "interleaving_upper\t" << format_distance(d.upper) << '\n';
        }
        return kSuccess;
      }
      if (eps_opt->count() == 0) {
        err << "mergetree interleave needs --eps or --distance\n";
        return kUsageError;
      }
      const auto witness = find_interleaving(t1, t2, eps);
      out << "interleaved\t" << (witness ? "true" : "false") << '\n';
      if (witness) {
        for (std::size_t i = 0; i < witness->alpha.size(); ++i) {
          out << "alpha\t" << t1.id(t1.leaves()[i]) << '\t' << t2.id(witness->alpha[i].node) << '\t'
              << format_exact(witness->alpha[i].height) << '\n';
        }
        for (std::size_t j = 0; j < witness->beta.size(); ++j) {
          out << "beta\t" << t2.id(t2.leaves()[j]) << '\t' << t1.id(witness->beta[j].node) << '\t'
              << format_exact(witness->beta[j].height) << '\n';
        }
      }
      return kSuccess;
    }
    if (dht->parsed()) {
      const auto xi = load_instance(input);
      const auto yi = load_instance(input_b);
      const auto x = xi.filtered();
      const auto y = yi.filtered();
      if (dht_search->parsed()) {
        const auto result = search_certificate(x, y, search_options);
        out << "dht_upper\t" << format_distance(result.eps_upper) << '\n';
        if (!result.certificate) {
          out << "# no certificate found within the search limits\n";
          return kSuccess;
        }
        if (!output.empty()) {
          emit_to(output, out, [&](std::ostream& o) { write_certificate(o, *result.certificate); });
        } else {
          write_certificate(out, *result.certificate);
        }
        return kSuccess;
      }
      const auto cert = certificate_from(cert_path, xi, yi);
      if (dht_check->parsed()) {
        const auto check = check_certificate(x, y, cert);
        print_check(out, check);
        if (check) out << "dht_upper\t" << format_distance(cert.eps) << '\n';
        return check ? kSuccess : kPropertyFalsified;
      }
      if (dht_stability->parsed()) {
        if (auto check = check_certificate(x, y, cert); !check) {
          print_check(out, check);
          return kPropertyFalsified;
        }
        const auto report = verify_stability(x, y, cert, max_degree);
        print_stability(out, report);
        return report.falsified ? kStabilityFailure : kSuccess;
      }
      if (dht_probe->parsed()) {
        if (auto check = check_certificate(x, y, cert); !check) {
          print_check(out, check);
          return kPropertyFalsified;
        }
        const auto report = upshift_asymmetry_probe(x, y, cert, delta);
        out << "up_shift\t" << (report.up_shift ? "certified" : "rejected") << '\t'
            << format_distance(cert.eps + delta) << '\n';
        out << "down_shift\t" << (report.down_shift ? "certified" : "rejected") << '\t'
            << format_distance(cert.eps) << '\n';
        return report.up_shift ? kSuccess : kPropertyFalsified;
      }
    }
    if (distances->parsed()) {
      const auto xi = load_instance(input);
      const auto yi = load_instance(input_b);
      const bool same = *xi.complex == *yi.complex;
      if (want_linf && !same) {
        err << "--linf requires both functions on the same complex\n";
        return kUsageError;
      }
      if (degree_opt->count() > 0 && !want_bottleneck) {
        err << "--degree only applies to --bottleneck\n";
        return kUsageError;
      }
      if (!(want_linf || want_bottleneck || want_np || want_interleaving || want_dht || !cert_path.empty())) {
        err << "no distance requested\n";
        return kUsageError;
      }
      const auto x = xi.filtered();
      const auto y = yi.filtered();
      std::vector<double> bottlenecks;
      const int top = degree_opt->count() > 0 ? degree : max_degree;
      const int bottom = degree_opt->count() > 0 ? degree : 0;
      const auto dx = compute_diagrams(x, top);
      const auto dy = compute_diagrams(y, top);
      for (int k = bottom; k <= top; ++k) {
        bottlenecks.push_back(bottleneck_distance(dx[static_cast<std::size_t>(k)], dy[static_cast<std::size_t>(k)]).distance);
        if (want_bottleneck) out << "bottleneck" << k << '\t' << format_distance(bottlenecks.back()) << '\n';
      }
      if (want_linf) out << "linf\t" << format_distance(linf_distance(xi.function, yi.function)) << '\n';
      if (want_np) {
        out << "np_upper\t"
            << format_distance(natural_pseudo_upper(*xi.complex, xi.function, *yi.complex, yi.function)) << '\n';
      }
      if (want_interleaving) {
        const auto d = interleaving_distance(build_merge_tree(x), build_merge_tree(y));
        out << (d.exact ? "interleaving\t" : "interleaving_upper\t") << format_distance(d.upper) << '\n';
      }
      std::vector<double> certified;
      if (!cert_path.empty()) {
        const auto cert = certificate_from(cert_path, xi, yi);
        const auto check = check_certificate(x, y, cert);
        if (!check) {
          print_check(out, check);
          return kPropertyFalsified;
        }
        out << "dht_cert\t" << format_distance(cert.eps) << '\n';
        certified.push_back(cert.eps);
      }
      if (want_dht) {
        const auto result = search_certificate(x, y, search_options);
        out << "dht_upper\t" << format_distance(result.eps_upper) << '\n';
        if (result.certificate) certified.push_back(result.eps_upper);
      }
      for (double e : certified) {
        for (double b : bottlenecks) {
          if (b > e + kStabilityTolerance) {
            err << "stability violated: bottleneck " << format_distance(b) << " > eps " << format_distance(e) << '\n';
            return kStabilityFailure;
          }
        }
      }
      return kSuccess;
    }
    if (corpus->parsed()) {
      const auto report = run_corpus(input);
      write_corpus_summary(out, report);
      return report.exit_code();
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace homdist::cli
