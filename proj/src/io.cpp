#include "homdist/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <system_error>

namespace homdist {

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& message)
    : InvalidInput(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + message), line_(line) {}

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

/// Non-empty lines split on whitespace, comments stripped.
std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
    std::istringstream ss(text);
    Line line{number, {}};
    for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const Line& line, const std::string& message) const {
    throw ParseError(source_, line.number, message);
  }
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(source_, 0, message); }

  double number(const Line& line, const std::string& tok) const {
    if (tok == "inf" || tok == "+inf") return kInfinity;
    double value = 0.0;
    const char* first = tok.data();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) fail(line, "expected a number, got '" + tok + "'");
    return value;
  }

  double finite(const Line& line, const std::string& tok) const {
    const double v = number(line, tok);
    if (!std::isfinite(v)) fail(line, "expected a finite number, got '" + tok + "'");
    return v;
  }

  template <typename Int>
  Int integer(const Line& line, const std::string& tok) const {
    Int value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) fail(line, "expected an integer, got '" + tok + "'");
    return value;
  }

  void arity(const Line& line, std::size_t expected) const {
    if (line.tokens.size() != expected) {
      fail(line, "'" + line.tokens[0] + "' expects " + std::to_string(expected - 1) + " argument(s)");
    }
  }

 private:
  std::string source_;
};

}  // namespace

std::string format_exact(double x) {
  if (x == kInfinity) return "inf";
  if (x == -kInfinity) return "-inf";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  (void)ec;
  return std::string(buf.data(), ptr);
}

std::string format_distance(double x) {
  if (x == kInfinity) return "inf";
  if (x == -kInfinity) return "-inf";
  if (x == 0.0) return "0";
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.12g", x);
  return buf.data();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Instance parse_instance(std::istream& in, const std::string& source) {
  Reader r(source);
  const auto lines = tokenize(in);
  if (lines.empty()) r.fail("empty instance file");
  const auto& header = lines.front();
  if (header.tokens[0] != "n") r.fail(header, "first line must be 'n <vertex_count>'");
  r.arity(header, 2);
  const long long count = r.integer<long long>(header, header.tokens[1]);
  if (count <= 0) r.fail(header, "vertex count must be positive");
  if (lines.size() < static_cast<std::size_t>(count) + 1) r.fail("fewer vertex values than vertices");

  std::vector<double> values;
  for (long long i = 1; i <= count; ++i) {
    const auto& line = lines[static_cast<std::size_t>(i)];
    if (line.tokens.size() != 1) r.fail(line, "expected one vertex value");
    values.push_back(r.finite(line, line.tokens[0]));
  }

  std::vector<Simplex> simplices;
  for (std::size_t i = static_cast<std::size_t>(count) + 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.tokens[0] != "s") r.fail(line, "expected 's <v0> <v1> ...'");
    if (line.tokens.size() < 2) r.fail(line, "simplex without vertices");
    Simplex s;
    for (std::size_t t = 1; t < line.tokens.size(); ++t) {
      const int v = r.integer<int>(line, line.tokens[t]);
      if (v < 0 || v >= count) r.fail(line, "vertex " + line.tokens[t] + " out of range");
      s.push_back(v);
    }
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) r.fail(line, "simplex repeats a vertex");
    simplices.push_back(std::move(s));
  }
  if (simplices.empty()) r.fail("instance has no simplices");
  for (int v = 0; v < count; ++v) simplices.push_back({v});

  try {
    Instance inst{share(SimplicialComplex::from_simplices(simplices)), VertexFunction(std::move(values))};
    return inst;
  } catch (const ParseError&) {
    throw;
  } catch (const InvalidInput& e) {
    r.fail(e.what());
  }
}

Instance load_instance(const std::string& path) {
  std::istringstream in(read_file(path));
  return parse_instance(in, path);
}

void write_instance(std::ostream& out, const Instance& instance) {
  const auto& k = *instance.complex;
  out << "n " << k.vertex_count() << '\n';
  for (double v : instance.function.values()) out << format_exact(v) << '\n';
  for (const auto& s : k.simplices()) {
    bool maximal = true;
    for (int w = 0; w < k.vertex_count() && maximal; ++w) {
      if (std::binary_search(s.begin(), s.end(), w)) continue;
      Simplex bigger = s;
      bigger.insert(std::lower_bound(bigger.begin(), bigger.end(), w), w);
      if (k.contains(bigger)) maximal = false;
    }
    if (!maximal) continue;
    out << 's';
    for (int v : s) out << ' ' << v;
    out << '\n';
  }
}

void write_diagrams(std::ostream& out, const std::vector<PersistenceDiagram>& diagrams) {
  std::vector<std::pair<int, DiagramPoint>> rows;
  for (const auto& d : diagrams) {
    for (const auto& p : d.points) rows.emplace_back(d.degree, p);
  }
  std::sort(rows.begin(), rows.end());
  for (const auto& [degree, p] : rows) {
    out << degree << '\t' << format_exact(p.birth) << '\t' << format_exact(p.death) << '\n';
  }
}

std::vector<PersistenceDiagram> parse_diagrams(std::istream& in, const std::string& source) {
  Reader r(source);
  std::map<int, std::vector<DiagramPoint>> by_degree;
  int max_degree = 0;
  for (const auto& line : tokenize(in)) {
    if (line.tokens.size() != 3) r.fail(line, "expected 'degree birth death'");
    const int degree = r.integer<int>(line, line.tokens[0]);
    if (degree < 0) r.fail(line, "negative degree");
    const double birth = r.finite(line, line.tokens[1]);
    const double death = r.number(line, line.tokens[2]);
    if (std::isnan(death) || !(birth <= death)) r.fail(line, "death must not precede birth");
    by_degree[degree].push_back({birth, death});
    max_degree = std::max(max_degree, degree);
  }
  std::vector<PersistenceDiagram> out(static_cast<std::size_t>(max_degree) + 1);
  for (int d = 0; d <= max_degree; ++d) {
    out[static_cast<std::size_t>(d)].degree = d;
    out[static_cast<std::size_t>(d)].points = by_degree[d];
  }
  return out;
}

void write_merge_tree(std::ostream& out, const MergeTree& tree) {
  for (std::size_t i = 0; i < tree.size(); ++i) {
    out << "node " << tree.id(static_cast<int>(i)) << ' ' << format_exact(tree.height(static_cast<int>(i))) << '\n';
  }
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const int p = tree.parent(static_cast<int>(i));
    if (p != -1) out << "edge " << tree.id(static_cast<int>(i)) << ' ' << tree.id(p) << '\n';
  }
}

MergeTree parse_merge_tree(std::istream& in, const std::string& source) {
  Reader r(source);
  std::vector<std::int64_t> ids;
  std::vector<double> heights;
  std::map<std::int64_t, int> index;
  std::vector<std::pair<const Line*, std::pair<std::int64_t, std::int64_t>>> edges;
  const auto lines = tokenize(in);
  for (const auto& line : lines) {
    if (line.tokens[0] == "node") {
      r.arity(line, 3);
      const auto id = r.integer<std::int64_t>(line, line.tokens[1]);
      if (index.contains(id)) r.fail(line, "duplicate node id " + line.tokens[1]);
      index[id] = static_cast<int>(ids.size());
      ids.push_back(id);
      heights.push_back(r.finite(line, line.tokens[2]));
    } else if (line.tokens[0] == "edge") {
      r.arity(line, 3);
      edges.push_back({&line,
                       {r.integer<std::int64_t>(line, line.tokens[1]), r.integer<std::int64_t>(line, line.tokens[2])}});
    } else {
      r.fail(line, "expected 'node' or 'edge'");
    }
  }
  if (ids.empty()) r.fail("merge tree has no nodes");
  std::vector<int> parent(ids.size(), -1);
  for (const auto& [line, e] : edges) {
    auto c = index.find(e.first), p = index.find(e.second);
    if (c == index.end() || p == index.end()) r.fail(*line, "edge refers to an unknown node");
    if (parent[static_cast<std::size_t>(c->second)] != -1) r.fail(*line, "node has two parents");
    parent[static_cast<std::size_t>(c->second)] = p->second;
  }
  try {
    return MergeTree(std::move(heights), std::move(parent), std::move(ids));
  } catch (const InvalidInput& e) {
    r.fail(e.what());
  }
}

namespace {

void write_images(std::ostream& out, const std::vector<int>& images) {
  for (std::size_t i = 0; i < images.size(); ++i) out << (i ? " " : "") << images[i];
  out << '\n';
}

}  // namespace

void write_certificate(std::ostream& out, const DhtCertificate& cert) {
  out << "eps " << format_exact(cert.eps) << '\n';
  out << "factor " << format_exact(cert.factor) << '\n';
  out << "phi ";
  write_images(out, cert.phi.images());
  out << "psi ";
  write_images(out, cert.psi.images());
  out << "chainx " << cert.chain_x.size() << '\n';
  for (const auto& m : cert.chain_x) write_images(out, m.images());
  out << "chainy " << cert.chain_y.size() << '\n';
  for (const auto& m : cert.chain_y) write_images(out, m.images());
}

DhtCertificate parse_certificate(std::istream& in, const ComplexPtr& x, const ComplexPtr& y,
                                 const std::string& source) {
  Reader r(source);
  const auto lines = tokenize(in);
  std::optional<double> eps;
  double factor = kDefaultControlFactor;
  std::optional<std::vector<int>> phi, psi;
  std::optional<std::vector<std::vector<int>>> chain_x, chain_y;

  auto images = [&](const Line& line, std::size_t from, int expected) {
    std::vector<int> out;
    for (std::size_t t = from; t < line.tokens.size(); ++t) out.push_back(r.integer<int>(line, line.tokens[t]));
    if (static_cast<int>(out.size()) != expected) {
      r.fail(line, "expected " + std::to_string(expected) + " vertex images, got " + std::to_string(out.size()));
    }
    return out;
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto& key = line.tokens[0];
    if (key == "eps") {
      r.arity(line, 2);
      eps = r.finite(line, line.tokens[1]);
    } else if (key == "factor") {
      r.arity(line, 2);
      factor = r.finite(line, line.tokens[1]);
    } else if (key == "phi") {
      phi = images(line, 1, x->vertex_count());
    } else if (key == "psi") {
      psi = images(line, 1, y->vertex_count());
    } else if (key == "chainx" || key == "chainy") {
      r.arity(line, 2);
      const auto k = r.integer<std::size_t>(line, line.tokens[1]);
      if (k == 0) r.fail(line, "chains must contain at least one map");
      if (i + k >= lines.size()) r.fail(line, "chain is truncated");
      const int n = key == "chainx" ? x->vertex_count() : y->vertex_count();
      std::vector<std::vector<int>> maps;
      for (std::size_t j = 1; j <= k; ++j) maps.push_back(images(lines[i + j], 0, n));
      (key == "chainx" ? chain_x : chain_y) = std::move(maps);
      i += k;
    } else {
      r.fail(line, "unknown certificate key '" + key + "'");
    }
  }
  if (!eps) r.fail("certificate lacks 'eps'");
  if (!phi || !psi) r.fail("certificate lacks 'phi' or 'psi'");
  if (!chain_x || !chain_y) r.fail("certificate lacks 'chainx' or 'chainy'");

  try {
    ContiguityChain cx, cy;
    for (auto& m : *chain_x) cx.emplace_back(x, x, std::move(m));
    for (auto& m : *chain_y) cy.emplace_back(y, y, std::move(m));
    return DhtCertificate{SimplicialMap(x, y, std::move(*phi)), SimplicialMap(y, x, std::move(*psi)), *eps,
                          std::move(cx), std::move(cy), factor};
  } catch (const InvalidInput& e) {
    r.fail(e.what());
  }
}

}  // namespace homdist
