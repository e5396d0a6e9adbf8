#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "homdist/complex.hpp"
#include "homdist/dht.hpp"
#include "homdist/mergetree.hpp"
#include "homdist/persistence.hpp"

namespace homdist {

/// Malformed text input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public InvalidInput {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A complex together with a vertex function.
struct Instance {
  ComplexPtr complex;
  VertexFunction function;

  FilteredComplex filtered() const { return lower_star(complex, function); }
};

// Complex + function format ('#' starts a comment):
//   n <vertex_count>
//   <value of vertex 0>
//   ...
//   s <v0> <v1> ...        (one simplex per line, face-closed on load)
Instance parse_instance(std::istream& in, const std::string& source = "<input>");
Instance load_instance(const std::string& path);
/// Writes the maximal simplices only.
void write_instance(std::ostream& out, const Instance& instance);

/// Shortest decimal that reads back to the same double; "inf" for infinity.
std::string format_exact(double x);
/// Twelve significant digits; "inf" for infinity.
std::string format_distance(double x);

// Diagram TSV: degree<TAB>birth<TAB>death, sorted by (degree, birth, death).
void write_diagrams(std::ostream& out, const std::vector<PersistenceDiagram>& diagrams);
/// One diagram per degree from 0 to the largest degree present.
std::vector<PersistenceDiagram> parse_diagrams(std::istream& in, const std::string& source = "<input>");

// Merge tree format: "node <id> <height>" and "edge <child-id> <parent-id>".
void write_merge_tree(std::ostream& out, const MergeTree& tree);
MergeTree parse_merge_tree(std::istream& in, const std::string& source = "<input>");

// Certificate format:
//   eps <float>
//   factor <float>
//   phi <images of X's vertices>
//   psi <images of Y's vertices>
//   chainx <k>   followed by k lines of vertex images
//   chainy <k>   likewise
void write_certificate(std::ostream& out, const DhtCertificate& cert);
DhtCertificate parse_certificate(std::istream& in, const ComplexPtr& x, const ComplexPtr& y,
                                 const std::string& source = "<input>");

/// Whole file contents; throws ParseError if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace homdist
