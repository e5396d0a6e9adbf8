#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "homdist/dht.hpp"
#include "homdist/io.hpp"

namespace homdist {

/// Raised for an unusable corpus directory (missing, empty, or a pair
/// without its instance files).
class CorpusLayoutError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

struct ProbeObservation {
  std::string certificate;  // "shipped" or "searched"
  ProbeReport report;
};

/// Everything computed for one corpus pair directory.
struct PairReport {
  std::string name;
  bool same_domain = false;
  std::vector<double> bottleneck;  // per degree 0..max_degree
  std::optional<double> linf;
  double np_upper = kInfinity;
  std::optional<double> shipped_eps;
  std::optional<CertificateCheck> shipped_check;
  std::optional<double> searched_eps;  // set when search ran; may be infinity
  double dht_upper = kInfinity;
  std::vector<StabilityReport> stability;
  std::vector<ProbeObservation> probes;
  std::vector<std::string> failures;
  bool falsified = false;
};

struct CorpusReport {
  std::vector<PairReport> pairs;

  /// 0 all checks pass, 1 a check failed, 3 a stability inequality failed.
  int exit_code() const;
};

inline constexpr int kCorpusMaxDegree = 2;
inline constexpr double kCorpusTolerance = 1e-9;
inline const std::vector<double> kProbeDeltas{0.25, 1.0};

/**
 * Runs every check on a corpus directory. Each subdirectory is one pair and
 * holds `x.cplx` and `y.cplx` (complex + function files) and optionally
 * `cert.txt`, a certificate for (x, y). Pairs are processed in name order.
 *
 * Per pair: bottleneck distances in degrees 0..2; the shipped certificate is
 * checked; certificates are searched when both complexes are small enough;
 * every valid certificate must satisfy the stability inequality; the chain
 * d_B <= dht_upper <= np_upper (and <= L∞ on shared domains) must hold;
 * up-shift probes must re-certify.
 */
CorpusReport run_corpus(const std::string& directory, const SearchOptions& options = {});

/// Tab-separated summary, one line per check.
void write_corpus_summary(std::ostream& out, const CorpusReport& report);

}  // namespace homdist
