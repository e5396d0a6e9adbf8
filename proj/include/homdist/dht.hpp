#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "homdist/complex.hpp"
#include "homdist/persistence.hpp"

namespace homdist {

inline constexpr double kDefaultControlFactor = 2.0;
inline constexpr int kDefaultMaxChainLength = 4;

/**
 * Witness that the persistent homotopy type distance of (X, f) and (Y, g) is
 * at most `eps`.
 *
 * phi: X -> Y and psi: Y -> X are simplicial maps that raise the function by
 * at most eps. chain_x runs from psi∘phi to id_X by contiguous steps and sweeps
 * no higher than f + factor·eps; chain_y does the same on Y with g.
 */
struct DhtCertificate {
  SimplicialMap phi;
  SimplicialMap psi;
  double eps = 0.0;
  ContiguityChain chain_x;
  ContiguityChain chain_y;
  double factor = kDefaultControlFactor;
};

/// Conditions checked by `check_certificate`, in evaluation order.
enum class CertificateCondition {
  kNone,
  kBadParameters,        // eps negative or not finite, factor not positive
  kPhiNotSimplicial,
  kPsiNotSimplicial,
  kChainXNotContiguous,
  kChainYNotContiguous,
  kChainXEndpoints,      // chain_x does not run from psi∘phi to id_X
  kChainYEndpoints,
  kShiftPhi,             // g(phi(v)) > f(v) + eps
  kShiftPsi,             // f(psi(w)) > g(w) + eps
  kControlX,             // sweep of chain_x exceeds f + factor·eps
  kControlY,
};

std::string_view condition_name(CertificateCondition c);

struct CertificateCheck {
  CertificateCondition violated = CertificateCondition::kNone;
  std::string detail;

  bool ok() const noexcept { return violated == CertificateCondition::kNone; }
  explicit operator bool() const noexcept { return ok(); }
};

/// Checks every certificate condition against the lower-star filtrations x
/// and y. Throws InvalidInput when the maps or chains do not connect x and y
/// at all (wrong source/target, empty chains); every other failure is
/// reported as the first violated condition.
///
/// Vertex-level shift and control checks suffice: under a lower-star
/// filtration a simplex takes the max of its vertex values, so a bound that
/// holds at every vertex holds on every simplex.
CertificateCheck check_certificate(const FilteredComplex& x, const FilteredComplex& y,
                                   const DhtCertificate& cert);

/// Smallest eps at which the certificate's maps and chains pass, given its
/// factor; infinity if a structural condition fails.
double minimal_eps(const FilteredComplex& x, const FilteredComplex& y, const DhtCertificate& cert);

struct SearchOptions {
  int max_chain_length = kDefaultMaxChainLength;  // contiguity steps per chain
  double factor = kDefaultControlFactor;
};

struct SearchResult {
  /// kInfinity means no certificate was found within the limits; it does not
  /// mean the distance is infinite.
  double eps_upper = kInfinity;
  std::optional<DhtCertificate> certificate;
};

inline constexpr int kSearchVertexLimit = 6;

/**
 * Exhaustive search over simplicial map pairs (phi, psi), with minimax
 * contiguity chains to the identity of at most `max_chain_length` steps.
 * Returns the smallest certified eps; ties resolve to the lexicographically
 * smallest (phi, psi). Both complexes must have at most kSearchVertexLimit
 * vertices.
 */
SearchResult search_certificate(const FilteredComplex& x, const FilteredComplex& y,
                                const SearchOptions& options = {});

/// Certificate from the identity maps on a shared complex; valid at eps = L∞.
DhtCertificate identity_certificate(const FilteredComplex& x, const FilteredComplex& y);

struct DegreeComparison {
  int degree = 0;
  double bottleneck = 0.0;
  double eps = 0.0;
  double slack = 0.0;  // eps - bottleneck
  bool holds = true;
};

struct StabilityReport {
  std::vector<DegreeComparison> degrees;
  /// Set when some degree has bottleneck > eps + tolerance. This would
  /// contradict the stability theorem and always indicates a bug.
  bool falsified = false;
};

inline constexpr double kStabilityTolerance = 1e-9;

/// Compares bottleneck distances of all degrees <= max_degree with the
/// certificate's eps. Throws InvalidInput if the certificate does not pass.
StabilityReport verify_stability(const FilteredComplex& x, const FilteredComplex& y,
                                 const DhtCertificate& cert, int max_degree);

struct ProbeReport {
  double delta = 0.0;
  /// Same maps certify (f, g + delta) at eps + delta. Expected always.
  CertificateCheck up_shift;
  /// Same maps certify (f, g - delta) at eps. Observational.
  CertificateCheck down_shift;
};

/// Re-checks a valid certificate against g shifted up and down by delta.
/// Throws InvalidInput if the certificate is invalid or delta is negative.
ProbeReport upshift_asymmetry_probe(const FilteredComplex& x, const FilteredComplex& y,
                                    const DhtCertificate& cert, double delta);

}  // namespace homdist
