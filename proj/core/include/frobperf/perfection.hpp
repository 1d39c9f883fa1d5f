#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frobperf/subalgebra.hpp"

namespace frobperf {

// A uniform p-power-root system: if r*(a^p - a) = 0 then r*a^{p^n} = r*a for
// every n, so the target r*a lies in every level of the image chain.
struct CoherentCertificate {
  Polynomial a; // ambient element
  Polynomial r; // element of the base, embedded in the ambient ring
};

// True iff r*(a^p - a) reduces to zero in A. Throws structural_error when r
// involves the ambient's own generators.
bool verify_coherent_certificate(const AlgebraPtr& A, const CoherentCertificate& cert);

enum class PreperfStatus { stabilized, not_stabilized, truncated };

struct PreperfectionReport {
  PreperfStatus status = PreperfStatus::not_stabilized;
  unsigned stabilized_at = 0;          // n when status == stabilized
  unsigned max_steps = 0;
  GBStatus truncation = GBStatus::ok;  // reason when status == truncated
  unsigned truncated_at = 0;           // level that could not be completed

  struct Level {
    unsigned n;
    Subalgebra subalgebra;            // B_n
    Subalgebra::Presentation pres;
    Tri injective;                    // kernel of twist(A,n-1)^(p) -> twist(A,n-1)
    Tri equals_next;                  // B_n = B_{n+1}? (set once both exist)
  };
  std::vector<Level> chain; // B_1 .. B_k

  struct CertificateOutcome {
    CoherentCertificate cert;
    bool valid = false;               // r*(a^p - a) = 0 held
    Polynomial target;                // r*a, reduced
    std::vector<Tri> member_per_level; // spot-checks of the induction
  };
  std::vector<CertificateOutcome> certificates;

  struct ProbeOutcome {
    Polynomial element;
    std::vector<Tri> member_per_level;
    std::optional<unsigned> falsified_at; // first level with a definite no
  };
  std::vector<ProbeOutcome> probes;

  // Stabilized: the presentation of the stable level (exact answer).
  // Otherwise: the certified lower bound when anything was certified.
  std::optional<Subalgebra::Presentation> candidate;
  std::string candidate_grade; // "stabilized-chain" | "certified-lower-bound"

  // Bounds reported when the chain did not stabilize. The lower bound is the
  // subalgebra generated by certified targets (always contains the base); the
  // upper bound is generated by the probes never falsified — a bound on
  // generator membership, not on the full preperfection.
  std::optional<Subalgebra::Presentation> lower_bound;
  std::optional<Subalgebra::Presentation> upper_bound;
};

// Builds the image chain B_1..B_k until stabilization, truncation, or
// max_steps, collecting per-level injectivity evidence, certificate
// spot-checks, and probe falsifications. Probes default to the
// presentation's generators; `probes` adds user-supplied elements.
PreperfectionReport preperfect(const AlgebraPtr& A, unsigned max_steps = 4,
                               const std::vector<Polynomial>& probes = {},
                               const std::vector<CoherentCertificate>& certs = {},
                               const Budget& budget = {});

enum class Ramification { unramified, ramified, unknown };

inline const char* to_string(Ramification r) {
  switch (r) {
    case Ramification::unramified: return "unramified";
    case Ramification::ramified: return "ramified";
    default: return "unknown";
  }
}

struct UnramifiedReport {
  Ramification verdict = Ramification::unknown;
  // yes only for the certified square shape: as many relations as generators
  // with a unit Jacobian determinant. Weaker "unramified" never upgrades.
  Tri etale = Tri::indeterminate;
};

// Unramified iff relations + all maximal minors of the Jacobian of the own
// relations by the own generators generate the unit ideal; fewer relations
// than generators forces ramified unless the algebra is zero.
UnramifiedReport unramified_check(const AlgebraPtr& B, const Budget& budget = {});

struct RelPerfReport {
  Tri verdict = Tri::indeterminate;
  std::string reason;
  std::optional<Polynomial> witness; // kernel element or non-member generator
};

// Yes iff the relative Frobenius kernel is zero and every generator lies in
// B_1 — i.e. Frob_{A/R} is injective and surjective onto A.
RelPerfReport is_relatively_perfect(const AlgebraPtr& A, const Budget& budget = {});

struct CrosscheckReport {
  Tri pi0_unramified = Tri::indeterminate;
  Tri subalgebras_equal = Tri::indeterminate;
  Tri frobenius_fixed = Tri::indeterminate;
  // "isomorphisms" | "counterexample_to_perfectness" | "mismatch" | "indeterminate"
  std::string overall = "indeterminate";
};

// The agreement harness: do the connected-components candidate and the
// preperfection candidate generate the same subalgebra of A, is the
// components side unramified where the comparison demands it, and is it
// fixed by Frobenius?
CrosscheckReport crosscheck_pi0_preperfection(const AlgebraMorphism& pi0_side,
                                              const AlgebraMorphism& preperf_side,
                                      const Budget& budget = {});

} // namespace frobperf
