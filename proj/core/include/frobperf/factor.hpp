#pragma once

#include <cstdint>
#include <vector>

#include "frobperf/polynomial.hpp"

namespace frobperf {

struct UnivariateFactor {
  Polynomial factor; // monic irreducible
  std::uint32_t multiplicity;
};

struct FactorResult {
  std::uint32_t unit; // leading coefficient of the input
  std::vector<UnivariateFactor> factors;
};

// Complete factorization of a nonzero univariate polynomial over F_p:
// square-free decomposition, distinct-degree splitting, then Cantor-Zassenhaus
// equal-degree splitting. The probabilistic step draws from an RNG seeded with
// `seed`, so results are reproducible; factors are additionally returned in a
// canonical order (degree, then coefficient vector), making the output
// independent of the random choices.
//
// The input may be expressed in a multivariate ring as long as at most one
// variable occurs; a genuinely multivariate input is a structural error.
FactorResult univariate_factor(const Polynomial& f, std::uint64_t seed);

} // namespace frobperf
