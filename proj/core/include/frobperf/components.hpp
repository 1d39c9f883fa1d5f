#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "frobperf/algebra.hpp"

namespace frobperf {

// Connected-component decomposition of Spec A for A over the prime field.
// Cluster ideals are pairwise comaximal and intersect exactly in the relation
// ideal; the idempotents are complete and orthogonal, verified exactly.
// Splitting into clusters is best-effort: a piece that resisted every
// splitting heuristic may secretly be disconnected, so the decomposition is a
// certified coarsening of the true component set.
struct ComponentDecomposition {
  AlgebraPtr algebra;
  std::vector<Ideal> component_ideals; // contain the full relation ideal
  // e_i = 1 on piece i, 0 elsewhere; stored as short canonical representatives
  // (congruent to the reduced forms).
  std::vector<Polynomial> idempotents;
  bool certified_disjoint = true;      // pairwise comaximality verified
  bool best_effort = false;            // a budget or depth cap stopped splitting
};

// Recursively splits the relation ideal (univariate eliminant factorization,
// then verified saturation splits), merges non-comaximal pieces, and builds
// the idempotents by effective CRT. The seed steers the probabilistic
// equal-degree factorization only; results are deterministic for a fixed
// seed. Throws budget_exhausted if the exactness layer (intersections, CRT)
// cannot finish within budget.
ComponentDecomposition split_components(const AlgebraPtr& A, const Budget& budget = {},
                                        std::uint64_t seed = 0);

// For 1 in I + J (verified here), returns e with e = 0 mod I, e = 1 mod J,
// extracted from a cofactor expression 1 = a + b, a in I, b in J.
Polynomial idempotent_from_comaximal(const Ideal& I, const Ideal& J,
                                     const Budget& budget = {});

// A presentation-quality representative of e's class: the first single
// monomial (degrees ascending, then lexicographic) congruent to e modulo the
// relations, if one exists within a bounded search; otherwise the normal
// form. Deterministic.
Polynomial short_representative(const Algebra& A, const Polynomial& e);

// Orbits of the equivalence generated by s(r) ~ t(r): the coequalizer of a
// finite arrow set over a finite universe {0, ..., universe-1}. Orbits and
// their members are sorted ascending.
std::vector<std::vector<std::size_t>> groupoid_pi0(
    std::size_t universe,
    const std::vector<std::pair<std::size_t, std::size_t>>& arrows);

struct Pi0Ring {
  AlgebraPtr algebra;
  std::optional<AlgebraMorphism> inclusion; // into the decomposed algebra
};

// The etale algebra of the decomposition: F_p for one component,
// F_p[e]/(e^2 - e) for two, and the full orthogonal-idempotent presentation
// for k >= 3; the inclusion sends presentation idempotents to the computed
// ones.
Pi0Ring pi0_ring(const ComponentDecomposition& decomp);

} // namespace frobperf
