#pragma once

#include <optional>
#include <vector>

#include "frobperf/algebra.hpp"

namespace frobperf {

// A finitely generated subalgebra of an ambient presented algebra, generated
// over the ambient's base by a list of elements. Construction builds the
// elimination cache: a basis of (ambient relations) + (y_i - g_i) in a block
// order that ranks the ambient's own generators above everything else, so an
// element lies in the subalgebra exactly when its normal form uses only base
// variables and tags.
class Subalgebra {
public:
  Subalgebra(AlgebraPtr ambient, std::vector<Polynomial> generators,
             const Budget& budget = {});

  const AlgebraPtr& ambient() const { return ambient_; }
  // Reduced and nonzero; zero generators are dropped.
  const std::vector<Polynomial>& generators() const { return gens_; }
  // ok unless the cache basis ran out of budget, which leaves every query
  // indeterminate.
  GBStatus cache_status() const { return status_; }

  // Witnesses live here: the base variables followed by one tag per
  // generator (named y1, y2, ... where those names are free).
  const RingPtr& witness_ring() const { return witness_ring_; }

  struct Membership {
    Tri verdict = Tri::indeterminate;
    std::optional<Polynomial> witness; // in witness_ring(), present iff yes
  };
  // Decides g in the subalgebra; a yes carries a witness that re-evaluates
  // to g (verified).
  Membership member(const Polynomial& g) const;

  // Substitutes the generators for the tags, landing in the ambient algebra.
  Polynomial evaluate_witness(const Polynomial& w) const;

  struct Presentation {
    GBStatus status = GBStatus::ok;
    AlgebraPtr algebra;                       // over the ambient's base
    std::optional<AlgebraMorphism> inclusion; // algebra -> ambient, injective
    bool ok() const { return status == GBStatus::ok; }
  };
  // Extracts a presentation from the cache: generators become fresh letters,
  // relations are the tag-level elements of the elimination basis. The
  // inclusion's injectivity is cross-checked.
  Presentation presentation(const Budget& budget = {}) const;

  // Mutual membership of generators. A definite no wins over indeterminate.
  static Tri equal(const Subalgebra& S, const Subalgebra& T);

private:
  AlgebraPtr ambient_;
  std::vector<Polynomial> gens_;
  RingPtr elim_ring_;    // ambient variables followed by tags
  RingPtr witness_ring_; // base variables followed by tags
  GroebnerBasis cache_;
  GBStatus status_ = GBStatus::ok;
};

// The Frobenius-image subalgebra B_n = R<g_1^{p^n}, ..., g_m^{p^n}> for the
// presentation's generators g_i. Every p^n-th power in A lands in B_n, since
// coefficients of p^n-th powers are themselves p^n-th powers up to base
// elements.
Subalgebra frob_image(const AlgebraPtr& A, unsigned n, const Budget& budget = {});

} // namespace frobperf
