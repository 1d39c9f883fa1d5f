#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frobperf/errors.hpp"
#include "frobperf/polynomial.hpp"

namespace frobperf {

// Resource limits for the Buchberger loop and its consumers. Exhausting a
// budget yields a distinguishable status, never a wrong answer.
struct Budget {
  std::uint64_t max_pairs = 200'000; // S-pairs processed
  std::uint32_t max_degree = 256;    // max total degree of any intermediate
  unsigned threads = 1;              // concurrent S-pair reductions
};

enum class GBStatus { ok, pair_budget_exceeded, degree_budget_exceeded };

inline const char* to_string(GBStatus s) {
  switch (s) {
    case GBStatus::ok: return "ok";
    case GBStatus::pair_budget_exceeded: return "pair budget exceeded";
    default: return "degree budget exceeded";
  }
}

// A resource budget ran out in a context that cannot return a status value
// (e.g. while caching the basis of a newly presented algebra). Callers that
// can degrade to an indeterminate report catch this; it is neither bad input
// nor an engine bug.
class budget_exhausted : public std::runtime_error {
public:
  budget_exhausted(GBStatus status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  GBStatus status() const { return status_; }

private:
  GBStatus status_;
};

struct Ideal {
  RingPtr ring;
  std::vector<Polynomial> gens; // zero generators are dropped at construction

  Ideal() = default;
  Ideal(RingPtr ring, std::vector<Polynomial> gens);
};

// Reduced Groebner basis. Elements are monic, pairwise top-irreducible with
// reduced tails, sorted ascending by leading monomial — the unique reduced
// basis of the ideal in a canonical presentation order. When cofactors are
// tracked, cofactors[i][j] satisfies elems[i] = sum_j cofactors[i][j] *
// input_gens[j].
struct GroebnerBasis {
  RingPtr ring;
  std::vector<Polynomial> elems;
  bool has_cofactors = false;
  std::vector<std::vector<Polynomial>> cofactors;
  std::vector<Polynomial> input_gens;
  GBStatus status = GBStatus::ok;

  bool ok() const { return status == GBStatus::ok; }
  bool is_unit() const {
    return elems.size() == 1 && !elems[0].is_zero() && elems[0].is_constant();
  }
};

GroebnerBasis groebner_basis(const Ideal& ideal, bool track_cofactors,
                             const Budget& budget);

// Remainder of multivariate division of f by G (deterministic reducer choice).
// Zero iff f lies in the ideal, provided G.ok().
Polynomial normal_form(const Polynomial& f, const GroebnerBasis& G);

// As above, also expressing the reduction: f = nf + sum_j cof[j]*input_gens[j].
// Requires G.has_cofactors.
Polynomial normal_form_with_cofactors(const Polynomial& f, const GroebnerBasis& G,
                                      std::vector<Polynomial>& cof);

struct IdealResult {
  GBStatus status = GBStatus::ok;
  Ideal ideal;
  bool ok() const { return status == GBStatus::ok; }
};

// Generators of I intersected with the subring on the `keep` variables.
IdealResult eliminate(const Ideal& I, const std::vector<std::size_t>& keep,
                      const Budget& budget);

// I : g^infinity via the extra-variable trick (adjoin z, g*z - 1, eliminate z).
IdealResult saturate(const Ideal& I, const Polynomial& g, const Budget& budget);

IdealResult ideal_intersection(const Ideal& I, const Ideal& J, const Budget& budget);

// true iff f lies in the radical of I (Rabinowitsch: 1 in I + (f*z - 1)).
Tri radical_membership(const Polynomial& f, const Ideal& I, const Budget& budget);

Tri is_unit_ideal(const Ideal& I, const Budget& budget);

// f in ideal(I)? Definite either way when the basis computation finishes.
Tri ideal_membership(const Polynomial& f, const Ideal& I, const Budget& budget);

} // namespace frobperf
