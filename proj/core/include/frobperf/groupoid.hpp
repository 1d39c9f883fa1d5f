#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "frobperf/errors.hpp"

namespace frobperf {

// A finite pregroupoid: sets of objects, arrows, composable-pair witnesses
// and composable-triple witnesses, all identified by strings, with the
// structure maps stored as id -> id tables. Only the asymmetric half of the
// structure is stored; the mirrored maps (t, p2, lambda+, mu+, q23, nu+) are
// derived through the involutions.
//
// Conventions: c composes "second argument first", i.e. a pair d stands for
// (p1(d), p2(d)) with s(p1(d)) = t(p2(d)) and c(d) plays the role of
// p1(d) . p2(d).
struct Pregroupoid {
  std::vector<std::string> objects; // U
  std::vector<std::string> arrows;  // R
  std::vector<std::string> pairs;   // D
  std::vector<std::string> triples; // E

  std::map<std::string, std::string> s;      // R -> U
  std::map<std::string, std::string> e;      // U -> R
  std::map<std::string, std::string> inv_r;  // R -> R, involution
  std::map<std::string, std::string> inv_d;  // D -> D, involution
  std::map<std::string, std::string> inv_e;  // E -> E, involution
  std::map<std::string, std::string> c;      // D -> R, composition
  std::map<std::string, std::string> p1;     // D -> R, first projection
  std::map<std::string, std::string> lambda; // R -> D, r |-> (r, e(s(r)))
  std::map<std::string, std::string> mu;     // R -> D, r |-> (i(r), r)
  std::map<std::string, std::string> q12;    // E -> D, leading pair
  std::map<std::string, std::string> nu;     // E -> D, x |-> (q1(x), c(q23(x)))

  // Derived maps; throw structural_error when a required table entry is
  // missing (validate first).
  std::string t(const std::string& r) const;           // s . i
  std::string p2(const std::string& d) const;          // i . p1 . i
  std::string lambda_plus(const std::string& r) const; // i . lambda . i
  std::string mu_plus(const std::string& r) const;     // mu . i
  std::string q23(const std::string& x) const;         // i . q12 . i
  std::string nu_plus(const std::string& x) const;     // i . nu . i
};

// A finite groupoid with total composition: c is keyed by (a, b) with
// s(a) = t(b) and holds the composite "a after b".
struct Groupoid {
  std::vector<std::string> objects;
  std::vector<std::string> arrows;
  std::map<std::string, std::string> s, t; // R -> U
  std::map<std::string, std::string> e;    // U -> R
  std::map<std::string, std::string> i;    // R -> R
  std::map<std::pair<std::string, std::string>, std::string> c;
};

// Exhaustive pointwise check of the pregroupoid laws (identity, inverse,
// projection and associativity-shadow conditions), plus table totality and
// range checks and the compatibilities sc = sp2, tc = tp1, c.i_D = i_R.c
// that the pushout construction relies on. Violations are reported as
// human-readable descriptors; an empty result means valid.
std::vector<std::string> validate_pregroupoid(const Pregroupoid& P);

// Pointwise check of the groupoid axioms, including totality of c on exactly
// the composable pairs.
std::vector<std::string> validate_groupoid(const Groupoid& G);

// The pregroupoid a groupoid induces, with composable pairs "(a|b)" and
// composable triples "(a|b|c)" as ids.
Pregroupoid pregroupoid_of(const Groupoid& G);

// Defects of the two characteristic maps (p1,p2): D -> R x_U R and
// (q12,q23): E -> D x_R D; empty iff both are bijections, i.e. iff the
// pregroupoid is (induced by) a groupoid.
std::vector<std::string> bijectivity_defects(const Pregroupoid& P);

enum class ClosureStatus { ok, iteration_limit, size_limit };
const char* to_string(ClosureStatus s);

// How a closure arrow came to exist. Enough to rebuild any morphism out of
// the closure: originals are images of the canonical map, composites refer
// to earlier closure arrows.
struct ArrowOrigin {
  enum class Kind { original, composite } kind;
  std::string a, b; // original: an arrow of P (b unused); composite: a after b
};

struct ClosureResult {
  ClosureStatus status = ClosureStatus::ok;
  unsigned iterations = 0;
  Groupoid groupoid; // partial (possibly not a groupoid) when status != ok
  std::map<std::string, std::string> arrow_map; // R(P) -> closure arrows
  std::map<std::string, ArrowOrigin> origins;   // per closure arrow
  bool ok() const { return status == ClosureStatus::ok; }
};

// Iterated-pushout groupoid closure of a valid pregroupoid (throws
// structural_error when validation fails). Arrows are identified by a
// union-find over the forced identifications: the pair/composite
// identifications from D, the unit and inverse laws, and the associativity
// relations; each iteration adjoins the missing formal composites. The run
// stops as soon as the characteristic maps of the required bijectivity conditions hold,
// or with a non-ok status after max_iterations rounds / max_arrows created
// arrows. Closure arrows keep the (lexicographically least) original name of
// their class when one exists; new classes are named w1, w2, ... in creation
// order.
ClosureResult groupoid_closure(const Pregroupoid& P, unsigned max_iterations = 64,
                               std::size_t max_arrows = 100000);

// A pregroupoid morphism as four tables.
struct PregroupoidMorphism {
  std::map<std::string, std::string> on_objects, on_arrows, on_pairs, on_triples;
};

// Pointwise commutation of every structure square (the derived maps commute
// automatically); empty result means f is a morphism P -> Q.
std::vector<std::string> validate_pregroupoid_morphism(const Pregroupoid& P,
                                                       const Pregroupoid& Q,
                                                       const PregroupoidMorphism& f);

// Lifts object/arrow tables into a morphism P -> pregroupoid_of(G) by
// synthesizing the pair and triple components; throws structural_error when
// some required image pair is not composable in G.
PregroupoidMorphism morphism_into_groupoid(
    const Pregroupoid& P, const Groupoid& G,
    const std::map<std::string, std::string>& on_objects,
    const std::map<std::string, std::string>& on_arrows);

// The canonical map P -> closure as a pregroupoid morphism (target in the
// form pregroupoid_of(closure.groupoid)).
PregroupoidMorphism canonical_morphism(const Pregroupoid& P,
                                       const ClosureResult& closure);

struct FactorizationResult {
  Tri exists = Tri::indeterminate;
  std::map<std::string, std::string> on_objects, on_arrows; // closure -> target
  std::string detail;
};

// The factorization through the closure: given a morphism P -> target
// (object/arrow tables into a groupoid), finds the groupoid morphism
// closure -> target commuting with the canonical map, by forced propagation
// along arrow origins followed by full verification. Every closure arrow is
// generated by canonical ones, so when the propagated map verifies it is the
// unique factorization; `exists` is no (with a witness in `detail`) when the
// input is not a morphism or no factorization exists, and indeterminate when
// the closure itself is incomplete.
FactorizationResult factor_through_closure(
    const Pregroupoid& P, const ClosureResult& closure, const Groupoid& target,
    const std::map<std::string, std::string>& on_objects,
    const std::map<std::string, std::string>& on_arrows);

// JSON I/O. A pregroupoid file is an object with arrays "U", "R", "D", "E"
// and tables "s", "e", "i_R", "i_D", "i_E", "c", "p1", "lambda", "mu",
// "q12", "nu"; a groupoid file has arrays "U", "R", tables "s", "t", "e",
// "i" and a nested table "c" with c[a][b] = the composite "a after b".
// Parsing throws structural_error on malformed input.
Pregroupoid pregroupoid_from_json(const std::string& text);
std::string pregroupoid_to_json(const Pregroupoid& P);
Groupoid groupoid_from_json(const std::string& text);
std::string groupoid_to_json(const Groupoid& G);

} // namespace frobperf
