#pragma once

// Shared glue for the test binaries: compact constructors for rings,
// polynomials and algebras so fixtures read close to the math.

#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include "frobperf/algebra.hpp"
#include "frobperf/parse.hpp"
#include "frobperf/polynomial.hpp"

namespace frobperf::test {

inline RingPtr ring(std::uint32_t p, std::vector<std::string> vars) {
  return make_ring(PrimeField(p), std::move(vars));
}

inline Polynomial P(const RingPtr& R, const std::string& text) {
  return parse_polynomial(text, R);
}

inline std::vector<Polynomial> Ps(const RingPtr& R,
                                  std::initializer_list<const char*> texts) {
  std::vector<Polynomial> out;
  for (const char* t : texts) out.push_back(parse_polynomial(t, R));
  return out;
}

// F_p[gens...] / (relations...) over the prime field.
inline AlgebraPtr algebra(std::uint32_t p, std::vector<std::string> gens,
                          std::initializer_list<const char*> relations) {
  PrimeField F(p);
  RingPtr amb = Algebra::ambient_ring_for(F, nullptr, gens);
  std::vector<Polynomial> rels;
  for (const char* r : relations) rels.push_back(parse_polynomial(r, amb));
  return Algebra::make(F, nullptr, std::move(gens), std::move(rels));
}

// An algebra over a polynomial base F_p[base_vars...].
inline AlgebraPtr algebra_over(std::uint32_t p, std::vector<std::string> base_vars,
                               std::initializer_list<const char*> base_relations,
                               std::vector<std::string> gens,
                               std::initializer_list<const char*> relations) {
  PrimeField F(p);
  RingPtr base_amb = Algebra::ambient_ring_for(F, nullptr, base_vars);
  std::vector<Polynomial> brels;
  for (const char* r : base_relations) brels.push_back(parse_polynomial(r, base_amb));
  AlgebraPtr base = Algebra::make(F, nullptr, base_vars, std::move(brels));
  RingPtr amb = Algebra::ambient_ring_for(F, base, gens);
  std::vector<Polynomial> rels;
  for (const char* r : relations) rels.push_back(parse_polynomial(r, amb));
  return Algebra::make(F, base, std::move(gens), std::move(rels));
}

inline std::vector<std::string> strings(const std::vector<Polynomial>& ps) {
  std::vector<std::string> out;
  for (const auto& q : ps) out.push_back(q.str());
  return out;
}

} // namespace frobperf::test
