#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "frobperf/monomial.hpp"
#include "frobperf/prime_field.hpp"

namespace frobperf {

// A polynomial ring F_p[vars] with a fixed monomial order. Rings are shared
// immutably; two rings are interchangeable when field, variables and order
// all agree.
struct PolyRing {
  PrimeField field;
  std::vector<std::string> vars;
  MonomialOrder order;

  PolyRing(PrimeField f, std::vector<std::string> v, MonomialOrder o);

  std::size_t nvars() const { return vars.size(); }
  std::optional<std::size_t> var_index(const std::string& name) const;

  bool operator==(const PolyRing&) const = default;
};

using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(PrimeField field, std::vector<std::string> vars);
RingPtr make_ring(PrimeField field, std::vector<std::string> vars, MonomialOrder order);

bool same_ring(const RingPtr& a, const RingPtr& b);

struct Term {
  Monomial m;
  std::uint32_t c; // nonzero, in [1, p)
  bool operator==(const Term&) const = default;
};

// Sparse polynomial in canonical form: terms strictly decreasing in the
// ring's monomial order, no zero coefficients. Immutable value semantics.
class Polynomial {
public:
  Polynomial() = default;
  static Polynomial zero(RingPtr ring);
  static Polynomial constant(RingPtr ring, std::uint32_t c);
  static Polynomial variable(RingPtr ring, std::size_t i, std::uint32_t exp = 1);
  // Terms need not be sorted or reduced; this canonicalizes.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || terms_.front().m.is_one(); }
  const Term& leading_term() const;
  const Monomial& leading_monomial() const { return leading_term().m; }
  std::uint64_t total_degree() const; // max term degree; 0 for the zero polynomial

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial mul_term(const Term& t) const;
  Polynomial mul_scalar(std::uint32_t c) const;
  Polynomial pow(std::uint64_t k) const;
  // f^(p^n): termwise exponent scaling, coefficients fixed (prime field).
  Polynomial frobenius_power(unsigned n) const;
  Polynomial derivative(std::size_t var) const;
  Polynomial monic() const; // divide by leading coefficient

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  // Total deterministic comparison: by leading-monomial order, then termwise.
  static int compare(const Polynomial& a, const Polynomial& b);

  // Rebuild this polynomial in `target`, mapping variable i of the current
  // ring to variable var_map[i] of the target (re-sorting as needed).
  Polynomial transplant(const RingPtr& target, const std::vector<std::size_t>& var_map) const;
  // Same variables, possibly different order.
  Polynomial reorder(const RingPtr& target) const;

  std::string str() const;

private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

// Canonical text form, e.g. "x^3 + 2*x + 2*u" over F_3 (coefficients are the
// canonical representatives in [0, p)). Shared with the CLI DSL.
std::string to_string(const Polynomial& p);

} // namespace frobperf
