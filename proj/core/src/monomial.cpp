#include "frobperf/monomial.hpp"

#include <limits>
#include <numeric>

#include "frobperf/errors.hpp"

namespace frobperf {

namespace {

void check_same_size(const Monomial& a, const Monomial& b) {
  if (a.e.size() != b.e.size())
    throw structural_error("monomial variable-set mismatch");
}

} // namespace

Monomial Monomial::operator*(const Monomial& o) const {
  check_same_size(*this, o);
  Monomial r = *this;
  for (std::size_t i = 0; i < r.e.size(); ++i) {
    std::uint64_t s = static_cast<std::uint64_t>(r.e[i]) + o.e[i];
    if (s > std::numeric_limits<std::uint32_t>::max())
      throw structural_error("monomial exponent overflow");
    r.e[i] = static_cast<std::uint32_t>(s);
  }
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  check_same_size(*this, o);
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

Monomial Monomial::operator/(const Monomial& o) const {
  check_same_size(*this, o);
  Monomial r = *this;
  for (std::size_t i = 0; i < e.size(); ++i) r.e[i] -= o.e[i];
  return r;
}

Monomial Monomial::pow(std::uint64_t k) const {
  Monomial r = *this;
  for (std::size_t i = 0; i < e.size(); ++i) {
    std::uint64_t s = static_cast<std::uint64_t>(e[i]) * k;
    if (s > std::numeric_limits<std::uint32_t>::max())
      throw structural_error("monomial exponent overflow");
    r.e[i] = static_cast<std::uint32_t>(s);
  }
  return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  check_same_size(a, b);
  Monomial r = a;
  for (std::size_t i = 0; i < r.e.size(); ++i)
    if (b.e[i] > r.e[i]) r.e[i] = b.e[i];
  return r;
}

bool Monomial::coprime(const Monomial& a, const Monomial& b) {
  check_same_size(a, b);
  for (std::size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] && b.e[i]) return false;
  return true;
}

MonomialOrder MonomialOrder::lex(std::size_t nvars) {
  MonomialOrder o;
  o.kind = Kind::lex;
  o.perm.resize(nvars);
  std::iota(o.perm.begin(), o.perm.end(), 0u);
  return o;
}

MonomialOrder MonomialOrder::grevlex(std::size_t nvars) {
  MonomialOrder o;
  o.kind = Kind::grevlex;
  o.perm.resize(nvars);
  std::iota(o.perm.begin(), o.perm.end(), 0u);
  return o;
}

MonomialOrder MonomialOrder::elimination(const std::vector<std::uint32_t>& eliminated,
                                         const std::vector<std::uint32_t>& kept) {
  MonomialOrder o;
  o.kind = Kind::block;
  o.perm = eliminated;
  o.perm.insert(o.perm.end(), kept.begin(), kept.end());
  o.block = eliminated.size();
  std::vector<bool> seen(o.perm.size(), false);
  for (auto v : o.perm) {
    if (v >= o.perm.size() || seen[v])
      throw structural_error("elimination order: blocks must partition the variables");
    seen[v] = true;
  }
  return o;
}

namespace {

// grevlex on the positions [lo, hi) of the permuted exponent vectors:
// higher total degree wins; on ties the *last* differing position decides,
// with the smaller exponent there being the greater monomial.
int grevlex_range(const Monomial& a, const Monomial& b,
                  const std::vector<std::uint32_t>& perm, std::size_t lo, std::size_t hi) {
  std::int64_t da = 0, db = 0;
  for (std::size_t k = lo; k < hi; ++k) {
    da += a.e[perm[k]];
    db += b.e[perm[k]];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t k = hi; k-- > lo;) {
    std::uint32_t xa = a.e[perm[k]], xb = b.e[perm[k]];
    if (xa != xb) return xa > xb ? -1 : 1;
  }
  return 0;
}

} // namespace

int MonomialOrder::cmp(const Monomial& a, const Monomial& b) const {
  if (a.e.size() != b.e.size() || a.e.size() != perm.size())
    throw structural_error("monomial order arity mismatch");
  switch (kind) {
    case Kind::lex:
      for (std::size_t k = 0; k < perm.size(); ++k) {
        std::uint32_t xa = a.e[perm[k]], xb = b.e[perm[k]];
        if (xa != xb) return xa < xb ? -1 : 1;
      }
      return 0;
    case Kind::grevlex:
      return grevlex_range(a, b, perm, 0, perm.size());
    case Kind::block: {
      int c = grevlex_range(a, b, perm, 0, block);
      if (c) return c;
      return grevlex_range(a, b, perm, block, perm.size());
    }
  }
  return 0;
}

} // namespace frobperf
