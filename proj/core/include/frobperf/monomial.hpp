#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace frobperf {

// Exponent vector over a fixed ambient variable set. Comparison operators are
// structural (for use as container keys); ordering in the monomial-order sense
// goes through MonomialOrder.
struct Monomial {
  std::vector<std::uint32_t> e;

  static Monomial one(std::size_t nvars) { return Monomial{std::vector<std::uint32_t>(nvars, 0)}; }
  static Monomial var(std::size_t nvars, std::size_t i, std::uint32_t exp = 1) {
    Monomial m = one(nvars);
    m.e[i] = exp;
    return m;
  }

  std::size_t nvars() const { return e.size(); }
  std::uint64_t degree() const {
    std::uint64_t d = 0;
    for (auto x : e) d += x;
    return d;
  }
  bool is_one() const {
    for (auto x : e)
      if (x) return false;
    return true;
  }

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  // Quotient o.divides(*this) is the caller's responsibility to have checked.
  Monomial operator/(const Monomial& o) const;
  Monomial pow(std::uint64_t k) const;
  static Monomial lcm(const Monomial& a, const Monomial& b);
  static bool coprime(const Monomial& a, const Monomial& b);

  auto operator<=>(const Monomial&) const = default;
};

// Admissible monomial orders: lex, graded reverse lex, and a two-block
// elimination order (grevlex within each block, first block dominant).
// `perm` maps comparison position -> variable index; an empty perm is the
// identity. For Kind::block the first `block` positions form the top block.
struct MonomialOrder {
  enum class Kind { lex, grevlex, block };

  Kind kind = Kind::grevlex;
  std::vector<std::uint32_t> perm;
  std::size_t block = 0;

  static MonomialOrder lex(std::size_t nvars);
  static MonomialOrder grevlex(std::size_t nvars);
  // Elimination order whose top block is `eliminated` (in the given order) and
  // bottom block is `kept`; together they must enumerate all variables once.
  static MonomialOrder elimination(const std::vector<std::uint32_t>& eliminated,
                                   const std::vector<std::uint32_t>& kept);

  // Negative if a < b, zero if equal, positive if a > b.
  int cmp(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const { return cmp(a, b) < 0; }
  bool greater(const Monomial& a, const Monomial& b) const { return cmp(a, b) > 0; }

  bool operator==(const MonomialOrder&) const = default;
};

} // namespace frobperf
