#include "frobperf/prime_field.hpp"

#include "frobperf/errors.hpp"

namespace frobperf {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint32_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p > (1u << 16))
    throw structural_error("field characteristic exceeds 2^16: " + std::to_string(p));
  if (!is_prime(p))
    throw structural_error("field characteristic is not prime: " + std::to_string(p));
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint64_t base = a % p_, acc = 1;
  while (e) {
    if (e & 1) acc = acc * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(acc);
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a == 0) throw structural_error("inverse of zero in F_p");
  // Extended Euclid on (a, p); p prime so gcd is 1.
  std::int64_t r0 = a, r1 = p_, s0 = 1, s1 = 0;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    s0 -= q * s1;
    std::swap(s0, s1);
  }
  return reduce(s0);
}

} // namespace frobperf
