#pragma once

#include <cstdint>

namespace frobperf {

// The prime field F_p for a machine-word prime p <= 2^16. Elements are plain
// uint32_t values in [0, p); the field object carries only the modulus, so it
// is freely copyable and shareable.
class PrimeField {
public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const { return p_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(a) * b) % p_);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  // Multiplicative inverse of a nonzero element (extended Euclid).
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t reduce(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<std::uint32_t>(r);
  }

  bool operator==(const PrimeField&) const = default;

private:
  std::uint32_t p_;
};

bool is_prime(std::uint32_t n);

} // namespace frobperf
