#include "frobperf/factor.hpp"

#include <algorithm>
#include <optional>
#include <random>

#include "frobperf/errors.hpp"

namespace frobperf {

namespace {

// Dense univariate arithmetic; coefficient vectors are little-endian
// (index = exponent) with no trailing zeros.
using Dense = std::vector<std::uint32_t>;

void trim(Dense& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

bool is_zero(const Dense& f) { return f.empty(); }
std::size_t degree(const Dense& f) { return f.size() - 1; } // f nonzero

Dense mul(const PrimeField& F, const Dense& a, const Dense& b) {
  if (is_zero(a) || is_zero(b)) return {};
  Dense r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

Dense sub(const PrimeField& F, Dense a, const Dense& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.sub(a[i], b[i]);
  trim(a);
  return a;
}

// Long division of a by b (b nonzero): returns {quotient, remainder}.
std::pair<Dense, Dense> divmod(const PrimeField& F, Dense a, const Dense& b) {
  std::uint32_t lead_inv = F.inv(b.back());
  Dense q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  while (!is_zero(a) && a.size() >= b.size()) {
    std::uint32_t qc = F.mul(a.back(), lead_inv);
    std::size_t shift = a.size() - b.size();
    q[shift] = qc;
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = F.sub(a[shift + i], F.mul(qc, b[i]));
    trim(a);
  }
  trim(q);
  return {std::move(q), std::move(a)};
}

Dense rem(const PrimeField& F, Dense a, const Dense& b) {
  return divmod(F, std::move(a), b).second;
}

Dense divexact(const PrimeField& F, Dense a, const Dense& b) {
  auto [q, r] = divmod(F, std::move(a), b);
  if (!is_zero(r)) throw engine_fault("univariate factorization: non-exact division");
  return q;
}

Dense monic(const PrimeField& F, Dense f) {
  if (is_zero(f)) return f;
  std::uint32_t inv = F.inv(f.back());
  for (auto& c : f) c = F.mul(c, inv);
  return f;
}

Dense gcd(const PrimeField& F, Dense a, Dense b) {
  while (!is_zero(b)) {
    Dense r = rem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, std::move(a));
}

Dense derivative(const PrimeField& F, const Dense& f) {
  Dense r;
  for (std::size_t i = 1; i < f.size(); ++i)
    r.push_back(F.mul(f[i], static_cast<std::uint32_t>(i % F.p())));
  trim(r);
  return r;
}

Dense powmod(const PrimeField& F, Dense base, std::uint64_t e, const Dense& mod) {
  Dense acc{1};
  base = rem(F, std::move(base), mod);
  while (e) {
    if (e & 1) acc = rem(F, mul(F, acc, base), mod);
    e >>= 1;
    if (e) base = rem(F, mul(F, base, base), mod);
  }
  return acc;
}

// f with f' = 0 has the shape g(x^p), and over F_p then f = g(x)^p.
Dense pth_root(const PrimeField& F, const Dense& f) {
  Dense g;
  for (std::size_t i = 0; i < f.size(); i += F.p()) g.push_back(f[i]);
  trim(g);
  return g;
}

// Square-free decomposition of a monic f: pairwise-coprime square-free parts
// with multiplicities, product of part^mult equal to f.
std::vector<std::pair<Dense, std::uint32_t>> squarefree(const PrimeField& F, Dense f,
                                                        std::uint32_t outer_mult = 1) {
  std::vector<std::pair<Dense, std::uint32_t>> out;
  if (degree(f) == 0) return out;
  Dense d = derivative(F, f);
  if (is_zero(d)) {
    auto inner = squarefree(F, pth_root(F, f), outer_mult * F.p());
    out.insert(out.end(), inner.begin(), inner.end());
    return out;
  }
  Dense c = gcd(F, f, d);
  Dense w = divexact(F, std::move(f), c);
  std::uint32_t i = 1;
  while (degree(w) > 0) {
    Dense y = gcd(F, w, c);
    Dense part = divexact(F, std::move(w), y);
    if (degree(part) > 0) out.push_back({monic(F, std::move(part)), i * outer_mult});
    c = divexact(F, std::move(c), y);
    w = std::move(y);
    ++i;
  }
  if (degree(c) > 0) {
    // multiplicities divisible by p live here, at full multiplicity
    auto inner = squarefree(F, pth_root(F, c), outer_mult * F.p());
    out.insert(out.end(), inner.begin(), inner.end());
  }
  return out;
}

// Distinct-degree splitting of a monic square-free f: (product, d) parts
// where each part is the product of the irreducible factors of degree d.
std::vector<std::pair<Dense, std::size_t>> distinct_degree(const PrimeField& F, Dense f) {
  std::vector<std::pair<Dense, std::size_t>> out;
  const Dense x{0, 1};
  Dense h = x;
  std::size_t d = 0;
  while (degree(f) >= 2 * (d + 1)) {
    ++d;
    h = powmod(F, std::move(h), F.p(), f);
    Dense g = gcd(F, sub(F, h, x), f);
    if (degree(g) > 0) {
      out.push_back({g, d});
      f = divexact(F, std::move(f), g);
      if (degree(f) == 0) return out;
      h = rem(F, std::move(h), f);
    }
  }
  if (degree(f) > 0) out.push_back({f, degree(f)});
  return out;
}

// Cantor-Zassenhaus equal-degree splitting: f monic square-free with all
// irreducible factors of degree d.
void equal_degree(const PrimeField& F, const Dense& f, std::size_t d,
                  std::mt19937_64& rng, std::vector<Dense>& out) {
  if (degree(f) == d) {
    out.push_back(f);
    return;
  }
  std::uniform_int_distribution<std::uint32_t> coeff(0, F.p() - 1);
  for (;;) {
    Dense a(degree(f), 0);
    for (auto& c : a) c = coeff(rng);
    trim(a);
    if (is_zero(a) || degree(a) == 0) continue;
    Dense g = gcd(F, a, f);
    if (degree(g) == 0 || degree(g) == degree(f)) {
      if (F.p() == 2) {
        // trace map T(a) = a + a^2 + ... + a^(2^(d-1)) mod f
        Dense t{}, pw = rem(F, a, f);
        for (std::size_t i = 0; i < d; ++i) {
          t = sub(F, std::move(t), pw);
          if (i + 1 < d) pw = rem(F, mul(F, pw, pw), f);
        }
        g = gcd(F, t, f);
      } else {
        std::uint64_t e = 1;
        for (std::size_t i = 0; i < d; ++i) e *= F.p();
        Dense b = powmod(F, a, (e - 1) / 2, f);
        g = gcd(F, sub(F, std::move(b), Dense{1}), f);
      }
    }
    if (degree(g) > 0 && degree(g) < degree(f)) {
      Dense q = divexact(F, f, g);
      equal_degree(F, monic(F, std::move(g)), d, rng, out);
      equal_degree(F, monic(F, std::move(q)), d, rng, out);
      return;
    }
  }
}

} // namespace

FactorResult univariate_factor(const Polynomial& f, std::uint64_t seed) {
  if (f.is_zero()) throw structural_error("factorization of the zero polynomial");
  const auto& ring = f.ring();
  const PrimeField F = ring->field;

  std::optional<std::size_t> var;
  for (const auto& t : f.terms())
    for (std::size_t i = 0; i < ring->nvars(); ++i)
      if (t.m.e[i]) {
        if (var && *var != i)
          throw structural_error("univariate_factor: input is multivariate");
        var = i;
      }

  FactorResult result;
  result.unit = f.leading_term().c;
  if (!var) return result; // nonzero constant: unit only

  Dense dense(f.terms().front().m.e[*var] + 1, 0);
  for (const auto& t : f.terms()) dense[t.m.e[*var]] = t.c;
  dense = monic(F, std::move(dense));

  std::mt19937_64 rng(seed);
  std::vector<std::pair<Dense, std::uint32_t>> irreducibles;
  for (auto& [part, mult] : squarefree(F, std::move(dense))) {
    for (auto& [prod, d] : distinct_degree(F, std::move(part))) {
      std::vector<Dense> split;
      equal_degree(F, prod, d, rng, split);
      for (auto& g : split) irreducibles.push_back({std::move(g), mult});
    }
  }

  std::sort(irreducibles.begin(), irreducibles.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first > b.first;
  });

  for (auto& [g, mult] : irreducibles) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g[i])
        terms.push_back(
            {Monomial::var(ring->nvars(), *var, static_cast<std::uint32_t>(i)), g[i]});
    result.factors.push_back({Polynomial::from_terms(ring, std::move(terms)), mult});
  }
  return result;
}

} // namespace frobperf
