// Microbenchmarks for the hot paths: polynomial arithmetic, Groebner bases,
// Frobenius-image subalgebras, the preperfection driver, univariate
// factorization, and groupoid closure. Inputs are fixed-seed so runs are
// comparable across machines and revisions.

#include <benchmark/benchmark.h>

#include <random>

#include "frobperf/algebra.hpp"
#include "frobperf/factor.hpp"
#include "frobperf/groebner.hpp"
#include "frobperf/groupoid.hpp"
#include "frobperf/parse.hpp"
#include "frobperf/perfection.hpp"
#include "frobperf/subalgebra.hpp"

using namespace frobperf;

namespace {

RingPtr ring3(std::vector<std::string> vars) {
  return std::make_shared<PolyRing>(
      PolyRing{PrimeField(5), vars, MonomialOrder::grevlex(vars.size())});
}

Polynomial random_poly(const RingPtr& R, std::mt19937& rng, int terms,
                       std::uint32_t maxdeg) {
  Polynomial acc = Polynomial::zero(R);
  for (int t = 0; t < terms; ++t) {
    std::vector<std::uint32_t> e(R->nvars());
    std::uint32_t left = maxdeg;
    for (auto& x : e) {
      x = rng() % (left + 1);
      left -= x;
    }
    acc = acc + Polynomial::from_terms(
                    R, {Term{Monomial{e}, 1 + rng() % (R->field.p() - 1)}});
  }
  return acc;
}

void BM_PolynomialMultiply(benchmark::State& state) {
  auto R = ring3({"x", "y", "z"});
  std::mt19937 rng(7);
  Polynomial f = random_poly(R, rng, 40, 12);
  Polynomial g = random_poly(R, rng, 40, 12);
  for (auto _ : state) benchmark::DoNotOptimize(f * g);
}
BENCHMARK(BM_PolynomialMultiply);

void BM_GroebnerCyclic3(benchmark::State& state) {
  auto R = ring3({"x", "y", "z"});
  std::vector<Polynomial> gens = {
      parse_polynomial("x + y + z", R),
      parse_polynomial("x*y + y*z + z*x", R),
      parse_polynomial("x*y*z - 1", R),
  };
  Ideal I(R, gens);
  Budget budget;
  for (auto _ : state) benchmark::DoNotOptimize(groebner_basis(I, false, budget));
}
BENCHMARK(BM_GroebnerCyclic3);

void BM_NormalForm(benchmark::State& state) {
  auto R = ring3({"x", "y", "z"});
  Ideal I(R, {parse_polynomial("x^2 - y", R), parse_polynomial("y^2 - z", R)});
  Budget budget;
  GroebnerBasis G = groebner_basis(I, false, budget);
  std::mt19937 rng(11);
  Polynomial f = random_poly(R, rng, 30, 16);
  for (auto _ : state) benchmark::DoNotOptimize(normal_form(f, G));
}
BENCHMARK(BM_NormalForm);

AlgebraPtr artin_schreier() {
  PrimeField F(3);
  AlgebraPtr base = Algebra::make(F, nullptr, {"u"}, {});
  RingPtr AR = Algebra::ambient_ring_for(F, base, {"x"});
  return Algebra::make(F, base, {"x"}, {parse_polynomial("x^3 - x - u", AR)});
}

void BM_FrobeniusImage(benchmark::State& state) {
  AlgebraPtr A = artin_schreier();
  for (auto _ : state) benchmark::DoNotOptimize(frob_image(A, 2));
}
BENCHMARK(BM_FrobeniusImage);

void BM_Preperfect(benchmark::State& state) {
  AlgebraPtr A = artin_schreier();
  for (auto _ : state) benchmark::DoNotOptimize(preperfect(A, 3));
}
BENCHMARK(BM_Preperfect);

void BM_UnivariateFactor(benchmark::State& state) {
  auto R = std::make_shared<PolyRing>(
      PolyRing{PrimeField(5), {"t"}, MonomialOrder::grevlex(1)});
  Polynomial f = parse_polynomial("t^25 - t", R); // splits into all 25 linears
  for (auto _ : state) benchmark::DoNotOptimize(univariate_factor(f, 42));
}
BENCHMARK(BM_UnivariateFactor);

Groupoid pair_groupoid(unsigned n) {
  Groupoid G;
  for (unsigned k = 0; k < n; ++k) G.objects.push_back("o" + std::to_string(k));
  for (const auto& src : G.objects)
    for (const auto& tgt : G.objects) {
      std::string name = src + ">" + tgt;
      G.arrows.push_back(name);
      G.s[name] = src;
      G.t[name] = tgt;
      G.i[name] = tgt + ">" + src;
      if (src == tgt) G.e[src] = name;
    }
  for (const auto& x : G.objects)
    for (const auto& y : G.objects)
      for (const auto& z : G.objects) G.c[{y + ">" + z, x + ">" + y}] = x + ">" + z;
  return G;
}

void BM_GroupoidClosure(benchmark::State& state) {
  Pregroupoid P = pregroupoid_of(pair_groupoid(5));
  for (auto _ : state) benchmark::DoNotOptimize(groupoid_closure(P));
}
BENCHMARK(BM_GroupoidClosure);

} // namespace

BENCHMARK_MAIN();
