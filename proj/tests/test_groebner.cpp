#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "frobperf/errors.hpp"
#include "frobperf/groebner.hpp"
#include "frobperf/parse.hpp"

#include "support.hpp"

using namespace frobperf;
using frobperf::test::P;
using frobperf::test::Ps;
using frobperf::test::ring;

namespace {

Polynomial s_poly(const Polynomial& f, const Polynomial& g) {
  const Monomial& lf = f.leading_monomial();
  const Monomial& lg = g.leading_monomial();
  Monomial l = Monomial::lcm(lf, lg);
  const PrimeField& F = f.ring()->field;
  Term tf{l / lf, F.inv(f.leading_term().c)};
  Term tg{l / lg, F.inv(g.leading_term().c)};
  return f.mul_term(tf) - g.mul_term(tg);
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
    std::uint32_t c = 1 + rng() % (R->field.p() - 1);
    acc = acc + Polynomial::from_terms(R, {Term{Monomial{e}, c}});
  }
  return acc;
}

} // namespace

TEST_CASE("frozen reduced bases") {
  RingPtr R = ring(5, {"x", "y"});

  SUBCASE("intersection of the axes with a line") {
    GroebnerBasis G = groebner_basis(Ideal(R, Ps(R, {"x*y", "x + y - 1"})), false, {});
    REQUIRE(G.ok());
    REQUIRE(G.elems.size() == 2);
    // grevlex reduced basis, ascending leading monomials
    CHECK(G.elems[0] == P(R, "x + y + 4"));
    CHECK(G.elems[1] == P(R, "y^2 + 4*y"));
  }

  SUBCASE("unit ideal") {
    GroebnerBasis G = groebner_basis(Ideal(R, Ps(R, {"x", "x + 1"})), false, {});
    REQUIRE(G.ok());
    CHECK(G.is_unit());
  }

  SUBCASE("zero generators are dropped") {
    Ideal I(R, {Polynomial::zero(R), P(R, "x")});
    CHECK(I.gens.size() == 1);
  }

  SUBCASE("cusp kernel ideal is already reduced") {
    GroebnerBasis G = groebner_basis(Ideal(R, Ps(R, {"x^3 - y^2"})), false, {});
    REQUIRE(G.ok());
    REQUIRE(G.elems.size() == 1);
    CHECK(G.elems[0] == P(R, "x^3 + 4*y^2"));
  }
}

TEST_CASE("buchberger criterion and normal form laws on random ideals") {
  std::mt19937 rng(2025);
  Budget budget;
  int tested = 0;
  for (int iter = 0; iter < 80; ++iter) {
    std::uint32_t p = (iter % 2 == 0) ? 3 : 5;
    std::size_t nv = 1 + rng() % 3;
    std::vector<std::string> names = {"x", "y", "z"};
    names.resize(nv);
    RingPtr R = ring(p, names);
    std::vector<Polynomial> gens;
    int ngens = 1 + rng() % 3;
    for (int i = 0; i < ngens; ++i) gens.push_back(random_poly(R, rng, 3, 3));
    Ideal I(R, gens);
    if (I.gens.empty()) continue;
    GroebnerBasis G = groebner_basis(I, true, budget);
    if (!G.ok()) continue;
    ++tested;

    // every S-polynomial of basis elements reduces to zero
    for (std::size_t i = 0; i < G.elems.size(); ++i)
      for (std::size_t j = i + 1; j < G.elems.size(); ++j)
        CHECK(normal_form(s_poly(G.elems[i], G.elems[j]), G).is_zero());

    // the inputs reduce to zero and normal form is idempotent
    for (const auto& g : I.gens) CHECK(normal_form(g, G).is_zero());
    Polynomial f = random_poly(R, rng, 4, 4);
    Polynomial nf = normal_form(f, G);
    CHECK(normal_form(nf, G) == nf);
    // reduction is a ring map modulo the ideal
    Polynomial h = random_poly(R, rng, 3, 3);
    CHECK(normal_form(f + h, G) == normal_form(nf + normal_form(h, G), G));

    // cofactor reconstruction: every basis element is an explicit combination
    REQUIRE(G.has_cofactors);
    REQUIRE(G.input_gens.size() == I.gens.size());
    for (std::size_t i = 0; i < G.elems.size(); ++i) {
      Polynomial sum = Polynomial::zero(R);
      for (std::size_t j = 0; j < G.input_gens.size(); ++j)
        sum = sum + G.cofactors[i][j] * G.input_gens[j];
      CHECK(sum == G.elems[i]);
    }
  }
  CHECK(tested >= 40); // the property block must actually exercise cases
}

TEST_CASE("normal form with cofactors satisfies its contract") {
  RingPtr R = ring(5, {"x", "y"});
  Ideal I(R, Ps(R, {"x^2 + y", "x*y + 1"}));
  GroebnerBasis G = groebner_basis(I, true, {});
  REQUIRE(G.ok());
  std::mt19937 rng(31);
  for (int i = 0; i < 25; ++i) {
    Polynomial f = random_poly(R, rng, 4, 5);
    std::vector<Polynomial> cof;
    Polynomial nf = normal_form_with_cofactors(f, G, cof);
    REQUIRE(cof.size() == I.gens.size());
    Polynomial back = nf;
    for (std::size_t j = 0; j < cof.size(); ++j) back = back + cof[j] * I.gens[j];
    CHECK(back == f);
    CHECK(normal_form(nf, G) == nf);
  }
}

TEST_CASE("elimination produces contained ideals") {
  RingPtr R = ring(5, {"t", "x", "y"});
  // the twisted cubic's projection: eliminate t from (x - t^2, y - t^3)
  Ideal I(R, Ps(R, {"x - t^2", "y - t^3"}));
  IdealResult E = eliminate(I, {1, 2}, {});
  REQUIRE(E.ok());
  REQUIRE(E.ideal.gens.size() == 1);
  CHECK(E.ideal.gens[0] == P(R, "x^3 + 4*y^2"));
  // containment: everything eliminated still lies in the original ideal
  for (const auto& g : E.ideal.gens)
    CHECK(ideal_membership(g, I, {}) == Tri::yes);
}

TEST_CASE("saturation removes embedded multiples") {
  RingPtr R = ring(5, {"x", "y"});
  IdealResult S = saturate(Ideal(R, Ps(R, {"x^2*y"})), P(R, "x"), {});
  REQUIRE(S.ok());
  REQUIRE(S.ideal.gens.size() == 1);
  CHECK(S.ideal.gens[0] == P(R, "y"));
  // saturating by a unit changes nothing
  IdealResult T = saturate(Ideal(R, Ps(R, {"x*y + 1"})), P(R, "2"), {});
  REQUIRE(T.ok());
  CHECK(T.ideal.gens.size() == 1);
  CHECK(T.ideal.gens[0] == P(R, "x*y + 1"));
}

TEST_CASE("ideal intersection") {
  RingPtr R = ring(5, {"x", "y"});
  IdealResult M = ideal_intersection(Ideal(R, Ps(R, {"x"})), Ideal(R, Ps(R, {"y"})), {});
  REQUIRE(M.ok());
  REQUIRE(M.ideal.gens.size() == 1);
  CHECK(M.ideal.gens[0] == P(R, "x*y"));
}

TEST_CASE("radical membership") {
  RingPtr R = ring(5, {"x", "y"});
  Ideal I(R, Ps(R, {"x^2*y^3"}));
  CHECK(radical_membership(P(R, "x*y"), I, {}) == Tri::yes);
  CHECK(radical_membership(P(R, "x"), I, {}) == Tri::no);
  CHECK(radical_membership(P(R, "x + y"), I, {}) == Tri::no);
  CHECK(ideal_membership(P(R, "x*y"), I, {}) == Tri::no); // not in the ideal itself
  CHECK(is_unit_ideal(Ideal(R, Ps(R, {"x", "x + 1"})), {}) == Tri::yes);
  CHECK(is_unit_ideal(Ideal(R, Ps(R, {"x", "y"})), {}) == Tri::no);
}

TEST_CASE("budgets surface as status, not wrong answers") {
  RingPtr R = ring(3, {"x", "y", "z"});
  Ideal I(R, Ps(R, {"x^2*y + z", "y^2*z + x", "z^2*x + y"}));

  SUBCASE("pair budget") {
    Budget b;
    b.max_pairs = 1;
    GroebnerBasis G = groebner_basis(I, false, b);
    CHECK(G.status == GBStatus::pair_budget_exceeded);
    CHECK(!G.ok());
  }

  SUBCASE("degree budget") {
    Budget b;
    b.max_degree = 2;
    GroebnerBasis G = groebner_basis(I, false, b);
    CHECK(G.status == GBStatus::degree_budget_exceeded);
  }

  SUBCASE("membership under starvation is indeterminate") {
    Budget b;
    b.max_pairs = 1;
    CHECK(ideal_membership(P(R, "x"), I, b) == Tri::indeterminate);
  }

  SUBCASE("ample budget resolves the same ideal") {
    GroebnerBasis G = groebner_basis(I, false, {});
    CHECK(G.ok());
  }
}

TEST_CASE("basis is independent of generator order") {
  RingPtr R = ring(5, {"x", "y"});
  std::mt19937 rng(37);
  for (int i = 0; i < 20; ++i) {
    std::vector<Polynomial> gens = {random_poly(R, rng, 3, 3), random_poly(R, rng, 3, 3),
                                    random_poly(R, rng, 2, 2)};
    GroebnerBasis a = groebner_basis(Ideal(R, gens), false, {});
    std::reverse(gens.begin(), gens.end());
    GroebnerBasis b = groebner_basis(Ideal(R, gens), false, {});
    if (!a.ok() || !b.ok()) continue;
    REQUIRE(a.elems.size() == b.elems.size());
    for (std::size_t k = 0; k < a.elems.size(); ++k) CHECK(a.elems[k] == b.elems[k]);
  }
}
