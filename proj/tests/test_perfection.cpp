#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frobperf/errors.hpp"
#include "frobperf/parse.hpp"
#include "frobperf/perfection.hpp"

#include "support.hpp"

using namespace frobperf;
using frobperf::test::algebra;
using frobperf::test::algebra_over;
using frobperf::test::P;

namespace {

// A = R[x,y,t]/(xy - u, t(x - y) - 1) over R = F_p[u,v]/(uv): the nodal base
// with the difference of the branch coordinates inverted.
AlgebraPtr nodal_example(std::uint32_t p) {
  return algebra_over(p, {"u", "v"}, {"u*v"}, {"x", "y", "t"},
                      {"x*y - u", "t*(x - y) - 1"});
}

} // namespace

TEST_CASE("coherent certificates") {
  AlgebraPtr A = nodal_example(3);
  const RingPtr& R = A->ambient();

  SUBCASE("the canonical pair verifies") {
    CoherentCertificate good{P(R, "(x + y)*t"), P(R, "v")};
    CHECK(verify_coherent_certificate(A, good));
  }

  SUBCASE("a broken pair is rejected") {
    CoherentCertificate bad{P(R, "x"), P(R, "v")};
    CHECK(!verify_coherent_certificate(A, bad));
  }

  SUBCASE("r must come from the base") {
    CoherentCertificate offside{P(R, "x"), P(R, "t")};
    CHECK_THROWS_AS(verify_coherent_certificate(A, offside), structural_error);
  }
}

TEST_CASE("preperfection of a relatively perfect presentation stabilizes at once") {
  AlgebraPtr A = algebra_over(3, {"u"}, {}, {"x"}, {"x^3 - x - u"});
  PreperfectionReport rep = preperfect(A);
  CHECK(rep.status == PreperfStatus::stabilized);
  CHECK(rep.stabilized_at == 1);
  REQUIRE(!rep.chain.empty());
  CHECK(rep.chain[0].injective == Tri::yes);
  CHECK(rep.chain[0].equals_next == Tri::yes);
  REQUIRE(rep.candidate.has_value());
  CHECK(rep.candidate_grade == "stabilized-chain");
  REQUIRE(rep.candidate->ok());
  // the candidate is A again: one generator, the twisted minimal relation
  CHECK(rep.candidate->algebra->gens().size() == 1);
  REQUIRE(rep.candidate->algebra->relations().size() == 1);
  const RingPtr& CR = rep.candidate->algebra->ambient();
  const std::string& a = CR->vars.back();
  // the letter a stands for x + u, and (x+u) - (x+u)^3 + u^3 = -(x^3 - x - u)
  CHECK(rep.candidate->algebra->relations()[0] ==
        P(CR, "u^3 + 2*" + a + "^3 + " + a));
}

TEST_CASE("nodal example: certificates carry the new element, probes fall off") {
  AlgebraPtr A = nodal_example(3);
  const RingPtr& R = A->ambient();
  std::vector<Polynomial> probes = {P(R, "v*(x + y)*t")};
  std::vector<CoherentCertificate> certs = {{P(R, "(x + y)*t"), P(R, "v")}};
  PreperfectionReport rep = preperfect(A, 2, probes, certs);

  CHECK(rep.status == PreperfStatus::not_stabilized);
  REQUIRE(rep.chain.size() == 2);
  CHECK(rep.chain[0].injective == Tri::yes);
  CHECK(rep.chain[1].injective == Tri::yes);

  REQUIRE(rep.certificates.size() == 1);
  CHECK(rep.certificates[0].valid);
  CHECK(rep.certificates[0].target == A->reduce(P(R, "v*(x + y)*t")));
  REQUIRE(rep.certificates[0].member_per_level.size() == 2);
  CHECK(rep.certificates[0].member_per_level[0] == Tri::yes);
  CHECK(rep.certificates[0].member_per_level[1] == Tri::yes);

  // default probes are the generators; ours is appended last
  REQUIRE(rep.probes.size() == 4);
  for (std::size_t i = 0; i < 3; ++i) {
    REQUIRE(rep.probes[i].falsified_at.has_value());
    CHECK(*rep.probes[i].falsified_at == 1);
  }
  CHECK(!rep.probes[3].falsified_at.has_value()); // the certified target stays

  // not stabilized: bounds appear, and the certified lower bound carries the
  // target on top of the base
  CHECK(rep.candidate_grade == "certified-lower-bound");
  REQUIRE(rep.lower_bound.has_value());
  REQUIRE(rep.lower_bound->ok());
  CHECK(rep.lower_bound->algebra->gens().size() == 1);
}

TEST_CASE("polynomial-base example: nothing new at any level") {
  AlgebraPtr A = algebra_over(3, {"u"}, {}, {"x", "y", "t"},
                              {"x*y - u", "t*(x - y) - 1"});
  const RingPtr& R = A->ambient();
  PreperfectionReport rep = preperfect(A, 3, {P(R, "x + y")});
  CHECK(rep.status == PreperfStatus::not_stabilized);
  for (const auto& pr : rep.probes) {
    REQUIRE(pr.falsified_at.has_value());
    CHECK(*pr.falsified_at == 1);
  }
  // no certificates: the lower bound is the bare base
  REQUIRE(rep.lower_bound.has_value());
  CHECK(rep.lower_bound->algebra->gens().empty());
  REQUIRE(rep.upper_bound.has_value());
  CHECK(rep.upper_bound->algebra->gens().empty());
}

TEST_CASE("unramified check") {
  SUBCASE("etale artin-schreier cover") {
    AlgebraPtr A = algebra_over(3, {"u"}, {}, {"x"}, {"x^3 - x - u"});
    UnramifiedReport rep = unramified_check(A);
    CHECK(rep.verdict == Ramification::unramified);
    CHECK(rep.etale == Tri::yes);
  }

  SUBCASE("the assembled nodal candidate is ramified") {
    AlgebraPtr C = algebra_over(3, {"u", "v"}, {"u*v"}, {"al"},
                                {"u*al", "al^2 - v^2"});
    UnramifiedReport rep = unramified_check(C);
    CHECK(rep.verdict == Ramification::ramified);
    CHECK(rep.etale == Tri::no);
  }

  SUBCASE("a double point is ramified over the prime field") {
    AlgebraPtr D = algebra(5, {"x"}, {"x^2"});
    UnramifiedReport rep = unramified_check(D);
    CHECK(rep.verdict == Ramification::ramified);
  }

  SUBCASE("too few relations force ramified") {
    AlgebraPtr E = algebra(5, {"x"}, {});
    CHECK(unramified_check(E).verdict == Ramification::ramified);
  }

  SUBCASE("split points are etale") {
    AlgebraPtr F = algebra(5, {"x"}, {"x^2 - x"});
    UnramifiedReport rep = unramified_check(F);
    CHECK(rep.verdict == Ramification::unramified);
    CHECK(rep.etale == Tri::yes);
  }
}

TEST_CASE("relative perfectness") {
  SUBCASE("separable: frobenius is bijective onto the level") {
    AlgebraPtr S = algebra_over(3, {"u"}, {}, {"x"}, {"x^3 - x - u"});
    RelPerfReport rep = is_relatively_perfect(S);
    CHECK(rep.verdict == Tri::yes);
    CHECK(!rep.witness.has_value());
  }

  SUBCASE("inseparable: a generator misses the level, with a witness") {
    AlgebraPtr N = algebra_over(3, {"u"}, {}, {"x"}, {"x^3 - u"});
    RelPerfReport rep = is_relatively_perfect(N);
    CHECK(rep.verdict == Tri::no);
    REQUIRE(rep.witness.has_value());
  }

  SUBCASE("the separable kernel is zero") {
    AlgebraPtr S = algebra_over(3, {"u"}, {}, {"x"}, {"x^3 - x - u"});
    KernelResult K = morphism_kernel(relative_frobenius(S, 1));
    REQUIRE(K.ok());
    CHECK(K.is_zero());
  }
}

TEST_CASE("crosscheck on split points") {
  AlgebraPtr A = algebra(5, {"x", "y"}, {"x*y", "x + y - 1"});
  AlgebraPtr C = algebra(5, {"e"}, {"e^2 - e"});
  AlgebraMorphism via(C, A, {P(A->ambient(), "x")});
  CrosscheckReport rep = crosscheck_pi0_preperfection(via, via);
  CHECK(rep.overall == "isomorphisms");
  CHECK(rep.pi0_unramified == Tri::yes);
  CHECK(rep.subalgebras_equal == Tri::yes);
  CHECK(rep.frobenius_fixed == Tri::yes);
}

TEST_CASE("crosscheck flags a mismatch") {
  AlgebraPtr A = algebra(5, {"x", "y"}, {"x*y", "x + y - 1"});
  AlgebraPtr C = algebra(5, {"e"}, {"e^2 - e"});
  AlgebraPtr K = algebra(5, {"z"}, {"z"}); // just the base point
  AlgebraMorphism via(C, A, {P(A->ambient(), "x")});
  AlgebraMorphism point(K, A, {P(A->ambient(), "0")});
  CrosscheckReport rep = crosscheck_pi0_preperfection(via, point);
  CHECK(rep.subalgebras_equal == Tri::no);
  CHECK(rep.overall != "isomorphisms");
}
