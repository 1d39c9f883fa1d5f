#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "frobperf/errors.hpp"
#include "frobperf/groupoid.hpp"

using namespace frobperf;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Pregroupoid tree_fixture() {
  return pregroupoid_from_json(read_file(std::string(TESTS_DATA_DIR) + "/tree.json"));
}

// The codiscrete (pair) groupoid on the given objects: one arrow src>tgt for
// every ordered pair.
Groupoid pair_groupoid(const std::vector<std::string>& objects) {
  Groupoid G;
  G.objects = objects;
  for (const auto& src : objects)
    for (const auto& tgt : objects) {
      std::string name = src + ">" + tgt;
      G.arrows.push_back(name);
      G.s[name] = src;
      G.t[name] = tgt;
      G.i[name] = tgt + ">" + src;
      if (src == tgt) G.e[src] = name;
    }
  for (const auto& x : objects)
    for (const auto& y : objects)
      for (const auto& z : objects)
        G.c[{y + ">" + z, x + ">" + y}] = x + ">" + z;
  return G;
}

// Z/n as a one-object groupoid with arrows g0 .. g(n-1).
Groupoid cyclic_groupoid(unsigned n) {
  Groupoid G;
  G.objects = {"*"};
  for (unsigned k = 0; k < n; ++k) {
    std::string name = "g" + std::to_string(k);
    G.arrows.push_back(name);
    G.s[name] = "*";
    G.t[name] = "*";
    G.i[name] = "g" + std::to_string((n - k) % n);
  }
  G.e["*"] = "g0";
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b)
      G.c[{"g" + std::to_string(a), "g" + std::to_string(b)}] =
          "g" + std::to_string((a + b) % n);
  return G;
}

// Every groupoid morphism closure -> target commuting with the canonical map,
// found by exhausting the images of the generating arrows `a` and `b` and
// extending by the groupoid laws. Object images are forced by the original
// arrows' endpoints, so the enumeration is small.
std::vector<std::map<std::string, std::string>> brute_force_factorizations(
    const Pregroupoid& P, const ClosureResult& closure, const Groupoid& target,
    const std::map<std::string, std::string>& on_objects,
    const std::map<std::string, std::string>& on_arrows) {
  std::vector<std::map<std::string, std::string>> found;
  const Groupoid& C = closure.groupoid;

  // candidate images per closure arrow: target arrows with matching endpoints
  // under the object map induced through the canonical functor
  std::map<std::string, std::string> obj_image;
  for (const auto& u : P.objects) obj_image[u] = on_objects.at(u);

  std::vector<std::string> arrows = C.arrows;
  std::map<std::string, std::vector<std::string>> choices;
  for (const auto& r : arrows) {
    std::vector<std::string> cands;
    for (const auto& q : target.arrows)
      if (target.s.at(q) == obj_image.at(C.s.at(r)) &&
          target.t.at(q) == obj_image.at(C.t.at(r)))
        cands.push_back(q);
    choices[r] = cands;
  }

  // pin the original arrows to their required images
  std::map<std::string, std::string> forced;
  for (const auto& [orig, cls] : closure.arrow_map) {
    auto it = forced.find(cls);
    if (it != forced.end() && it->second != on_arrows.at(orig)) return found;
    forced[cls] = on_arrows.at(orig);
  }

  std::map<std::string, std::string> assign;
  auto rec = [&](auto&& self, std::size_t idx) -> void {
    if (idx == arrows.size()) {
      // full check of the functor laws
      for (const auto& [pair, comp] : C.c) {
        auto fa = assign.at(pair.first);
        auto fb = assign.at(pair.second);
        if (target.c.at({fa, fb}) != assign.at(comp)) return;
      }
      for (const auto& [u, id] : C.e)
        if (assign.at(id) != target.e.at(obj_image.at(u))) return;
      for (const auto& [r, ir] : C.i)
        if (assign.at(ir) != target.i.at(assign.at(r))) return;
      found.push_back(assign);
      return;
    }
    const std::string& r = arrows[idx];
    auto f = forced.find(r);
    if (f != forced.end()) {
      assign[r] = f->second;
      self(self, idx + 1);
      assign.erase(r);
      return;
    }
    for (const auto& cand : choices[r]) {
      assign[r] = cand;
      self(self, idx + 1);
      assign.erase(r);
    }
  };
  rec(rec, 0);
  return found;
}

} // namespace

TEST_CASE("the tree fixture is a valid pregroupoid but not yet a groupoid") {
  Pregroupoid P = tree_fixture();
  CHECK(validate_pregroupoid(P).empty());
  std::vector<std::string> defects = bijectivity_defects(P);
  CHECK(!defects.empty()); // (b, a) is composable but has no pair
}

TEST_CASE("closure of the tree is the pair groupoid on three objects") {
  Pregroupoid P = tree_fixture();
  ClosureResult res = groupoid_closure(P);
  REQUIRE(res.ok());
  CHECK(res.groupoid.objects.size() == 3);
  CHECK(res.groupoid.arrows.size() == 9);
  CHECK(validate_groupoid(res.groupoid).empty());

  // every original arrow keeps its name
  for (const auto& r : P.arrows) {
    REQUIRE(res.arrow_map.count(r));
    CHECK(res.arrow_map.at(r) == r);
  }
  // exactly two new composites
  unsigned fresh = 0;
  for (const auto& [name, origin] : res.origins)
    if (origin.kind == ArrowOrigin::Kind::composite) ++fresh;
  CHECK(fresh == 2);

  // the output satisfies the bijectivity conditions
  CHECK(bijectivity_defects(pregroupoid_of(res.groupoid)).empty());
}

TEST_CASE("closure is idempotent") {
  ClosureResult first = groupoid_closure(tree_fixture());
  REQUIRE(first.ok());
  Pregroupoid again = pregroupoid_of(first.groupoid);
  CHECK(validate_pregroupoid(again).empty());
  ClosureResult second = groupoid_closure(again);
  REQUIRE(second.ok());
  CHECK(second.groupoid.arrows.size() == first.groupoid.arrows.size());
  // nothing new is created and every name survives
  for (const auto& [name, origin] : second.origins)
    CHECK(origin.kind == ArrowOrigin::Kind::original);
  std::set<std::string> a(first.groupoid.arrows.begin(), first.groupoid.arrows.end());
  std::set<std::string> b(second.groupoid.arrows.begin(), second.groupoid.arrows.end());
  CHECK(a == b);
}

TEST_CASE("closure limits surface as status") {
  Pregroupoid P = tree_fixture();
  ClosureResult capped = groupoid_closure(P, 64, 8); // needs 9 arrows
  CHECK(capped.status == ClosureStatus::size_limit);
  CHECK(!capped.ok());
}

TEST_CASE("universal property: factorization exists and is unique") {
  Pregroupoid P = tree_fixture();
  ClosureResult closure = groupoid_closure(P);
  REQUIRE(closure.ok());

  struct Target {
    const char* label;
    Groupoid G;
    std::map<std::string, std::string> on_objects;
    std::map<std::string, std::string> on_arrows;
  };
  std::vector<Target> targets;

  // 1. the pair groupoid itself, objects renamed
  {
    Groupoid G = pair_groupoid({"P", "Q", "R"});
    targets.push_back({"pair groupoid",
                       G,
                       {{"1", "P"}, {"2", "Q"}, {"3", "R"}},
                       {{"e1", "P>P"},
                        {"e2", "Q>Q"},
                        {"e3", "R>R"},
                        {"a", "P>Q"},
                        {"ai", "Q>P"},
                        {"b", "Q>R"},
                        {"bi", "R>Q"}}});
  }
  // 2. Z/2: collapse the objects, a becomes the flip, b the identity
  {
    Groupoid G = cyclic_groupoid(2);
    targets.push_back({"Z/2",
                       G,
                       {{"1", "*"}, {"2", "*"}, {"3", "*"}},
                       {{"e1", "g0"},
                        {"e2", "g0"},
                        {"e3", "g0"},
                        {"a", "g1"},
                        {"ai", "g1"},
                        {"b", "g0"},
                        {"bi", "g0"}}});
  }
  // 3. Z/3: a and b go to different rotations
  {
    Groupoid G = cyclic_groupoid(3);
    targets.push_back({"Z/3",
                       G,
                       {{"1", "*"}, {"2", "*"}, {"3", "*"}},
                       {{"e1", "g0"},
                        {"e2", "g0"},
                        {"e3", "g0"},
                        {"a", "g1"},
                        {"ai", "g2"},
                        {"b", "g2"},
                        {"bi", "g1"}}});
  }

  for (const auto& tgt : targets) {
    CAPTURE(tgt.label);
    FactorizationResult fr =
        factor_through_closure(P, closure, tgt.G, tgt.on_objects, tgt.on_arrows);
    REQUIRE(fr.exists == Tri::yes);
    // commutes with the canonical map on the original arrows
    for (const auto& [orig, cls] : closure.arrow_map)
      CHECK(fr.on_arrows.at(cls) == tgt.on_arrows.at(orig));

    // brute force agrees: exactly one morphism factors
    auto all = brute_force_factorizations(P, closure, tgt.G, tgt.on_objects,
                                          tgt.on_arrows);
    REQUIRE(all.size() == 1);
    CHECK(all[0] == fr.on_arrows);
  }
}

TEST_CASE("a non-morphism does not factor") {
  Pregroupoid P = tree_fixture();
  ClosureResult closure = groupoid_closure(P);
  REQUIRE(closure.ok());
  Groupoid G = cyclic_groupoid(2);
  // breaking F(ai) = F(a)^{-1} makes the pair (ai, a) incompatible
  std::map<std::string, std::string> on_objects = {
      {"1", "*"}, {"2", "*"}, {"3", "*"}};
  std::map<std::string, std::string> on_arrows = {
      {"e1", "g0"}, {"e2", "g0"}, {"e3", "g0"}, {"a", "g1"},
      {"ai", "g0"}, {"b", "g0"},  {"bi", "g0"}};
  FactorizationResult fr = factor_through_closure(P, closure, G, on_objects, on_arrows);
  CHECK(fr.exists == Tri::no);
  CHECK(!fr.detail.empty());
}

TEST_CASE("canonical morphism validates") {
  Pregroupoid P = tree_fixture();
  ClosureResult closure = groupoid_closure(P);
  REQUIRE(closure.ok());
  PregroupoidMorphism can = canonical_morphism(P, closure);
  CHECK(validate_pregroupoid_morphism(P, pregroupoid_of(closure.groupoid), can).empty());
}

TEST_CASE("json round-trips") {
  std::string text = read_file(std::string(TESTS_DATA_DIR) + "/tree.json");
  Pregroupoid P = pregroupoid_from_json(text);
  std::string once = pregroupoid_to_json(P);
  std::string twice = pregroupoid_to_json(pregroupoid_from_json(once));
  CHECK(once == twice);

  Groupoid G = groupoid_closure(P).groupoid;
  std::string g1 = groupoid_to_json(G);
  Groupoid G2 = groupoid_from_json(g1);
  CHECK(groupoid_to_json(G2) == g1);
  CHECK(validate_groupoid(G2).empty());
}

TEST_CASE("validation catches corrupted structure") {
  SUBCASE("broken inverse involution") {
    Pregroupoid P = tree_fixture();
    P.inv_r["a"] = "a";
    CHECK(!validate_pregroupoid(P).empty());
  }
  SUBCASE("missing composition entry") {
    Pregroupoid P = tree_fixture();
    P.c.erase(P.pairs.front());
    CHECK(!validate_pregroupoid(P).empty());
  }
  SUBCASE("composite with the wrong endpoints") {
    Pregroupoid P = tree_fixture();
    P.c["(a|e1)"] = "b";
    CHECK(!validate_pregroupoid(P).empty());
  }
  SUBCASE("closure refuses invalid input") {
    Pregroupoid P = tree_fixture();
    P.inv_r["a"] = "a";
    CHECK_THROWS_AS(groupoid_closure(P), structural_error);
  }
}

TEST_CASE("an already complete pregroupoid closes to itself") {
  Groupoid G = pair_groupoid({"1", "2"});
  Pregroupoid P = pregroupoid_of(G);
  CHECK(validate_pregroupoid(P).empty());
  CHECK(bijectivity_defects(P).empty());
  ClosureResult res = groupoid_closure(P);
  REQUIRE(res.ok());
  CHECK(res.groupoid.arrows.size() == 4);
}
