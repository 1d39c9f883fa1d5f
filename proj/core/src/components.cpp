#include "frobperf/components.hpp"

#include <algorithm>
#include <numeric>

#include "frobperf/factor.hpp"

namespace frobperf {

namespace {

struct Piece {
  std::vector<Polynomial> gens;
  GroebnerBasis gb;
};

// Is every generator of `maybe_larger` contained in the ideal with basis gb?
bool contained_in(const std::vector<Polynomial>& gens, const GroebnerBasis& gb) {
  for (const auto& g : gens)
    if (!normal_form(g, gb).is_zero()) return false;
  return true;
}

class Splitter {
public:
  Splitter(const AlgebraPtr& A, const Budget& budget, std::uint64_t seed)
      : A_(A), ring_(A->ambient()), budget_(budget), seed_(seed) {}

  bool best_effort = false;

  std::vector<Piece> run() {
    std::vector<Piece> done;
    split(A_->full_relations(), 0, done);
    return done;
  }

private:
  static constexpr unsigned kMaxDepth = 24;
  static constexpr std::uint32_t kMaxSaturationPower = 64;

  void split(std::vector<Polynomial> gens, unsigned depth, std::vector<Piece>& done) {
    GroebnerBasis gb = groebner_basis(Ideal(ring_, gens), false, budget_);
    if (!gb.ok()) {
      best_effort = true;
      done.push_back({std::move(gens), std::move(gb)});
      return;
    }
    if (gb.is_unit()) return; // empty piece
    if (depth >= kMaxDepth) {
      best_effort = true;
      done.push_back({std::move(gens), std::move(gb)});
      return;
    }

    // Heuristic 1: factor a univariate eliminant of some variable.
    std::vector<Polynomial> univariate_parts;
    for (std::size_t v = 0; v < ring_->nvars(); ++v) {
      IdealResult elim = eliminate(Ideal(ring_, gb.elems), {v}, budget_);
      if (!elim.ok()) {
        best_effort = true;
        continue;
      }
      if (elim.ideal.gens.empty()) continue;
      if (elim.ideal.gens.size() != 1)
        throw engine_fault("univariate elimination ideal with several reduced generators");
      const Polynomial& g = elim.ideal.gens.front();
      FactorResult fac = univariate_factor(g, seed_);
      if (fac.factors.size() >= 2) {
        // I = the intersection of the I + (q^e): exact by CRT for pairwise
        // comaximal prime powers of one variable.
        for (const auto& f : fac.factors) {
          std::vector<Polynomial> next = gens;
          next.push_back(f.factor.pow(f.multiplicity));
          split(std::move(next), depth + 1, done);
        }
        return;
      }
      if (fac.factors.size() == 1)
        univariate_parts.push_back(fac.factors.front().factor);
    }

    // Heuristic 2: verified saturation splits by variables and by the
    // irreducible parts collected above.
    std::vector<Polynomial> candidates;
    for (std::size_t v = 0; v < ring_->nvars(); ++v)
      candidates.push_back(Polynomial::variable(ring_, v));
    candidates.insert(candidates.end(), univariate_parts.begin(),
                      univariate_parts.end());

    for (const auto& g : candidates) {
      if (normal_form(g, gb).is_zero()) continue; // g already in the ideal
      IdealResult sat = saturate(Ideal(ring_, gb.elems), g, budget_);
      if (!sat.ok()) {
        best_effort = true;
        continue;
      }
      // No progress when g is a nonzerodivisor-unit mix that saturates to
      // the whole ideal again.
      GroebnerBasis sat_gb = groebner_basis(sat.ideal, false, budget_);
      if (!sat_gb.ok()) {
        best_effort = true;
        continue;
      }
      if (sat_gb.is_unit()) continue;              // g nilpotent mod I
      if (contained_in(sat_gb.elems, gb)) continue; // saturation did nothing

      for (std::uint32_t N = 1; N <= kMaxSaturationPower; N *= 2) {
        std::vector<Polynomial> other = gens;
        other.push_back(pow_reduced(*A_, g, N));
        GroebnerBasis other_gb = groebner_basis(Ideal(ring_, other), false, budget_);
        if (!other_gb.ok()) {
          best_effort = true;
          break;
        }
        if (other_gb.is_unit()) break; // g invertible mod I: no split
        IdealResult meet = ideal_intersection(sat.ideal, Ideal(ring_, other_gb.elems),
                                              budget_);
        if (!meet.ok()) {
          best_effort = true;
          break;
        }
        if (contained_in(meet.ideal.gens, gb)) {
          split(sat.ideal.gens, depth + 1, done);
          split(std::move(other), depth + 1, done);
          return;
        }
      }
    }

    done.push_back({std::move(gens), std::move(gb)});
  }

  const AlgebraPtr& A_;
  const RingPtr& ring_;
  Budget budget_;
  std::uint64_t seed_;
};

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

} // namespace

Polynomial idempotent_from_comaximal(const Ideal& I, const Ideal& J,
                                     const Budget& budget) {
  if (!same_ring(I.ring, J.ring))
    throw structural_error("comaximality across different rings");
  std::vector<Polynomial> gens = I.gens;
  gens.insert(gens.end(), J.gens.begin(), J.gens.end());
  GroebnerBasis gb = groebner_basis(Ideal(I.ring, std::move(gens)), true, budget);
  if (!gb.ok())
    throw budget_exhausted(gb.status, "comaximality certificate ran out of budget");
  if (!gb.is_unit()) throw structural_error("ideals are not comaximal");

  // 1 = sum_k cof[k] * gen_k; the I-part is the idempotent that vanishes on
  // V(J)'s complement.
  const std::vector<Polynomial>& cof = gb.cofactors.front();
  Polynomial a = Polynomial::zero(I.ring);
  for (std::size_t k = 0; k < I.gens.size(); ++k)
    a = a + cof[k] * gb.input_gens[k];
  return a;
}

ComponentDecomposition split_components(const AlgebraPtr& A, const Budget& budget,
                                        std::uint64_t seed) {
  if (A->base())
    throw structural_error("component splitting is implemented over the prime field");
  ComponentDecomposition out;
  out.algebra = A;

  Splitter splitter(A, budget, seed);
  std::vector<Piece> pieces = splitter.run();
  out.best_effort = splitter.best_effort;

  if (pieces.empty()) return out; // the zero algebra: no components

  // Merge pieces that are not provably comaximal.
  UnionFind uf(pieces.size());
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      std::vector<Polynomial> sum = pieces[i].gens;
      sum.insert(sum.end(), pieces[j].gens.begin(), pieces[j].gens.end());
      Tri unit = is_unit_ideal(Ideal(A->ambient(), std::move(sum)), budget);
      if (unit == Tri::yes) continue;
      if (unit == Tri::indeterminate) out.best_effort = true;
      uf.unite(i, j);
    }
  }

  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    if (uf.find(i) == i) roots.push_back(i);

  for (std::size_t root : roots) {
    std::optional<Ideal> cluster;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (uf.find(i) != root) continue;
      if (!cluster) {
        cluster = Ideal(A->ambient(), pieces[i].gens);
      } else {
        IdealResult meet =
            ideal_intersection(*cluster, Ideal(A->ambient(), pieces[i].gens), budget);
        if (!meet.ok())
          throw budget_exhausted(meet.status,
                                 "cluster intersection ran out of budget");
        cluster = std::move(meet.ideal);
      }
    }
    out.component_ideals.push_back(std::move(*cluster));
  }

  const std::size_t k = out.component_ideals.size();
  if (k == 1) {
    out.idempotents.push_back(Polynomial::constant(A->ambient(), 1));
  } else {
    for (std::size_t i = 0; i < k; ++i) {
      std::optional<Ideal> others;
      for (std::size_t j = 0; j < k; ++j) {
        if (j == i) continue;
        if (!others) {
          others = out.component_ideals[j];
        } else {
          IdealResult meet = ideal_intersection(*others, out.component_ideals[j],
                                                budget);
          if (!meet.ok())
            throw budget_exhausted(meet.status,
                                   "idempotent intersection ran out of budget");
          others = std::move(meet.ideal);
        }
      }
      Polynomial e =
          A->reduce(idempotent_from_comaximal(*others, out.component_ideals[i], budget));
      out.idempotents.push_back(std::move(e));
    }
  }

  // The idempotent axioms are theorems given exact splitting; a violation
  // means the splitter lied.
  Polynomial sum = Polynomial::zero(A->ambient());
  for (const auto& e : out.idempotents) {
    if (!A->reduce(e * e - e).is_zero())
      throw engine_fault("component idempotent is not idempotent");
    sum = sum + e;
  }
  if (!A->reduce(sum - Polynomial::constant(A->ambient(), 1)).is_zero())
    throw engine_fault("component idempotents do not sum to one");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (!A->reduce(out.idempotents[i] * out.idempotents[j]).is_zero())
        throw engine_fault("component idempotents are not orthogonal");

  for (auto& e : out.idempotents) e = short_representative(*A, e);

  return out;
}

Polynomial short_representative(const Algebra& A, const Polynomial& e) {
  Polynomial nf = A.reduce(e);
  if (nf.terms().size() <= 1) return nf;
  const RingPtr& ring = A.ambient();
  const std::size_t n = ring->nvars();
  const std::uint64_t dmax = nf.total_degree();
  std::size_t tried = 0;
  constexpr std::size_t kMaxCandidates = 4096;

  std::vector<std::uint32_t> exps(n, 0);
  std::optional<Polynomial> found;
  // All exponent vectors of total degree d, lexicographically; first hit wins.
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> bool {
    if (tried >= kMaxCandidates) return false;
    if (i + 1 == n) {
      exps[i] = left;
      ++tried;
      Polynomial m = Polynomial::from_terms(ring, {Term{Monomial{exps}, 1}});
      if (A.reduce(nf - m).is_zero()) {
        found = std::move(m);
        return true;
      }
      return false;
    }
    for (std::uint32_t x = left; x + 1 > 0; --x) {
      exps[i] = x;
      if (self(self, i + 1, left - x)) return true;
      if (x == 0) break;
    }
    return false;
  };
  for (std::uint32_t d = 1; d <= dmax && n > 0; ++d) {
    if (rec(rec, 0, d)) return *found;
    if (tried >= kMaxCandidates) break;
  }
  return nf;
}

std::vector<std::vector<std::size_t>> groupoid_pi0(
    std::size_t universe,
    const std::vector<std::pair<std::size_t, std::size_t>>& arrows) {
  UnionFind uf(universe);
  for (const auto& [s, t] : arrows) {
    if (s >= universe || t >= universe)
      throw structural_error("arrow endpoint outside the universe");
    uf.unite(s, t);
  }
  std::vector<std::vector<std::size_t>> orbits;
  std::vector<std::optional<std::size_t>> slot(universe);
  for (std::size_t x = 0; x < universe; ++x) {
    std::size_t r = uf.find(x);
    if (!slot[r]) {
      slot[r] = orbits.size();
      orbits.emplace_back();
    }
    orbits[*slot[r]].push_back(x);
  }
  return orbits;
}

Pi0Ring pi0_ring(const ComponentDecomposition& decomp) {
  const AlgebraPtr& A = decomp.algebra;
  const std::size_t k = decomp.idempotents.size();
  Pi0Ring out;

  auto wrap = [&](AlgebraPtr P, std::vector<Polynomial> images) {
    out.algebra = P;
    try {
      out.inclusion.emplace(std::move(P), A, std::move(images));
    } catch (const structural_error& e) {
      throw engine_fault(std::string("pi0 ring does not include into A: ") + e.what());
    }
  };

  if (k == 0) {
    RingPtr r = make_ring(A->field(), {});
    wrap(Algebra::make(A->field(), nullptr, {}, {Polynomial::constant(r, 1)}, true),
         {});
    return out;
  }
  if (k == 1) {
    wrap(Algebra::make(A->field(), nullptr, {}, {}), {});
    return out;
  }
  if (k == 2) {
    std::vector<std::string> gens{"e"};
    RingPtr r = Algebra::ambient_ring_for(A->field(), nullptr, gens);
    Polynomial e = Polynomial::variable(r, 0);
    wrap(Algebra::make(A->field(), nullptr, gens, {e * e - e}),
         {decomp.idempotents.front()});
    return out;
  }

  std::vector<std::string> gens;
  for (std::size_t i = 0; i < k; ++i) gens.push_back("e" + std::to_string(i + 1));
  RingPtr r = Algebra::ambient_ring_for(A->field(), nullptr, gens);
  std::vector<Polynomial> rels;
  for (std::size_t i = 0; i < k; ++i) {
    Polynomial ei = Polynomial::variable(r, i);
    rels.push_back(ei * ei - ei);
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      rels.push_back(Polynomial::variable(r, i) * Polynomial::variable(r, j));
  Polynomial sum = Polynomial::zero(r);
  for (std::size_t i = 0; i < k; ++i) sum = sum + Polynomial::variable(r, i);
  rels.push_back(sum - Polynomial::constant(r, 1));
  wrap(Algebra::make(A->field(), nullptr, gens, std::move(rels)), decomp.idempotents);
  return out;
}

} // namespace frobperf
