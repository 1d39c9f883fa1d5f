#include "frobperf/groebner.hpp"

#include <algorithm>
#include <cstdint>
#include <future>
#include <limits>
#include <map>
#include <set>

namespace frobperf {

Ideal::Ideal(RingPtr r, std::vector<Polynomial> gs) : ring(std::move(r)) {
  for (auto& g : gs) {
    if (g.is_zero()) continue;
    if (!same_ring(g.ring(), ring))
      throw structural_error("ideal generator lives in a different ring");
    gens.push_back(std::move(g));
  }
}

namespace {

struct Work {
  Polynomial p;                 // monic
  std::vector<Polynomial> cof;  // over the original input generators
};

// Full multivariate division of f by basis[0..limit): deterministic (first
// reducer in index order wins). When tracking, `acc` is updated so that the
// invariant f = sum_j acc[j] * input_j survives the division — each
// subtraction of q*g removes q times g's own cofactor row. Returns false if
// the degree budget is exceeded mid-division.
bool reduce_full(const RingPtr& ring, Polynomial& f, const std::vector<Work>& basis,
                 std::size_t limit, std::vector<Polynomial>* acc,
                 std::uint32_t max_degree) {
  Polynomial rem = Polynomial::zero(ring);
  Polynomial work = f;
  while (!work.is_zero()) {
    if (work.total_degree() > max_degree) return false;
    const Term lt = work.leading_term();
    bool reduced = false;
    for (std::size_t k = 0; k < limit; ++k) {
      const Polynomial& g = basis[k].p;
      if (g.is_zero()) continue;
      if (!g.leading_monomial().divides(lt.m)) continue;
      Term q{lt.m / g.leading_monomial(), lt.c}; // g is monic
      work = work - g.mul_term(q);
      if (acc)
        for (std::size_t j = 0; j < acc->size(); ++j)
          if (!basis[k].cof[j].is_zero())
            (*acc)[j] = (*acc)[j] - basis[k].cof[j].mul_term(q);
      reduced = true;
      break;
    }
    if (!reduced) {
      Polynomial head = Polynomial::from_terms(ring, {lt});
      rem = rem + head;
      work = work - head;
    }
  }
  f = std::move(rem);
  return true;
}

class Engine {
public:
  Engine(const Ideal& ideal, bool track, const Budget& budget)
      : ring_(ideal.ring), budget_(budget), track_(track), inputs_(ideal.gens),
        pairs_(PairLess{&ring_->order}) {}

  GroebnerBasis run() {
    for (std::size_t k = 0; k < inputs_.size() && status_ == GBStatus::ok && !unit_; ++k) {
      Polynomial p = inputs_[k];
      std::vector<Polynomial> cof;
      if (track_) {
        cof.assign(inputs_.size(), Polynomial::zero(ring_));
        cof[k] = Polynomial::constant(ring_, 1);
      }
      std::uint32_t lc = p.leading_term().c;
      if (lc != 1) {
        std::uint32_t ilc = ring_->field.inv(lc);
        p = p.mul_scalar(ilc);
        for (auto& c : cof) c = c.mul_scalar(ilc);
      }
      add_element(std::move(p), std::move(cof));
    }
    main_loop();
    return finish();
  }

private:
  struct PairKey {
    Monomial lcm;
    std::size_t i, j;
  };
  struct PairLess {
    const MonomialOrder* ord;
    bool operator()(const PairKey& a, const PairKey& b) const {
      int c = ord->cmp(a.lcm, b.lcm);
      if (c) return c < 0;
      if (a.i != b.i) return a.i < b.i;
      return a.j < b.j;
    }
  };

  void main_loop() {
    while (!pairs_.empty() && status_ == GBStatus::ok && !unit_) {
      std::size_t batch = budget_.threads > 1
                              ? std::min<std::size_t>(budget_.threads, pairs_.size())
                              : 1;
      std::vector<PairKey> picked;
      for (std::size_t b = 0; b < batch && !pairs_.empty(); ++b) {
        if (processed_ >= budget_.max_pairs) {
          status_ = GBStatus::pair_budget_exceeded;
          break;
        }
        ++processed_;
        picked.push_back(*pairs_.begin());
        pairs_.erase(pairs_.begin());
      }
      if (picked.empty()) break;

      struct Reduced {
        Polynomial p;
        std::vector<Polynomial> cof;
        bool degree_ok;
      };
      auto reduce_pair = [this](const PairKey& pk) -> Reduced {
        const Work& fi = G_[pk.i];
        const Work& fj = G_[pk.j];
        Term mi{pk.lcm / fi.p.leading_monomial(), 1};
        Term mj{pk.lcm / fj.p.leading_monomial(), 1};
        Polynomial s = fi.p.mul_term(mi) - fj.p.mul_term(mj);
        std::vector<Polynomial> cof;
        if (track_) {
          cof.assign(inputs_.size(), Polynomial::zero(ring_));
          for (std::size_t j = 0; j < cof.size(); ++j) {
            cof[j] = fi.cof[j].mul_term(mi) - fj.cof[j].mul_term(mj);
          }
        }
        bool dok = s.total_degree() <= budget_.max_degree &&
                   reduce_full(ring_, s, G_, G_.size(), track_ ? &cof : nullptr,
                               budget_.max_degree);
        return {std::move(s), std::move(cof), dok};
      };

      std::vector<Reduced> results;
      results.reserve(picked.size());
      if (picked.size() == 1) {
        results.push_back(reduce_pair(picked[0]));
      } else {
        // The basis is read-only during the batch; integration happens below.
        std::vector<std::future<Reduced>> futs;
        for (const auto& pk : picked)
          futs.push_back(std::async(std::launch::async, reduce_pair, pk));
        for (auto& f : futs) results.push_back(f.get());
      }

      std::size_t snapshot = G_.size();
      for (auto& r : results) {
        if (status_ != GBStatus::ok || unit_) break;
        if (!r.degree_ok) {
          status_ = GBStatus::degree_budget_exceeded;
          break;
        }
        if (r.p.is_zero()) continue;
        if (G_.size() > snapshot) {
          // A batch-mate extended the basis; reduce against the extension too.
          if (!reduce_full(ring_, r.p, G_, G_.size(), track_ ? &r.cof : nullptr,
                           budget_.max_degree)) {
            status_ = GBStatus::degree_budget_exceeded;
            break;
          }
          if (r.p.is_zero()) continue;
        }
        std::uint32_t lc = r.p.leading_term().c;
        if (lc != 1) {
          std::uint32_t ilc = ring_->field.inv(lc);
          r.p = r.p.mul_scalar(ilc);
          for (auto& c : r.cof) c = c.mul_scalar(ilc);
        }
        add_element(std::move(r.p), std::move(r.cof));
      }
    }
  }

  // Gebauer-Moeller update: install a new basis element and prune the queue.
  void add_element(Polynomial p, std::vector<Polynomial> cof) {
    std::size_t t = G_.size();
    const Monomial& lmt = p.leading_monomial();
    if (p.is_constant()) unit_ = true;

    for (auto it = pairs_.begin(); it != pairs_.end();) {
      const Monomial lij = it->lcm;
      if (lmt.divides(lij) &&
          Monomial::lcm(G_[it->i].p.leading_monomial(), lmt) != lij &&
          Monomial::lcm(G_[it->j].p.leading_monomial(), lmt) != lij)
        it = pairs_.erase(it);
      else
        ++it;
    }

    std::map<Monomial, std::vector<std::size_t>> by_lcm;
    for (std::size_t i = 0; i < t; ++i)
      by_lcm[Monomial::lcm(G_[i].p.leading_monomial(), lmt)].push_back(i);
    for (auto& [lcm_m, is] : by_lcm) {
      // criterion M: a strictly smaller new lcm elsewhere kills the group
      bool dominated = false;
      for (const auto& [other, js] : by_lcm) {
        if (other == lcm_m) continue;
        if (other.divides(lcm_m)) {
          dominated = true;
          break;
        }
      }
      if (dominated) continue;
      // criterion F/B: coprime leading terms anywhere in the group kill it
      bool coprime = false;
      for (auto i : is)
        if (Monomial::coprime(G_[i].p.leading_monomial(), lmt)) {
          coprime = true;
          break;
        }
      if (coprime) continue;
      pairs_.insert({lcm_m, is.front(), t});
    }

    G_.push_back({std::move(p), std::move(cof)});
  }

  GroebnerBasis finish() {
    GroebnerBasis out;
    out.ring = ring_;
    out.status = status_;
    out.has_cofactors = track_;
    out.input_gens = inputs_;
    if (status_ != GBStatus::ok) return out;

    if (unit_) {
      // Keep only a constant element, normalized to 1.
      for (auto& w : G_) {
        if (!w.p.is_zero() && w.p.is_constant()) {
          out.elems = {Polynomial::constant(ring_, 1)};
          if (track_) out.cofactors = {w.cof};
          return out;
        }
      }
    }

    // Minimalize: keep elements whose leading monomials are pairwise
    // non-divisible (smallest leading monomial first).
    std::vector<std::size_t> order(G_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      int c = ring_->order.cmp(G_[a].p.leading_monomial(), G_[b].p.leading_monomial());
      if (c) return c < 0;
      return a < b;
    });
    std::vector<Work> kept;
    for (auto idx : order) {
      const Monomial& lm = G_[idx].p.leading_monomial();
      bool redundant = false;
      for (const auto& k : kept)
        if (k.p.leading_monomial().divides(lm)) {
          redundant = true;
          break;
        }
      if (!redundant) kept.push_back(G_[idx]);
    }

    // Tail-reduce each kept element against the others.
    for (std::size_t k = 0; k < kept.size(); ++k) {
      std::vector<Work> others;
      others.reserve(kept.size() - 1);
      for (std::size_t j = 0; j < kept.size(); ++j)
        if (j != k) others.push_back(kept[j]);
      Polynomial h = kept[k].p;
      std::vector<Polynomial> cof = kept[k].cof;
      if (!reduce_full(ring_, h, others, others.size(), track_ ? &cof : nullptr,
                       std::numeric_limits<std::uint32_t>::max()))
        throw engine_fault("autoreduction exceeded an unlimited budget");
      if (h.is_zero() || h.leading_monomial() != kept[k].p.leading_monomial())
        throw engine_fault("autoreduction destroyed a minimal leading term");
      kept[k].p = std::move(h);
      kept[k].cof = std::move(cof);
    }

    for (auto& w : kept) {
      out.elems.push_back(std::move(w.p));
      if (track_) out.cofactors.push_back(std::move(w.cof));
    }
    return out;
  }

  RingPtr ring_;
  Budget budget_;
  bool track_;
  std::vector<Polynomial> inputs_;
  std::vector<Work> G_;
  std::set<PairKey, PairLess> pairs_;
  GBStatus status_ = GBStatus::ok;
  bool unit_ = false;
  std::uint64_t processed_ = 0;
};

} // namespace

GroebnerBasis groebner_basis(const Ideal& ideal, bool track_cofactors,
                             const Budget& budget) {
  if (!ideal.ring) throw structural_error("ideal without a ring");
  return Engine(ideal, track_cofactors, budget).run();
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& G) {
  if (!same_ring(f.ring(), G.ring)) throw structural_error("normal form: ring mismatch");
  std::vector<Work> basis;
  basis.reserve(G.elems.size());
  for (const auto& g : G.elems) basis.push_back({g, {}});
  Polynomial r = f;
  reduce_full(G.ring, r, basis, basis.size(), nullptr,
              std::numeric_limits<std::uint32_t>::max());
  return r;
}

Polynomial normal_form_with_cofactors(const Polynomial& f, const GroebnerBasis& G,
                                      std::vector<Polynomial>& cof) {
  if (!G.has_cofactors)
    throw structural_error("normal form with cofactors requires a tracked basis");
  if (!same_ring(f.ring(), G.ring)) throw structural_error("normal form: ring mismatch");
  std::vector<Work> basis;
  basis.reserve(G.elems.size());
  for (std::size_t i = 0; i < G.elems.size(); ++i)
    basis.push_back({G.elems[i], G.cofactors[i]});
  // reduce_full maintains nf = f + sum_j acc[j] * input_j from a zero start,
  // so the contract f = nf + sum_j cof[j] * input_j needs the negation.
  cof.assign(G.input_gens.size(), Polynomial::zero(G.ring));
  Polynomial r = f;
  reduce_full(G.ring, r, basis, basis.size(), &cof,
              std::numeric_limits<std::uint32_t>::max());
  for (auto& c : cof) c = Polynomial::zero(G.ring) - c;
  return r;
}

namespace {

std::string fresh_var_name(const PolyRing& ring, const std::string& stem) {
  std::string name = stem;
  unsigned n = 0;
  while (ring.var_index(name)) name = stem + std::to_string(n++);
  return name;
}

} // namespace

IdealResult eliminate(const Ideal& I, const std::vector<std::size_t>& keep,
                      const Budget& budget) {
  const auto& ring = I.ring;
  std::vector<bool> kept(ring->nvars(), false);
  for (auto k : keep) {
    if (k >= ring->nvars()) throw structural_error("eliminate: variable out of range");
    kept[k] = true;
  }
  std::vector<std::uint32_t> top, bottom;
  for (std::uint32_t i = 0; i < ring->nvars(); ++i)
    (kept[i] ? bottom : top).push_back(i);

  auto elim_ring = make_ring(ring->field, ring->vars,
                             MonomialOrder::elimination(top, bottom));
  std::vector<Polynomial> gens;
  gens.reserve(I.gens.size());
  for (const auto& g : I.gens) gens.push_back(g.reorder(elim_ring));

  GroebnerBasis gb = groebner_basis(Ideal(elim_ring, std::move(gens)), false, budget);
  IdealResult out;
  out.status = gb.status;
  if (gb.status != GBStatus::ok) {
    out.ideal = Ideal(ring, {});
    return out;
  }
  std::vector<Polynomial> sel;
  for (const auto& e : gb.elems) {
    bool only_kept = true;
    for (const auto& t : e.terms())
      for (std::size_t i = 0; i < kept.size() && only_kept; ++i)
        if (t.m.e[i] && !kept[i]) only_kept = false;
    if (only_kept) sel.push_back(e.reorder(ring));
  }
  out.ideal = Ideal(ring, std::move(sel));
  return out;
}

IdealResult saturate(const Ideal& I, const Polynomial& g, const Budget& budget) {
  if (g.is_zero()) throw structural_error("saturation by zero");
  if (!same_ring(g.ring(), I.ring)) throw structural_error("saturate: ring mismatch");
  const auto& ring = I.ring;
  std::vector<std::string> vars = ring->vars;
  vars.push_back(fresh_var_name(*ring, "_z"));
  std::vector<std::uint32_t> top{static_cast<std::uint32_t>(ring->nvars())};
  std::vector<std::uint32_t> bottom;
  for (std::uint32_t i = 0; i < ring->nvars(); ++i) bottom.push_back(i);
  auto ext = make_ring(ring->field, std::move(vars), MonomialOrder::elimination(top, bottom));

  std::vector<std::size_t> embed(ring->nvars());
  for (std::size_t i = 0; i < embed.size(); ++i) embed[i] = i;
  std::vector<Polynomial> gens;
  for (const auto& f : I.gens) gens.push_back(f.transplant(ext, embed));
  Polynomial gz = g.transplant(ext, embed) * Polynomial::variable(ext, ring->nvars()) -
                  Polynomial::constant(ext, 1);
  gens.push_back(std::move(gz));

  GroebnerBasis gb = groebner_basis(Ideal(ext, std::move(gens)), false, budget);
  IdealResult out;
  out.status = gb.status;
  if (gb.status != GBStatus::ok) {
    out.ideal = Ideal(ring, {});
    return out;
  }
  std::vector<Polynomial> sel;
  for (const auto& e : gb.elems) {
    bool no_z = true;
    for (const auto& t : e.terms())
      if (t.m.e[ring->nvars()]) no_z = false;
    if (no_z) {
      std::vector<Term> terms;
      for (const auto& t : e.terms()) {
        Monomial m{std::vector<std::uint32_t>(t.m.e.begin(),
                                              t.m.e.begin() + ring->nvars())};
        terms.push_back({std::move(m), t.c});
      }
      sel.push_back(Polynomial::from_terms(ring, std::move(terms)));
    }
  }
  out.ideal = Ideal(ring, std::move(sel));
  return out;
}

IdealResult ideal_intersection(const Ideal& I, const Ideal& J, const Budget& budget) {
  if (!same_ring(I.ring, J.ring)) throw structural_error("intersection: ring mismatch");
  const auto& ring = I.ring;
  std::vector<std::string> vars = ring->vars;
  vars.push_back(fresh_var_name(*ring, "_t"));
  std::vector<std::uint32_t> top{static_cast<std::uint32_t>(ring->nvars())};
  std::vector<std::uint32_t> bottom;
  for (std::uint32_t i = 0; i < ring->nvars(); ++i) bottom.push_back(i);
  auto ext = make_ring(ring->field, std::move(vars), MonomialOrder::elimination(top, bottom));

  std::vector<std::size_t> embed(ring->nvars());
  for (std::size_t i = 0; i < embed.size(); ++i) embed[i] = i;
  Polynomial tv = Polynomial::variable(ext, ring->nvars());
  Polynomial one_minus_t = Polynomial::constant(ext, 1) - tv;
  std::vector<Polynomial> gens;
  for (const auto& f : I.gens) gens.push_back(f.transplant(ext, embed) * tv);
  for (const auto& f : J.gens) gens.push_back(f.transplant(ext, embed) * one_minus_t);

  GroebnerBasis gb = groebner_basis(Ideal(ext, std::move(gens)), false, budget);
  IdealResult out;
  out.status = gb.status;
  if (gb.status != GBStatus::ok) {
    out.ideal = Ideal(ring, {});
    return out;
  }
  std::vector<Polynomial> sel;
  for (const auto& e : gb.elems) {
    bool no_t = true;
    for (const auto& t : e.terms())
      if (t.m.e[ring->nvars()]) no_t = false;
    if (no_t) {
      std::vector<Term> terms;
      for (const auto& t : e.terms()) {
        Monomial m{std::vector<std::uint32_t>(t.m.e.begin(),
                                              t.m.e.begin() + ring->nvars())};
        terms.push_back({std::move(m), t.c});
      }
      sel.push_back(Polynomial::from_terms(ring, std::move(terms)));
    }
  }
  out.ideal = Ideal(ring, std::move(sel));
  return out;
}

Tri radical_membership(const Polynomial& f, const Ideal& I, const Budget& budget) {
  if (!same_ring(f.ring(), I.ring))
    throw structural_error("radical membership: ring mismatch");
  const auto& ring = I.ring;
  std::vector<std::string> vars = ring->vars;
  vars.push_back(fresh_var_name(*ring, "_z"));
  auto ext = make_ring(ring->field, std::move(vars));

  std::vector<std::size_t> embed(ring->nvars());
  for (std::size_t i = 0; i < embed.size(); ++i) embed[i] = i;
  std::vector<Polynomial> gens;
  for (const auto& g : I.gens) gens.push_back(g.transplant(ext, embed));
  gens.push_back(f.transplant(ext, embed) * Polynomial::variable(ext, ring->nvars()) -
                 Polynomial::constant(ext, 1));
  GroebnerBasis gb = groebner_basis(Ideal(ext, std::move(gens)), false, budget);
  if (gb.status != GBStatus::ok) return Tri::indeterminate;
  return gb.is_unit() ? Tri::yes : Tri::no;
}

Tri is_unit_ideal(const Ideal& I, const Budget& budget) {
  GroebnerBasis gb = groebner_basis(I, false, budget);
  if (gb.status != GBStatus::ok) return Tri::indeterminate;
  return gb.is_unit() ? Tri::yes : Tri::no;
}

Tri ideal_membership(const Polynomial& f, const Ideal& I, const Budget& budget) {
  GroebnerBasis gb = groebner_basis(I, false, budget);
  if (gb.status != GBStatus::ok) return Tri::indeterminate;
  return normal_form(f, gb).is_zero() ? Tri::yes : Tri::no;
}

} // namespace frobperf
