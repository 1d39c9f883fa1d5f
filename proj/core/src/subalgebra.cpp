#include "frobperf/subalgebra.hpp"

#include <algorithm>

namespace frobperf {

namespace {

std::string fresh_tag(const std::string& stem, const std::vector<std::string>& taken) {
  auto used = [&taken](const std::string& s) {
    return std::find(taken.begin(), taken.end(), s) != taken.end();
  };
  if (!used(stem)) return stem;
  std::string cand = "_" + stem;
  for (unsigned n = 2; used(cand); ++n) cand = "_" + stem + "_" + std::to_string(n);
  return cand;
}

} // namespace

Subalgebra::Subalgebra(AlgebraPtr ambient, std::vector<Polynomial> generators,
                       const Budget& budget)
    : ambient_(std::move(ambient)) {
  if (!ambient_) throw structural_error("subalgebra of a missing algebra");
  for (auto& g : generators) {
    if (!same_ring(g.ring(), ambient_->ambient()))
      throw structural_error("subalgebra generator lives outside the ambient algebra");
    Polynomial r = ambient_->reduce(g);
    if (!r.is_zero()) gens_.push_back(std::move(r));
  }

  const std::size_t nbase = ambient_->nbase_vars();
  const std::size_t namb = ambient_->ambient()->nvars();
  const std::size_t m = gens_.size();

  std::vector<std::string> tags;
  {
    std::vector<std::string> taken = ambient_->ambient()->vars;
    for (std::size_t k = 0; k < m; ++k) {
      std::string t = fresh_tag("y" + std::to_string(k + 1), taken);
      taken.push_back(t);
      tags.push_back(std::move(t));
    }
  }

  std::vector<std::string> evars = ambient_->ambient()->vars;
  evars.insert(evars.end(), tags.begin(), tags.end());
  std::vector<std::uint32_t> top, bottom;
  for (std::size_t i = 0; i < nbase; ++i) bottom.push_back(i);
  for (std::size_t i = nbase; i < namb; ++i) top.push_back(i);
  for (std::size_t k = 0; k < m; ++k) bottom.push_back(namb + k);
  elim_ring_ = make_ring(ambient_->field(), std::move(evars),
                         MonomialOrder::elimination(top, bottom));

  std::vector<std::string> wvars(ambient_->ambient()->vars.begin(),
                                 ambient_->ambient()->vars.begin() + nbase);
  wvars.insert(wvars.end(), tags.begin(), tags.end());
  witness_ring_ = make_ring(ambient_->field(), std::move(wvars));

  std::vector<std::size_t> embed(namb);
  for (std::size_t i = 0; i < namb; ++i) embed[i] = i;
  std::vector<Polynomial> ideal_gens;
  for (const auto& r : ambient_->full_relations())
    ideal_gens.push_back(r.transplant(elim_ring_, embed));
  for (std::size_t k = 0; k < m; ++k)
    ideal_gens.push_back(Polynomial::variable(elim_ring_, namb + k) -
                         gens_[k].transplant(elim_ring_, embed));

  cache_ = groebner_basis(Ideal(elim_ring_, std::move(ideal_gens)), false, budget);
  status_ = cache_.status;
}

Subalgebra::Membership Subalgebra::member(const Polynomial& g) const {
  if (!same_ring(g.ring(), ambient_->ambient()))
    throw structural_error("membership query outside the ambient algebra");
  Membership out;
  if (status_ != GBStatus::ok) return out;

  const std::size_t nbase = ambient_->nbase_vars();
  const std::size_t namb = ambient_->ambient()->nvars();
  const std::size_t m = gens_.size();

  Polynomial gr = ambient_->reduce(g);
  std::vector<std::size_t> embed(namb);
  for (std::size_t i = 0; i < namb; ++i) embed[i] = i;
  Polynomial nf = normal_form(gr.transplant(elim_ring_, embed), cache_);

  for (const auto& t : nf.terms())
    for (std::size_t i = nbase; i < namb; ++i)
      if (t.m.e[i]) {
        out.verdict = Tri::no;
        return out;
      }

  std::vector<Term> wterms;
  for (const auto& t : nf.terms()) {
    Monomial wm{std::vector<std::uint32_t>(nbase + m, 0)};
    for (std::size_t i = 0; i < nbase; ++i) wm.e[i] = t.m.e[i];
    for (std::size_t k = 0; k < m; ++k) wm.e[nbase + k] = t.m.e[namb + k];
    wterms.push_back({std::move(wm), t.c});
  }
  Polynomial w = Polynomial::from_terms(witness_ring_, std::move(wterms));
  if (!(evaluate_witness(w) == gr))
    throw engine_fault("membership witness does not re-evaluate to the element");
  out.verdict = Tri::yes;
  out.witness = std::move(w);
  return out;
}

Polynomial Subalgebra::evaluate_witness(const Polynomial& w) const {
  if (!same_ring(w.ring(), witness_ring_))
    throw structural_error("witness lives outside the witness ring");
  const Algebra& A = *ambient_;
  const std::size_t nbase = A.nbase_vars();
  Polynomial acc = Polynomial::zero(A.ambient());
  for (const auto& t : w.terms()) {
    Polynomial prod = Polynomial::constant(A.ambient(), t.c);
    for (std::size_t i = 0; i < t.m.e.size(); ++i) {
      if (!t.m.e[i]) continue;
      Polynomial img = i < nbase ? Polynomial::variable(A.ambient(), i)
                                 : gens_[i - nbase];
      prod = A.reduce(prod * pow_reduced(A, img, t.m.e[i]));
    }
    acc = acc + prod;
  }
  return A.reduce(acc);
}

Subalgebra::Presentation Subalgebra::presentation(const Budget& budget) const {
  Presentation out;
  if (status_ != GBStatus::ok) {
    out.status = status_;
    return out;
  }
  const std::size_t nbase = ambient_->nbase_vars();
  const std::size_t namb = ambient_->ambient()->nvars();
  const std::size_t m = gens_.size();
  const AlgebraPtr& base = ambient_->base();

  // Tag-level relations: elimination-basis elements free of the ambient's own
  // generators, minus those already implied by the base.
  std::vector<Polynomial> rels;
  for (const auto& e : cache_.elems) {
    bool bottom_only = true;
    bool base_only = true;
    for (const auto& t : e.terms()) {
      for (std::size_t i = nbase; i < namb && bottom_only; ++i)
        if (t.m.e[i]) bottom_only = false;
      for (std::size_t k = 0; k < m && base_only; ++k)
        if (t.m.e[namb + k]) base_only = false;
    }
    if (!bottom_only) continue;
    std::vector<Term> terms;
    for (const auto& t : e.terms()) {
      Monomial wm{std::vector<std::uint32_t>(nbase + m, 0)};
      for (std::size_t i = 0; i < nbase; ++i) wm.e[i] = t.m.e[i];
      for (std::size_t k = 0; k < m; ++k) wm.e[nbase + k] = t.m.e[namb + k];
      terms.push_back({std::move(wm), t.c});
    }
    Polynomial rel = Polynomial::from_terms(witness_ring_, std::move(terms));
    if (base_only && base) {
      // tag slots are never touched (a base-only relation has no tag
      // exponents), but the map must still cover them
      std::vector<std::size_t> shrink(nbase + m, 0);
      for (std::size_t i = 0; i < nbase; ++i) shrink[i] = i;
      Polynomial in_base = rel.transplant(base->ambient(), shrink);
      if (base->reduce(in_base).is_zero()) continue;
    }
    rels.push_back(std::move(rel));
  }

  std::vector<std::string> names;
  {
    std::vector<std::string> taken =
        base ? base->ambient()->vars : std::vector<std::string>{};
    for (std::size_t k = 0; k < m; ++k) {
      std::string stem = k < 26 ? std::string(1, char('a' + k))
                                : "g" + std::to_string(k + 1);
      std::string name = fresh_tag(stem, taken);
      taken.push_back(name);
      names.push_back(std::move(name));
    }
  }

  RingPtr pres_ring = Algebra::ambient_ring_for(ambient_->field(), base, names);
  std::vector<std::size_t> ident(nbase + m);
  for (std::size_t i = 0; i < ident.size(); ++i) ident[i] = i;
  std::vector<Polynomial> pres_rels;
  pres_rels.reserve(rels.size());
  for (const auto& r : rels) pres_rels.push_back(r.transplant(pres_ring, ident));

  try {
    out.algebra = Algebra::make(ambient_->field(), base, names, std::move(pres_rels),
                                ambient_->is_zero_algebra(), budget);
  } catch (const budget_exhausted& e) {
    out.status = e.status();
    return out;
  }

  try {
    out.inclusion.emplace(out.algebra, ambient_, gens_);
  } catch (const structural_error& e) {
    throw engine_fault(std::string("subalgebra presentation is not a presentation: ") +
                       e.what());
  }
  KernelResult ker = morphism_kernel(*out.inclusion, budget);
  if (ker.ok() && !ker.gens.empty())
    throw engine_fault("subalgebra presentation inclusion has a nonzero kernel");
  if (!ker.ok()) out.status = ker.status;
  return out;
}

Tri Subalgebra::equal(const Subalgebra& S, const Subalgebra& T) {
  if (!Algebra::same_presentation(S.ambient(), T.ambient()))
    throw structural_error("subalgebra comparison across different ambient algebras");
  bool indeterminate = false;
  auto check = [&indeterminate](const Subalgebra& container,
                                const std::vector<Polynomial>& elems) {
    for (const auto& g : elems) {
      Membership m = container.member(g.reorder(container.ambient()->ambient()));
      if (m.verdict == Tri::no) return false;
      if (m.verdict == Tri::indeterminate) indeterminate = true;
    }
    return true;
  };
  if (!check(T, S.generators())) return Tri::no;
  if (!check(S, T.generators())) return Tri::no;
  return indeterminate ? Tri::indeterminate : Tri::yes;
}

Subalgebra frob_image(const AlgebraPtr& A, unsigned n, const Budget& budget) {
  if (n == 0) throw structural_error("Frobenius image level must be at least 1");
  std::vector<Polynomial> gens;
  gens.reserve(A->gens().size());
  for (std::size_t k = 0; k < A->gens().size(); ++k)
    gens.push_back(A->gen_poly(k).frobenius_power(n));
  return Subalgebra(A, std::move(gens), budget);
}

} // namespace frobperf
