#include "frobperf/algebra.hpp"

#include <algorithm>
#include <limits>

namespace frobperf {

Polynomial pow_reduced(const Algebra& A, Polynomial b, std::uint64_t e) {
  Polynomial r = Polynomial::constant(A.ambient(), 1);
  b = A.reduce(b);
  while (e) {
    if (e & 1) r = A.reduce(r * b);
    e >>= 1;
    if (e) b = A.reduce(b * b);
  }
  return r;
}

namespace {

std::string fresh_name(std::string stem, const std::vector<std::string>& taken) {
  auto used = [&taken](const std::string& s) {
    return std::find(taken.begin(), taken.end(), s) != taken.end();
  };
  if (!used(stem)) return stem;
  std::string base = stem + "_r";
  if (!used(base)) return base;
  for (unsigned n = 2;; ++n) {
    std::string cand = base + std::to_string(n);
    if (!used(cand)) return cand;
  }
}

} // namespace

RingPtr Algebra::ambient_ring_for(const PrimeField& field, const AlgebraPtr& base,
                                  const std::vector<std::string>& gens) {
  std::vector<std::string> vars;
  if (base) {
    if (!(base->field() == field))
      throw structural_error("base algebra lives over a different prime field");
    vars = base->ambient()->vars;
  }
  vars.insert(vars.end(), gens.begin(), gens.end());
  return make_ring(field, std::move(vars));
}

Algebra::Algebra(PrimeField field, AlgebraPtr base, std::vector<std::string> gens,
                 std::vector<Polynomial> relations, bool allow_zero,
                 const Budget& budget)
    : field_(field), base_(std::move(base)), gens_(std::move(gens)),
      relations_(std::move(relations)) {
  if (base_ && base_->base())
    throw structural_error("presentation towers of depth greater than two");
  ambient_ = ambient_ring_for(field_, base_, gens_);
  nbase_ = base_ ? base_->ambient()->nvars() : 0;

  if (base_) {
    std::vector<std::size_t> embed(nbase_);
    for (std::size_t i = 0; i < nbase_; ++i) embed[i] = i;
    for (const auto& r : base_->full_relations())
      full_relations_.push_back(r.transplant(ambient_, embed));
  }
  for (const auto& r : relations_) {
    if (!same_ring(r.ring(), ambient_))
      throw structural_error("relation lives outside the presentation's ambient ring");
    full_relations_.push_back(r);
  }

  basis_ = groebner_basis(Ideal(ambient_, full_relations_), false, budget);
  if (!basis_.ok())
    throw budget_exhausted(basis_.status, std::string("presenting an algebra: ") +
                                              to_string(basis_.status));
  if (!allow_zero && basis_.is_unit())
    throw structural_error("zero algebra rejected unless allow_zero");
}

AlgebraPtr Algebra::make(PrimeField field, AlgebraPtr base,
                         std::vector<std::string> gens,
                         std::vector<Polynomial> relations, bool allow_zero,
                         const Budget& budget) {
  return AlgebraPtr(new Algebra(field, std::move(base), std::move(gens),
                                std::move(relations), allow_zero, budget));
}

Polynomial Algebra::reduce(const Polynomial& f) const {
  if (!same_ring(f.ring(), ambient_))
    throw structural_error("element lives outside the algebra's ambient ring");
  return normal_form(f, basis_);
}

Polynomial Algebra::gen_poly(std::size_t k) const {
  if (k >= gens_.size()) throw structural_error("generator index out of range");
  return Polynomial::variable(ambient_, nbase_ + k);
}

bool Algebra::same_presentation(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (!(a->field_ == b->field_)) return false;
  if (a->gens_ != b->gens_) return false;
  if (!same_presentation(a->base_, b->base_)) return false;
  if (a->relations_.size() != b->relations_.size()) return false;
  auto sorted = [](const std::vector<Polynomial>& v) {
    std::vector<Polynomial> s = v;
    std::sort(s.begin(), s.end(), [](const Polynomial& x, const Polynomial& y) {
      return Polynomial::compare(x, y) < 0;
    });
    return s;
  };
  std::vector<Polynomial> ra = sorted(a->relations_), rb = sorted(b->relations_);
  for (std::size_t i = 0; i < ra.size(); ++i)
    if (!(ra[i] == rb[i])) return false;
  return true;
}

AlgebraMorphism::AlgebraMorphism(AlgebraPtr source, AlgebraPtr target,
                                 std::vector<Polynomial> gen_images)
    : source_(std::move(source)), target_(std::move(target)),
      images_(std::move(gen_images)) {
  if (!source_ || !target_) throw structural_error("morphism endpoints missing");
  if (!(source_->field() == target_->field()))
    throw structural_error("morphism across different prime fields");
  if (!Algebra::same_presentation(source_->base(), target_->base()))
    throw structural_error("morphism endpoints have different bases");
  if (images_.size() != source_->gens().size())
    throw structural_error("morphism needs one image per source generator");
  for (auto& img : images_) {
    if (!same_ring(img.ring(), target_->ambient()))
      throw structural_error("generator image lives outside the target");
    img = target_->reduce(img);
  }
  for (const auto& rel : source_->relations()) {
    if (!apply(rel).is_zero())
      throw structural_error("relation " + rel.str() +
                             " does not map to zero; the morphism is ill-defined");
  }
}

AlgebraMorphism AlgebraMorphism::identity(const AlgebraPtr& A) {
  std::vector<Polynomial> images;
  images.reserve(A->gens().size());
  for (std::size_t k = 0; k < A->gens().size(); ++k)
    images.push_back(A->gen_poly(k));
  return AlgebraMorphism(A, A, std::move(images));
}

AlgebraMorphism AlgebraMorphism::compose(const AlgebraMorphism& g,
                                         const AlgebraMorphism& f) {
  if (!Algebra::same_presentation(f.target(), g.source()))
    throw structural_error("composition endpoints do not match");
  std::vector<Polynomial> images;
  images.reserve(f.images_.size());
  for (const auto& img : f.images_)
    images.push_back(g.apply(img.reorder(g.source()->ambient())));
  return AlgebraMorphism(f.source(), g.target(), std::move(images));
}

Polynomial AlgebraMorphism::apply(const Polynomial& f) const {
  if (!same_ring(f.ring(), source_->ambient()))
    throw structural_error("morphism applied outside its source");
  const auto& T = *target_;
  const std::size_t nbase = source_->nbase_vars();
  Polynomial acc = Polynomial::zero(T.ambient());
  for (const auto& t : f.terms()) {
    Polynomial prod = Polynomial::constant(T.ambient(), t.c);
    for (std::size_t i = 0; i < t.m.e.size(); ++i) {
      if (!t.m.e[i]) continue;
      Polynomial img = i < nbase ? Polynomial::variable(T.ambient(), i)
                                 : images_[i - nbase];
      prod = T.reduce(prod * pow_reduced(T, img, t.m.e[i]));
    }
    acc = acc + prod;
  }
  return T.reduce(acc);
}

AlgebraPtr frobenius_twist(const AlgebraPtr& A, unsigned n) {
  if (!A) throw structural_error("twist of a missing algebra");
  if (n == 0 || !A->base()) return A;
  const std::uint32_t p = A->field().p();
  std::uint64_t q = 1;
  for (unsigned i = 0; i < n; ++i) {
    q *= p;
    if (q > std::numeric_limits<std::uint32_t>::max())
      throw structural_error("twist exponent overflows the monomial range");
  }
  const std::size_t nbase = A->nbase_vars();
  std::vector<Polynomial> twisted;
  twisted.reserve(A->relations().size());
  for (const auto& rel : A->relations()) {
    std::vector<Term> terms;
    terms.reserve(rel.terms().size());
    for (const auto& t : rel.terms()) {
      Monomial m = t.m;
      for (std::size_t i = 0; i < nbase; ++i) {
        std::uint64_t e = std::uint64_t(m.e[i]) * q;
        if (e > std::numeric_limits<std::uint32_t>::max())
          throw structural_error("twist exponent overflows the monomial range");
        m.e[i] = static_cast<std::uint32_t>(e);
      }
      terms.push_back({std::move(m), t.c});
    }
    twisted.push_back(Polynomial::from_terms(A->ambient(), std::move(terms)));
  }
  return Algebra::make(A->field(), A->base(), A->gens(), std::move(twisted), true);
}

AlgebraMorphism relative_frobenius(const AlgebraPtr& A, unsigned n) {
  if (n == 0) return AlgebraMorphism::identity(A);
  AlgebraPtr tw = frobenius_twist(A, n);
  const std::uint32_t p = A->field().p();
  std::uint64_t q = 1;
  for (unsigned i = 0; i < n; ++i) {
    q *= p;
    if (q > std::numeric_limits<std::uint32_t>::max())
      throw structural_error("Frobenius exponent overflows the monomial range");
  }
  std::vector<Polynomial> images;
  images.reserve(A->gens().size());
  for (std::size_t k = 0; k < A->gens().size(); ++k) {
    Monomial m = Monomial::var(A->ambient()->nvars(), A->nbase_vars() + k,
                               static_cast<std::uint32_t>(q));
    images.push_back(Polynomial::from_terms(A->ambient(), {{std::move(m), 1}}));
  }
  try {
    return AlgebraMorphism(tw, A, std::move(images));
  } catch (const structural_error& e) {
    throw engine_fault(std::string("relative Frobenius is ill-defined: ") + e.what());
  }
}

KernelResult morphism_kernel(const AlgebraMorphism& f, const Budget& budget) {
  const Algebra& S = *f.source();
  const Algebra& T = *f.target();
  const std::size_t nbase = T.nbase_vars();
  const std::size_t ntgt = T.ambient()->nvars();
  const std::size_t ngens = S.gens().size();

  std::vector<std::string> vars = T.ambient()->vars;
  for (std::size_t k = 0; k < ngens; ++k)
    vars.push_back(fresh_name("_k" + std::to_string(k), vars));
  std::vector<std::uint32_t> top, bottom;
  for (std::size_t i = 0; i < nbase; ++i) bottom.push_back(i);
  for (std::size_t i = nbase; i < ntgt; ++i) top.push_back(i);
  for (std::size_t k = 0; k < ngens; ++k) bottom.push_back(ntgt + k);
  auto K = make_ring(T.field(), std::move(vars), MonomialOrder::elimination(top, bottom));

  std::vector<std::size_t> embed(ntgt);
  for (std::size_t i = 0; i < ntgt; ++i) embed[i] = i;
  std::vector<Polynomial> gens;
  for (const auto& r : T.full_relations()) gens.push_back(r.transplant(K, embed));
  for (std::size_t k = 0; k < ngens; ++k)
    gens.push_back(Polynomial::variable(K, ntgt + k) -
                   f.gen_images()[k].transplant(K, embed));

  GroebnerBasis gb = groebner_basis(Ideal(K, std::move(gens)), false, budget);
  KernelResult out;
  out.status = gb.status;
  if (!gb.ok()) return out;

  const std::size_t nsrc = S.ambient()->nvars();
  for (const auto& e : gb.elems) {
    bool bottom_only = true;
    for (const auto& t : e.terms())
      for (std::size_t i = nbase; i < ntgt && bottom_only; ++i)
        if (t.m.e[i]) bottom_only = false;
    if (!bottom_only) continue;
    std::vector<Term> terms;
    for (const auto& t : e.terms()) {
      Monomial m{std::vector<std::uint32_t>(nsrc, 0)};
      for (std::size_t i = 0; i < nbase; ++i) m.e[i] = t.m.e[i];
      for (std::size_t k = 0; k < ngens; ++k) m.e[nbase + k] = t.m.e[ntgt + k];
      terms.push_back({std::move(m), t.c});
    }
    Polynomial back = S.reduce(Polynomial::from_terms(S.ambient(), std::move(terms)));
    if (!back.is_zero()) out.gens.push_back(std::move(back));
  }
  return out;
}

TensorResult tensor_over_base(const AlgebraPtr& A, const AlgebraPtr& B,
                              const Budget& budget) {
  if (!Algebra::same_presentation(A->base(), B->base()))
    throw structural_error("tensor factors have different bases");
  const std::size_t nbase = A->nbase_vars();
  const std::size_t na = A->gens().size();

  std::vector<std::string> gens = A->gens();
  std::vector<std::string> taken =
      A->base() ? A->base()->ambient()->vars : std::vector<std::string>{};
  taken.insert(taken.end(), gens.begin(), gens.end());
  for (const auto& g : B->gens()) {
    std::string name = fresh_name(g, taken);
    taken.push_back(name);
    gens.push_back(std::move(name));
  }

  RingPtr amb = Algebra::ambient_ring_for(A->field(), A->base(), gens);
  std::vector<std::size_t> embed_a(A->ambient()->nvars());
  for (std::size_t i = 0; i < embed_a.size(); ++i) embed_a[i] = i;
  std::vector<std::size_t> embed_b(B->ambient()->nvars());
  for (std::size_t i = 0; i < nbase; ++i) embed_b[i] = i;
  for (std::size_t k = 0; nbase + k < embed_b.size(); ++k)
    embed_b[nbase + k] = nbase + na + k;

  std::vector<Polynomial> rels;
  for (const auto& r : A->relations()) rels.push_back(r.transplant(amb, embed_a));
  for (const auto& r : B->relations()) rels.push_back(r.transplant(amb, embed_b));

  AlgebraPtr T = Algebra::make(A->field(), A->base(), gens, std::move(rels), true, budget);
  std::vector<Polynomial> left, right;
  for (std::size_t k = 0; k < na; ++k) left.push_back(T->gen_poly(k));
  for (std::size_t k = 0; k < B->gens().size(); ++k)
    right.push_back(T->gen_poly(na + k));
  return {T, AlgebraMorphism(A, T, std::move(left)),
          AlgebraMorphism(B, T, std::move(right))};
}

AlgebraPtr base_change(const AlgebraPtr& A, const AlgebraMorphism& psi,
                       const Budget& budget) {
  if (!A->base()) throw structural_error("base change needs an algebra with a base");
  if (!Algebra::same_presentation(psi.source(), A->base()))
    throw structural_error("base change morphism does not start at the base");
  const AlgebraPtr& S = psi.target();
  const std::size_t nbase_old = A->nbase_vars();
  const std::size_t nbase_new = S->ambient()->nvars();

  std::vector<std::string> gens;
  std::vector<std::string> taken = S->ambient()->vars;
  for (const auto& g : A->gens()) {
    std::string name = fresh_name(g, taken);
    taken.push_back(name);
    gens.push_back(std::move(name));
  }
  RingPtr amb = Algebra::ambient_ring_for(A->field(), S, gens);

  // The new base's reduced basis stays a Groebner basis after appending
  // generator variables (degree-first orders restrict along initial segments),
  // so relation images can be reduced while they are rewritten.
  std::vector<std::size_t> embed_s(nbase_new);
  for (std::size_t i = 0; i < nbase_new; ++i) embed_s[i] = i;
  GroebnerBasis ext;
  ext.ring = amb;
  for (const auto& e : S->basis().elems) ext.elems.push_back(e.transplant(amb, embed_s));

  std::vector<Polynomial> images(A->ambient()->nvars(), Polynomial::zero(amb));
  for (std::size_t i = 0; i < nbase_old; ++i)
    images[i] = psi.gen_images()[i].transplant(amb, embed_s);
  for (std::size_t k = 0; nbase_old + k < images.size(); ++k)
    images[nbase_old + k] = Polynomial::variable(amb, nbase_new + k);

  auto pow_nf = [&](Polynomial b, std::uint64_t e) {
    Polynomial r = Polynomial::constant(amb, 1);
    b = normal_form(b, ext);
    while (e) {
      if (e & 1) r = normal_form(r * b, ext);
      e >>= 1;
      if (e) b = normal_form(b * b, ext);
    }
    return r;
  };

  std::vector<Polynomial> rels;
  rels.reserve(A->relations().size());
  for (const auto& rel : A->relations()) {
    Polynomial acc = Polynomial::zero(amb);
    for (const auto& t : rel.terms()) {
      Polynomial prod = Polynomial::constant(amb, t.c);
      for (std::size_t i = 0; i < t.m.e.size(); ++i)
        if (t.m.e[i]) prod = normal_form(prod * pow_nf(images[i], t.m.e[i]), ext);
      acc = acc + prod;
    }
    rels.push_back(normal_form(acc, ext));
  }
  return Algebra::make(A->field(), S, std::move(gens), std::move(rels), true, budget);
}

ImageResult schematic_image(const AlgebraMorphism& f, const Budget& budget) {
  KernelResult ker = morphism_kernel(f, budget);
  ImageResult out;
  out.status = ker.status;
  if (!ker.ok()) return out;

  const AlgebraPtr& S = f.source();
  std::vector<Polynomial> rels = S->relations();
  rels.insert(rels.end(), ker.gens.begin(), ker.gens.end());
  AlgebraPtr img =
      Algebra::make(S->field(), S->base(), S->gens(), std::move(rels), true, budget);
  out.algebra = img;

  std::vector<Polynomial> proj_images, incl_images;
  std::vector<std::size_t> embed(S->ambient()->nvars());
  for (std::size_t i = 0; i < embed.size(); ++i) embed[i] = i;
  for (std::size_t k = 0; k < S->gens().size(); ++k) {
    proj_images.push_back(img->gen_poly(k));
    incl_images.push_back(f.gen_images()[k]);
  }
  out.projection.emplace(S, img, std::move(proj_images));
  out.inclusion.emplace(img, f.target(), std::move(incl_images));

  KernelResult check = morphism_kernel(*out.inclusion, budget);
  if (check.ok() && !check.gens.empty())
    throw engine_fault("schematic image does not embed into the target");
  return out;
}

SupResult sup_factorization(const AlgebraMorphism& e1, const AlgebraMorphism& e2,
                            const Budget& budget) {
  if (!Algebra::same_presentation(e1.target(), e2.target()))
    throw structural_error("sup arguments map into different algebras");
  TensorResult T = tensor_over_base(e1.source(), e2.source(), budget);

  std::vector<Polynomial> images;
  const AlgebraPtr& A = e1.target();
  for (const auto& g : e1.gen_images()) images.push_back(g.reorder(A->ambient()));
  for (const auto& g : e2.gen_images()) images.push_back(g.reorder(A->ambient()));
  AlgebraMorphism combined(T.algebra, A, std::move(images));

  ImageResult img = schematic_image(combined, budget);
  SupResult out;
  out.status = img.status;
  if (!img.ok()) return out;
  out.sup = img.algebra;
  out.into_target = img.inclusion;
  out.from_left.emplace(AlgebraMorphism::compose(*img.projection, T.left));
  out.from_right.emplace(AlgebraMorphism::compose(*img.projection, T.right));
  return out;
}

} // namespace frobperf
