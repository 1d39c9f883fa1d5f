#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "frobperf/errors.hpp"
#include "frobperf/groebner.hpp"
#include "frobperf/polynomial.hpp"

namespace frobperf {

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

// A finitely presented algebra over a base. The base is either the prime
// field itself (base == nullptr) or another presented algebra; at most two
// presentation layers may sit above the prime field.
//
// Elements are represented by polynomials in the ambient ring, whose
// variables are the base's ambient variables followed by this algebra's own
// generators. A reduced Groebner basis of the full relation ideal (embedded
// base relations plus own relations) is computed once at construction, so
// every algebra in existence has canonical normal forms.
class Algebra {
public:
  // The ambient polynomial ring a presentation over `base` with these
  // generator names would live in. Exposed so callers can build relation
  // polynomials before the algebra exists.
  static RingPtr ambient_ring_for(const PrimeField& field, const AlgebraPtr& base,
                                  const std::vector<std::string>& gens);

  // Presents the algebra and caches the basis of its full relation ideal.
  // Throws structural_error for ill-formed presentations (field mismatch,
  // depth > 2, relations outside the ambient ring, or a zero algebra unless
  // allow_zero), and budget_exhausted if the basis cannot be completed.
  static AlgebraPtr make(PrimeField field, AlgebraPtr base,
                         std::vector<std::string> gens,
                         std::vector<Polynomial> relations, bool allow_zero = false,
                         const Budget& budget = {});

  const PrimeField& field() const { return field_; }
  const AlgebraPtr& base() const { return base_; }
  const RingPtr& ambient() const { return ambient_; }
  std::size_t nbase_vars() const { return nbase_; }
  const std::vector<std::string>& gens() const { return gens_; }
  const std::vector<Polynomial>& relations() const { return relations_; }
  const std::vector<Polynomial>& full_relations() const { return full_relations_; }
  const GroebnerBasis& basis() const { return basis_; }
  bool is_zero_algebra() const { return basis_.is_unit(); }

  // Normal form of an ambient-ring element modulo the full relation ideal.
  Polynomial reduce(const Polynomial& f) const;

  // The ambient variable representing own generator k.
  Polynomial gen_poly(std::size_t k) const;

  // Structural equality of presentations, recursively through the bases.
  // Relation lists are compared as sets.
  static bool same_presentation(const AlgebraPtr& a, const AlgebraPtr& b);

private:
  Algebra(PrimeField field, AlgebraPtr base, std::vector<std::string> gens,
          std::vector<Polynomial> relations, bool allow_zero, const Budget& budget);

  PrimeField field_;
  AlgebraPtr base_;
  RingPtr ambient_;
  std::size_t nbase_ = 0;
  std::vector<std::string> gens_;
  std::vector<Polynomial> relations_;      // own relations only
  std::vector<Polynomial> full_relations_; // embedded base relations + own
  GroebnerBasis basis_;
};

// Base-preserving algebra morphism, determined by images of the source's own
// generators; the base maps identically (sources and targets must have
// structurally equal bases). Well-definedness is verified at construction:
// every source relation must map into the target's relation ideal.
class AlgebraMorphism {
public:
  AlgebraMorphism(AlgebraPtr source, AlgebraPtr target,
                  std::vector<Polynomial> gen_images);

  static AlgebraMorphism identity(const AlgebraPtr& A);
  // g after f.
  static AlgebraMorphism compose(const AlgebraMorphism& g, const AlgebraMorphism& f);

  const AlgebraPtr& source() const { return source_; }
  const AlgebraPtr& target() const { return target_; }
  // Normal forms in the target's ambient ring, one per source generator.
  const std::vector<Polynomial>& gen_images() const { return images_; }

  // Image of a source-ambient polynomial, reduced in the target.
  Polynomial apply(const Polynomial& f) const;

private:
  AlgebraPtr source_;
  AlgebraPtr target_;
  std::vector<Polynomial> images_;
};

// The Frobenius twist A^(q), q = p^n, relative to the base: the same
// presentation with every base-variable exponent multiplied by q. For an
// algebra over the prime field the twist is A itself.
AlgebraPtr frobenius_twist(const AlgebraPtr& A, unsigned n);

// The relative Frobenius twist(A, n) -> A: identity on the base, own
// generators to their p^n-th powers.
AlgebraMorphism relative_frobenius(const AlgebraPtr& A, unsigned n);

struct KernelResult {
  GBStatus status = GBStatus::ok;
  // Source-ambient normal forms generating the kernel ideal of the source.
  std::vector<Polynomial> gens;
  bool ok() const { return status == GBStatus::ok; }
  bool is_zero() const { return ok() && gens.empty(); }
};

// Kernel of a morphism, as an ideal of the source, by tag-variable
// elimination in the target.
KernelResult morphism_kernel(const AlgebraMorphism& f, const Budget& budget = {});

struct TensorResult {
  AlgebraPtr algebra;
  AlgebraMorphism left;  // A -> A tensor B
  AlgebraMorphism right; // B -> A tensor B
};

// A tensor_base B for algebras over a structurally equal base. Generator
// names from B are renamed when they collide.
TensorResult tensor_over_base(const AlgebraPtr& A, const AlgebraPtr& B,
                              const Budget& budget = {});

// A tensor_{base, psi} target(psi): the same generators and relations with
// base variables pushed through psi. psi's source must be A's base.
AlgebraPtr base_change(const AlgebraPtr& A, const AlgebraMorphism& psi,
                       const Budget& budget = {});

struct ImageResult {
  GBStatus status = GBStatus::ok;
  AlgebraPtr algebra; // source / kernel(f)
  std::optional<AlgebraMorphism> projection; // source -> image
  std::optional<AlgebraMorphism> inclusion;  // image -> target, injective
  bool ok() const { return status == GBStatus::ok; }
};

// Schematic image of a morphism: the source modulo the kernel, with its
// factorization through the target.
ImageResult schematic_image(const AlgebraMorphism& f, const Budget& budget = {});

struct SupResult {
  GBStatus status = GBStatus::ok;
  AlgebraPtr sup;
  std::optional<AlgebraMorphism> into_target; // sup -> A, injective
  std::optional<AlgebraMorphism> from_left;   // E1 -> sup
  std::optional<AlgebraMorphism> from_right;  // E2 -> sup
  bool ok() const { return status == GBStatus::ok; }
};

// Smallest common over-object of e1: E1 -> A and e2: E2 -> A inside A: the
// schematic image of E1 tensor_base E2 -> A, with both factorizations.
SupResult sup_factorization(const AlgebraMorphism& e1, const AlgebraMorphism& e2,
                            const Budget& budget = {});

// b^e with a reduction after every multiplication, so intermediate results
// never leave the algebra's normal-form representatives.
Polynomial pow_reduced(const Algebra& A, Polynomial b, std::uint64_t e);

} // namespace frobperf
