#include "frobperf/perfection.hpp"

#include <algorithm>
#include <limits>

namespace frobperf {

namespace {

bool base_only(const Algebra& A, const Polynomial& f) {
  for (const auto& t : f.terms())
    for (std::size_t i = A.nbase_vars(); i < A.ambient()->nvars(); ++i)
      if (t.m.e[i]) return false;
  return true;
}

Tri kernel_to_tri(const KernelResult& k) {
  if (!k.ok()) return Tri::indeterminate;
  return k.gens.empty() ? Tri::yes : Tri::no;
}

} // namespace

bool verify_coherent_certificate(const AlgebraPtr& A, const CoherentCertificate& cert) {
  if (!same_ring(cert.a.ring(), A->ambient()) ||
      !same_ring(cert.r.ring(), A->ambient()))
    throw structural_error("certificate elements live outside the algebra");
  if (!base_only(*A, cert.r))
    throw structural_error("certificate multiplier must come from the base");
  Polynomial ap = cert.a.frobenius_power(1);
  return A->reduce(cert.r * (ap - cert.a)).is_zero();
}

PreperfectionReport preperfect(const AlgebraPtr& A, unsigned max_steps,
                               const std::vector<Polynomial>& probes,
                               const std::vector<CoherentCertificate>& certs,
                               const Budget& budget) {
  if (max_steps < 1) throw structural_error("preperfection needs at least one step");
  PreperfectionReport rep;
  rep.max_steps = max_steps;

  for (std::size_t k = 0; k < A->gens().size(); ++k) {
    rep.probes.push_back({A->reduce(A->gen_poly(k)), {}, std::nullopt});
  }
  for (const auto& p : probes) {
    if (!same_ring(p.ring(), A->ambient()))
      throw structural_error("probe element lives outside the algebra");
    Polynomial r = A->reduce(p);
    bool dup = false;
    for (const auto& existing : rep.probes)
      if (existing.element == r) dup = true;
    if (!dup) rep.probes.push_back({std::move(r), {}, std::nullopt});
  }

  for (const auto& c : certs) {
    PreperfectionReport::CertificateOutcome out{c, verify_coherent_certificate(A, c),
                                                Polynomial::zero(A->ambient()),
                                                {}};
    out.target = A->reduce(c.r * c.a);
    rep.certificates.push_back(std::move(out));
  }

  for (unsigned n = 1; n <= max_steps; ++n) {
    Subalgebra B = frob_image(A, n, budget);
    if (B.cache_status() != GBStatus::ok) {
      rep.status = PreperfStatus::truncated;
      rep.truncation = B.cache_status();
      rep.truncated_at = n;
      break;
    }
    Subalgebra::Presentation pres = B.presentation(budget);
    Tri inj = kernel_to_tri(
        morphism_kernel(relative_frobenius(frobenius_twist(A, n - 1), 1), budget));

    for (auto& probe : rep.probes) {
      if (probe.falsified_at) continue;
      Tri verdict = B.member(probe.element).verdict;
      probe.member_per_level.push_back(verdict);
      if (verdict == Tri::no) probe.falsified_at = n;
    }
    for (auto& cert : rep.certificates) {
      if (!cert.valid) continue;
      Tri verdict = B.member(cert.target).verdict;
      if (verdict == Tri::no)
        throw engine_fault("certified coherent element rejected by the image chain");
      if (verdict == Tri::indeterminate) {
        // The elimination cache gave up, but coherence still decides: when
        // r*a^{p^n} = r*a holds by reduction, the target is r times a
        // p^n-th power, hence in B_n.
        const std::uint64_t p = A->field().p();
        std::uint64_t q = 1;
        bool fits = true;
        for (unsigned i = 0; i < n && fits; ++i) {
          fits = q <= std::numeric_limits<std::uint64_t>::max() / p;
          if (fits) q *= p;
        }
        if (fits &&
            A->reduce(cert.cert.r * pow_reduced(*A, cert.cert.a, q)) == cert.target)
          verdict = Tri::yes;
      }
      cert.member_per_level.push_back(verdict);
    }

    rep.chain.push_back({n, std::move(B), std::move(pres), inj, Tri::indeterminate});

    if (rep.chain.size() >= 2) {
      auto& prev = rep.chain[rep.chain.size() - 2];
      auto& last = rep.chain.back();
      prev.equals_next = Subalgebra::equal(prev.subalgebra, last.subalgebra);
      if (prev.equals_next == Tri::yes) {
        rep.status = PreperfStatus::stabilized;
        rep.stabilized_at = prev.n;
        rep.candidate = prev.pres;
        rep.candidate_grade = "stabilized-chain";
        break;
      }
    }
  }

  if (rep.status != PreperfStatus::stabilized) {
    std::vector<Polynomial> lower_gens;
    for (const auto& c : rep.certificates)
      if (c.valid) lower_gens.push_back(c.target);
    std::vector<Polynomial> upper_gens;
    for (const auto& p : rep.probes)
      if (!p.falsified_at) upper_gens.push_back(p.element);

    Subalgebra lower(A, std::move(lower_gens), budget);
    rep.lower_bound = lower.presentation(budget);
    Subalgebra upper(A, std::move(upper_gens), budget);
    rep.upper_bound = upper.presentation(budget);
    if (!rep.certificates.empty() &&
        std::any_of(rep.certificates.begin(), rep.certificates.end(),
                    [](const auto& c) { return c.valid; })) {
      rep.candidate = rep.lower_bound;
      rep.candidate_grade = "certified-lower-bound";
    }
  }
  return rep;
}

namespace {

Polynomial minor_det(const std::vector<std::vector<Polynomial>>& J,
                     const std::vector<std::size_t>& rows,
                     const std::vector<std::size_t>& cols, const RingPtr& ring) {
  const std::size_t n = rows.size();
  if (n == 0) return Polynomial::constant(ring, 1);
  if (cols.size() != n) throw engine_fault("minor is not square");
  if (n == 1) return J[rows[0]][cols[0]];
  Polynomial acc = Polynomial::zero(ring);
  std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t j = 0; j < n; ++j) {
    const Polynomial& pivot = J[rows[0]][cols[j]];
    if (pivot.is_zero()) continue;
    std::vector<std::size_t> sub_cols;
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) sub_cols.push_back(cols[k]);
    Polynomial sub = minor_det(J, sub_rows, sub_cols, ring);
    Polynomial contrib = pivot * sub;
    acc = (j % 2 == 0) ? acc + contrib : acc - contrib;
  }
  return acc;
}

} // namespace

UnramifiedReport unramified_check(const AlgebraPtr& B, const Budget& budget) {
  UnramifiedReport out;
  const std::size_t m = B->relations().size();
  const std::size_t n = B->gens().size();
  const std::size_t nbase = B->nbase_vars();

  if (B->is_zero_algebra()) {
    out.verdict = Ramification::unramified;
    out.etale = Tri::yes;
    return out;
  }
  if (n == 0) {
    // No generators: the base surjects, so there is nothing to ramify along.
    // Etale is certified only when every own relation is already implied by
    // the base (the identity algebra); a proper quotient stays uncertified.
    out.verdict = Ramification::unramified;
    bool base_implied = true;
    for (const auto& r : B->relations()) {
      if (!B->base()) {
        base_implied = base_implied && r.is_zero();
      } else {
        std::vector<std::size_t> shrink(nbase);
        for (std::size_t i = 0; i < nbase; ++i) shrink[i] = i;
        if (!B->base()->reduce(r.transplant(B->base()->ambient(), shrink)).is_zero())
          base_implied = false;
      }
    }
    out.etale = base_implied ? Tri::yes : Tri::indeterminate;
    return out;
  }
  if (m < n) {
    out.verdict = Ramification::ramified;
    out.etale = Tri::no;
    return out;
  }

  std::vector<std::vector<Polynomial>> J(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      J[i].push_back(B->relations()[i].derivative(nbase + j));

  std::vector<Polynomial> gens = B->full_relations();
  std::vector<std::size_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = i;
  std::vector<std::size_t> all_cols(n);
  for (std::size_t j = 0; j < n; ++j) all_cols[j] = j;
  while (true) {
    Polynomial det = minor_det(J, rows, all_cols, B->ambient());
    if (!det.is_zero()) gens.push_back(std::move(det));
    // next n-combination of rows out of m
    std::size_t i = n;
    while (i > 0 && rows[i - 1] == m - n + (i - 1)) --i;
    if (i == 0) break;
    ++rows[i - 1];
    for (std::size_t j = i; j < n; ++j) rows[j] = rows[j - 1] + 1;
  }

  Tri unit = is_unit_ideal(Ideal(B->ambient(), std::move(gens)), budget);
  switch (unit) {
    case Tri::yes: out.verdict = Ramification::unramified; break;
    case Tri::no: out.verdict = Ramification::ramified; break;
    default: out.verdict = Ramification::unknown; break;
  }
  if (m == n) {
    // the one maximal minor is the determinant, so the unramified test and
    // the standard-etale certificate coincide
    out.etale = unit;
  } else {
    out.etale = out.verdict == Ramification::ramified ? Tri::no : Tri::indeterminate;
  }
  return out;
}

RelPerfReport is_relatively_perfect(const AlgebraPtr& A, const Budget& budget) {
  RelPerfReport out;
  KernelResult ker = morphism_kernel(relative_frobenius(A, 1), budget);
  if (!ker.ok()) {
    out.reason = std::string("kernel computation: ") + to_string(ker.status);
    return out;
  }
  if (!ker.gens.empty()) {
    out.verdict = Tri::no;
    out.reason = "relative Frobenius has a nonzero kernel";
    out.witness = ker.gens.front();
    return out;
  }
  Subalgebra B1 = frob_image(A, 1, budget);
  if (B1.cache_status() != GBStatus::ok) {
    out.reason = std::string("image cache: ") + to_string(B1.cache_status());
    return out;
  }
  for (std::size_t k = 0; k < A->gens().size(); ++k) {
    Polynomial g = A->reduce(A->gen_poly(k));
    Tri verdict = B1.member(g).verdict;
    if (verdict == Tri::no) {
      out.verdict = Tri::no;
      out.reason = "generator " + A->gens()[k] + " is not in B_1";
      out.witness = g;
      return out;
    }
    if (verdict == Tri::indeterminate) {
      out.reason = "membership of " + A->gens()[k] + " in B_1 hit a budget";
      return out;
    }
  }
  out.verdict = Tri::yes;
  out.reason = "relative Frobenius is bijective onto B_1";
  return out;
}

CrosscheckReport crosscheck_pi0_preperfection(const AlgebraMorphism& pi0_side,
                                              const AlgebraMorphism& preperf_side,
                                              const Budget& budget) {
  if (!Algebra::same_presentation(pi0_side.target(), preperf_side.target()))
    throw structural_error("crosscheck sides map into different algebras");
  const AlgebraPtr& A = pi0_side.target();
  CrosscheckReport out;

  Subalgebra S1(A, pi0_side.gen_images(), budget);
  std::vector<Polynomial> right_images;
  for (const auto& g : preperf_side.gen_images())
    right_images.push_back(g.reorder(A->ambient()));
  Subalgebra S2(A, std::move(right_images), budget);
  out.subalgebras_equal = Subalgebra::equal(S1, S2);

  switch (unramified_check(pi0_side.source(), budget).verdict) {
    case Ramification::unramified: out.pi0_unramified = Tri::yes; break;
    case Ramification::ramified: out.pi0_unramified = Tri::no; break;
    default: out.pi0_unramified = Tri::indeterminate; break;
  }

  out.frobenius_fixed = Tri::yes;
  for (const auto& g : pi0_side.gen_images()) {
    Polynomial gg = g.reorder(A->ambient());
    if (!A->reduce(gg.frobenius_power(1) - gg).is_zero()) {
      out.frobenius_fixed = Tri::no;
      break;
    }
  }

  if (out.subalgebras_equal == Tri::no || out.frobenius_fixed == Tri::no)
    out.overall = "mismatch";
  else if (out.subalgebras_equal == Tri::yes && out.pi0_unramified == Tri::no)
    out.overall = "counterexample_to_perfectness";
  else if (out.subalgebras_equal == Tri::yes && out.pi0_unramified == Tri::yes &&
           out.frobenius_fixed == Tri::yes)
    out.overall = "isomorphisms";
  else
    out.overall = "indeterminate";
  return out;
}

} // namespace frobperf
