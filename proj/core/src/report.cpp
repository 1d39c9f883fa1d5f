#include "frobperf/report.hpp"

#include <cctype>

#include "frobperf/parse.hpp"
#include "report_detail.hpp"

namespace frobperf {

namespace detail {

namespace {

ojson poly_strings(const std::vector<Polynomial>& ps) {
  ojson a = ojson::array();
  for (const auto& p : ps) a.push_back(to_string(p));
  return a;
}

ojson tri_strings(const std::vector<Tri>& ts) {
  ojson a = ojson::array();
  for (Tri t : ts) a.push_back(to_string(t));
  return a;
}

} // namespace

ojson presentation_ojson(const AlgebraPtr& A) {
  if (!A) throw engine_fault("presentation of a missing algebra");
  ojson o = ojson::object();
  if (A->base())
    o["base"] = presentation_ojson(A->base());
  else
    o["base"] = "GF(" + std::to_string(A->field().p()) + ")";
  o["vars"] = A->gens();
  o["relations"] = poly_strings(A->relations());
  return o;
}

ojson subalgebra_presentation_ojson(const Subalgebra::Presentation& P) {
  ojson o = ojson::object();
  o["status"] = P.ok() ? "ok" : to_string(P.status);
  if (!P.algebra) return o;
  o.update(presentation_ojson(P.algebra));
  ojson gens = ojson::array();
  if (P.inclusion)
    for (const auto& g : P.inclusion->gen_images()) gens.push_back(to_string(g));
  o["generators"] = gens;
  return o;
}

ojson morphism_ojson(const AlgebraMorphism& f) {
  ojson o = ojson::object();
  o["source"] = presentation_ojson(f.source());
  o["target"] = presentation_ojson(f.target());
  ojson im = ojson::object();
  for (std::size_t k = 0; k < f.source()->gens().size(); ++k)
    im[f.source()->gens()[k]] = to_string(f.gen_images()[k]);
  o["images"] = im;
  return o;
}

ojson kernel_ojson(const KernelResult& k) {
  ojson o = ojson::object();
  o["status"] = k.ok() ? "ok" : to_string(k.status);
  if (k.ok()) {
    o["zero"] = k.is_zero();
    o["generators"] = poly_strings(k.gens);
  }
  return o;
}

ojson preperfection_ojson(const PreperfectionReport& rep) {
  ojson o = ojson::object();
  switch (rep.status) {
    case PreperfStatus::stabilized:
      o["status"] = "stabilized";
      o["at"] = rep.stabilized_at;
      break;
    case PreperfStatus::not_stabilized:
      o["status"] = "not_stabilized";
      break;
    case PreperfStatus::truncated:
      o["status"] = "truncated";
      o["truncated_at"] = rep.truncated_at;
      o["truncation"] = to_string(rep.truncation);
      break;
  }
  o["max_steps"] = rep.max_steps;

  ojson chain = ojson::array();
  bool all_injective = true;
  for (const auto& level : rep.chain) {
    ojson en = ojson::object();
    en["n"] = level.n;
    en.update(subalgebra_presentation_ojson(level.pres));
    en["generators"] = poly_strings(level.subalgebra.generators());
    en["injective"] = to_string(level.injective);
    en["equals_next"] = to_string(level.equals_next);
    if (level.injective != Tri::yes) all_injective = false;
    chain.push_back(std::move(en));
  }
  o["chain"] = std::move(chain);

  ojson certified = ojson::array();
  for (const auto& c : rep.certificates) {
    ojson en = ojson::object();
    en["a"] = to_string(c.cert.a);
    en["r"] = to_string(c.cert.r);
    en["valid"] = c.valid;
    en["target"] = to_string(c.target);
    en["member_per_level"] = tri_strings(c.member_per_level);
    certified.push_back(std::move(en));
  }
  o["certified"] = std::move(certified);

  ojson falsified = ojson::array();
  for (const auto& p : rep.probes) {
    if (!p.falsified_at) continue;
    ojson en = ojson::object();
    en["element"] = to_string(p.element);
    en["falsified_at"] = *p.falsified_at;
    en["member_per_level"] = tri_strings(p.member_per_level);
    falsified.push_back(std::move(en));
  }
  o["falsified"] = std::move(falsified);

  o["candidate"] =
      rep.candidate ? subalgebra_presentation_ojson(*rep.candidate) : ojson(nullptr);

  ojson verdicts = ojson::object();
  verdicts["candidate_grade"] =
      rep.candidate_grade.empty() ? "none" : rep.candidate_grade;
  {
    ojson inj = ojson::array();
    for (const auto& level : rep.chain) inj.push_back(to_string(level.injective));
    verdicts["injective_per_level"] = std::move(inj);
  }
  verdicts["chain_interpretation"] =
      all_injective ? "preperfection" : "image-chain intersection";
  verdicts["lower_bound"] = rep.lower_bound
                                ? subalgebra_presentation_ojson(*rep.lower_bound)
                                : ojson(nullptr);
  verdicts["upper_bound"] = rep.upper_bound
                                ? subalgebra_presentation_ojson(*rep.upper_bound)
                                : ojson(nullptr);
  o["verdicts"] = std::move(verdicts);
  return o;
}

ojson unramified_ojson(const UnramifiedReport& rep) {
  ojson o = ojson::object();
  o["verdict"] = to_string(rep.verdict);
  o["etale"] = to_string(rep.etale);
  return o;
}

ojson relperf_ojson(const RelPerfReport& rep) {
  ojson o = ojson::object();
  o["verdict"] = to_string(rep.verdict);
  o["reason"] = rep.reason;
  o["witness"] = rep.witness ? ojson(to_string(*rep.witness)) : ojson(nullptr);
  return o;
}

ojson crosscheck_ojson(const CrosscheckReport& rep) {
  ojson o = ojson::object();
  o["verdict"] = rep.overall;
  o["pi0_unramified"] = to_string(rep.pi0_unramified);
  o["subalgebras_equal"] = to_string(rep.subalgebras_equal);
  o["frobenius_fixed"] = to_string(rep.frobenius_fixed);
  return o;
}

ojson decomposition_ojson(const ComponentDecomposition& d) {
  ojson o = ojson::object();
  o["components"] = d.component_ideals.size();
  o["idempotents"] = poly_strings(d.idempotents);
  o["certified_disjoint"] = d.certified_disjoint;
  o["best_effort"] = d.best_effort;
  ojson rels = ojson::array();
  for (const auto& I : d.component_ideals) rels.push_back(poly_strings(I.gens));
  o["component_relations"] = std::move(rels);
  return o;
}

ojson pi0_ring_ojson(const Pi0Ring& ring, const ComponentDecomposition& d,
                     Tri frobenius_fixed) {
  ojson o = ojson::object();
  o["components"] = d.component_ideals.size();
  o["idempotents"] = poly_strings(d.idempotents);
  o["ring"] = presentation_ojson(ring.algebra);
  ojson images = ojson::array();
  if (ring.inclusion)
    for (const auto& g : ring.inclusion->gen_images()) images.push_back(to_string(g));
  o["images"] = std::move(images);
  o["frobenius_fixed"] = to_string(frobenius_fixed);
  o["certified_disjoint"] = d.certified_disjoint;
  o["best_effort"] = d.best_effort;
  return o;
}

ojson closure_ojson(const ClosureResult& r) {
  ojson o = ojson::object();
  o["status"] = to_string(r.status);
  o["iterations"] = r.iterations;
  o["objects"] = r.groupoid.objects.size();
  o["arrows"] = r.groupoid.arrows.size();
  o["groupoid"] = ojson::parse(groupoid_to_json(r.groupoid));
  ojson amap = ojson::object();
  for (const auto& [from, to] : r.arrow_map) amap[from] = to;
  o["arrow_map"] = std::move(amap);
  ojson origins = ojson::object();
  for (const auto& [name, origin] : r.origins) {
    ojson en = ojson::object();
    if (origin.kind == ArrowOrigin::Kind::original) {
      en["kind"] = "original";
      en["arrow"] = origin.a;
    } else {
      en["kind"] = "composite";
      en["a"] = origin.a;
      en["b"] = origin.b;
    }
    origins[name] = std::move(en);
  }
  o["origins"] = std::move(origins);
  return o;
}

std::string dump_report(const ojson& o) { return o.dump(2) + "\n"; }

} // namespace detail

namespace {

using detail::ojson;

AlgebraPtr algebra_from(const ojson& o, const Budget& budget) {
  if (!o.is_object() || !o.contains("base") || !o.contains("vars") ||
      !o.contains("relations"))
    throw structural_error(
        "presentation object needs \"base\", \"vars\" and \"relations\"");

  AlgebraPtr base;
  std::optional<PrimeField> field;
  const ojson& b = o.at("base");
  if (b.is_string()) {
    const std::string s = b.get<std::string>();
    if (s.size() < 5 || s.rfind("GF(", 0) != 0 || s.back() != ')')
      throw structural_error("base field must look like \"GF(p)\", got \"" + s + "\"");
    std::uint64_t p = 0;
    for (std::size_t i = 3; i + 1 < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw structural_error("base field must look like \"GF(p)\", got \"" + s + "\"");
      p = p * 10 + static_cast<std::uint64_t>(s[i] - '0');
      if (p > 100000) throw structural_error("field characteristic out of range");
    }
    field.emplace(static_cast<std::uint32_t>(p));
  } else {
    base = algebra_from(b, budget);
    field.emplace(base->field());
  }

  std::vector<std::string> vars;
  for (const auto& v : o.at("vars")) {
    if (!v.is_string()) throw structural_error("\"vars\" must hold strings");
    vars.push_back(v.get<std::string>());
  }
  RingPtr ambient = Algebra::ambient_ring_for(*field, base, vars);
  std::vector<Polynomial> rels;
  for (const auto& r : o.at("relations")) {
    if (!r.is_string()) throw structural_error("\"relations\" must hold strings");
    rels.push_back(parse_polynomial(r.get<std::string>(), ambient));
  }
  // allow_zero: a serialized presentation came from an existing algebra, so
  // re-parsing must not reject what construction once allowed.
  return Algebra::make(*field, base, std::move(vars), std::move(rels), true, budget);
}

} // namespace

std::string presentation_json(const AlgebraPtr& A) {
  return detail::dump_report(detail::presentation_ojson(A));
}

AlgebraPtr presentation_from_json(const std::string& text, const Budget& budget) {
  ojson o;
  try {
    o = ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw structural_error(std::string("presentation json: ") + e.what());
  }
  try {
    return algebra_from(o, budget);
  } catch (const nlohmann::json::exception& e) {
    throw structural_error(std::string("presentation json: ") + e.what());
  }
}

std::string morphism_json(const AlgebraMorphism& f) {
  return detail::dump_report(detail::morphism_ojson(f));
}

std::string preperfection_json(const PreperfectionReport& rep) {
  return detail::dump_report(detail::preperfection_ojson(rep));
}

std::string unramified_json(const UnramifiedReport& rep) {
  return detail::dump_report(detail::unramified_ojson(rep));
}

std::string relperf_json(const RelPerfReport& rep) {
  return detail::dump_report(detail::relperf_ojson(rep));
}

std::string crosscheck_json(const CrosscheckReport& rep) {
  return detail::dump_report(detail::crosscheck_ojson(rep));
}

std::string decomposition_json(const ComponentDecomposition& d) {
  return detail::dump_report(detail::decomposition_ojson(d));
}

std::string closure_json(const ClosureResult& r) {
  return detail::dump_report(detail::closure_ojson(r));
}

} // namespace frobperf
