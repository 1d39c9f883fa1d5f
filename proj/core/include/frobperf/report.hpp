#pragma once

#include <string>

#include "frobperf/algebra.hpp"
#include "frobperf/components.hpp"
#include "frobperf/groupoid.hpp"
#include "frobperf/perfection.hpp"
#include "frobperf/subalgebra.hpp"

namespace frobperf {

// Deterministic JSON renderings of the engine's result structures. Every
// function returns a pretty-printed object with two-space indentation, stable
// key order, canonical polynomial strings, and a trailing newline, so equal
// inputs are equal bytes.
//
// A presentation serializes as {"base": ..., "vars": [...], "relations":
// [...]} where "base" is either the string "GF(p)" or a nested presentation,
// and relation strings use the DSL polynomial syntax.
std::string presentation_json(const AlgebraPtr& A);

// Inverse of presentation_json: rebuilds the algebra from its serialized
// form. Throws structural_error on malformed input.
AlgebraPtr presentation_from_json(const std::string& text, const Budget& budget = {});

std::string morphism_json(const AlgebraMorphism& f);
std::string preperfection_json(const PreperfectionReport& rep);
std::string unramified_json(const UnramifiedReport& rep);
std::string relperf_json(const RelPerfReport& rep);
std::string crosscheck_json(const CrosscheckReport& rep);
std::string decomposition_json(const ComponentDecomposition& d);
std::string closure_json(const ClosureResult& r);

} // namespace frobperf
