#pragma once

// JSON builders shared by the report facade and the script runner. This
// header stays out of include/ so the installed surface never depends on the
// vendored JSON library; external consumers get the string-based facade in
// frobperf/report.hpp.

#include <json.hpp>

#include "frobperf/algebra.hpp"
#include "frobperf/components.hpp"
#include "frobperf/groupoid.hpp"
#include "frobperf/perfection.hpp"
#include "frobperf/subalgebra.hpp"

namespace frobperf::detail {

using ojson = nlohmann::ordered_json;

ojson presentation_ojson(const AlgebraPtr& A);
ojson subalgebra_presentation_ojson(const Subalgebra::Presentation& P);
ojson morphism_ojson(const AlgebraMorphism& f);
ojson kernel_ojson(const KernelResult& k);
ojson preperfection_ojson(const PreperfectionReport& rep);
ojson unramified_ojson(const UnramifiedReport& rep);
ojson relperf_ojson(const RelPerfReport& rep);
ojson crosscheck_ojson(const CrosscheckReport& rep);
ojson decomposition_ojson(const ComponentDecomposition& d);
ojson pi0_ring_ojson(const Pi0Ring& ring, const ComponentDecomposition& d,
                     Tri frobenius_fixed);
ojson closure_ojson(const ClosureResult& r);

// dump(2) plus a trailing newline: the one serialization every emitter uses,
// so identical reports are identical bytes.
std::string dump_report(const ojson& o);

} // namespace frobperf::detail
