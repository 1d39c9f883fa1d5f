#pragma once

#include <stdexcept>
#include <string>

namespace frobperf {

// Structural misuse of the API: mismatched rings, ill-formed input, unknown
// names. Distinct from budget exhaustion, which is reported as a status value.
class structural_error : public std::runtime_error {
public:
  explicit structural_error(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant failed; indicates a bug in the engine, not bad input.
class engine_fault : public std::logic_error {
public:
  explicit engine_fault(const std::string& what) : std::logic_error(what) {}
};

// Three-valued verdict used wherever a budget can preempt a definite answer.
enum class Tri { yes, no, indeterminate };

inline const char* to_string(Tri t) {
  switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    default: return "indeterminate";
  }
}

} // namespace frobperf
