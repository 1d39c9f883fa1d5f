#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "frobperf/groebner.hpp"

namespace frobperf {

struct RunOptions {
  Budget budget;
  unsigned max_steps = 4;  // preperfection chain depth unless a command overrides
  std::uint64_t seed = 0;  // steers equal-degree splitting inside factorization
  std::string json_path;   // when nonempty, also write every report as one array
  std::string base_dir;    // resolves relative file arguments (default: cwd)
};

// Parses and runs a script. Declarations bind in order (each may use the
// names declared before it); afterwards the commands run in order, each
// printing one pretty JSON report to `out`. The return value is the process
// exit code: 0 when every command produced a definite answer, 2 when some
// command ended in an indeterminate or budget-limited status, 1 on errors
// (syntax, unknown names, ill-formed input, engine faults) with a diagnostic
// line on `err`. Identical text, options and seed produce identical bytes.
int run_script(std::string_view text, const RunOptions& opts, std::ostream& out,
               std::ostream& err);

} // namespace frobperf
