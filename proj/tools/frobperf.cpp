// Command-line front end: reads a script, runs it, and prints one JSON
// report per command. Exit code 0 when every answer is definite, 2 when any
// report is indeterminate or hit a budget, 1 on errors.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "frobperf/groebner.hpp"
#include "frobperf/script.hpp"

int main(int argc, char** argv) {
  CLI::App app{"exact characteristic-p commutative algebra toolkit"};
  app.require_subcommand(1);

  std::string script_path;
  frobperf::RunOptions opts;
  CLI::App* run = app.add_subcommand("run", "run a script file");
  run->add_option("script", script_path, "script file")->required();
  run->add_option("--max-pairs", opts.budget.max_pairs,
                  "S-pair budget for basis completions");
  run->add_option("--max-degree", opts.budget.max_degree,
                  "degree budget for basis completions");
  run->add_option("--max-steps", opts.max_steps,
                  "default image-chain depth for preperfect/crosscheck");
  run->add_option("--threads", opts.budget.threads,
                  "worker threads for basis completions");
  run->add_option("--seed", opts.seed, "seed for randomized factorization splits");
  run->add_option("--json", opts.json_path,
                  "also write every report to this file as one JSON array");

  CLI11_PARSE(app, argc, argv);

  std::ifstream f(script_path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot read '" << script_path << "'\n";
    return 1;
  }
  std::ostringstream ss;
  ss << f.rdbuf();
  opts.base_dir = std::filesystem::path(script_path).parent_path().string();
  return frobperf::run_script(ss.str(), opts, std::cout, std::cerr);
}
