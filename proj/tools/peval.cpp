// peval: specialize programs, run queries, drive the benchmark suite.
// Talks to the library only through the C interface.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "peval.h"

namespace {

std::uint64_t default_budget() {
  if (const char* env = std::getenv("PEVAL_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    std::cerr << "peval: ignoring invalid PEVAL_BUDGET '" << env << "'\n";
  }
  return 1000000;
}

int status_exit(peval_status s) {
  switch (s) {
    case PEVAL_OK:
      return 0;
    case PEVAL_ERR_BUDGET:
      return 2;
    case PEVAL_ERR_CHECK:
      return 3;
    default:
      return 1;
  }
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "peval: cannot write " << path << "\n";
    return false;
  }
  f << text;
  return static_cast<bool>(f);
}

struct SpecOptions {
  std::string input;
  std::string output;
  std::string stats;
  std::string backend = "stacks";
  std::string wqo = "hembed";
  std::string rule = "leftmost";
  bool determinacy_stop = false;
  std::uint64_t budget = 0;
};

int cmd_spec(const SpecOptions& o) {
  peval_program* prog = nullptr;
  peval_status s = peval_program_load(o.input.c_str(), &prog);
  if (s != PEVAL_OK) {
    std::cerr << "peval: " << peval_last_error() << "\n";
    return status_exit(s);
  }
  peval_spec_config cfg;
  peval_spec_config_init(&cfg);
  cfg.backend = o.backend.c_str();
  cfg.wqo = o.wqo.c_str();
  cfg.rule = o.rule.c_str();
  cfg.determinacy_stop = o.determinacy_stop;
  cfg.budget = o.budget;
  peval_result* res = nullptr;
  s = peval_specialize(prog, &cfg, &res);
  peval_program_free(prog);
  if (s != PEVAL_OK) std::cerr << "peval: " << peval_last_error() << "\n";
  if (!res) return status_exit(s);

  bool ok = true;
  if (o.output.empty() || o.output == "-")
    std::cout << peval_result_text(res);
  else
    ok = write_file(o.output, peval_result_text(res));
  if (!o.stats.empty()) ok = write_file(o.stats, peval_result_json(res)) && ok;
  peval_result_free(res);
  if (!ok) return 1;
  return status_exit(s);
}

int cmd_run(const std::string& input, const std::string& query, std::uint64_t budget) {
  peval_program* prog = nullptr;
  peval_status s = peval_program_load(input.c_str(), &prog);
  if (s != PEVAL_OK) {
    std::cerr << "peval: " << peval_last_error() << "\n";
    return status_exit(s);
  }
  peval_answers* ans = nullptr;
  s = peval_run(prog, query.c_str(), budget, &ans);
  peval_program_free(prog);
  if (s != PEVAL_OK) std::cerr << "peval: " << peval_last_error() << "\n";
  if (!ans) return status_exit(s);
  std::size_t n = peval_answers_count(ans);
  for (std::size_t i = 0; i < n; ++i) std::cout << peval_answers_get(ans, i) << "\n";
  if (n == 0 && s == PEVAL_OK) std::cout << "no.\n";
  peval_answers_free(ans);
  return status_exit(s);
}

int cmd_bench(const std::string& cases, const std::string& sizes, const std::string& out) {
  peval_result* res = nullptr;
  peval_status s = peval_bench(cases.c_str(), sizes.empty() ? nullptr : sizes.c_str(),
                               out.empty() ? nullptr : out.c_str(), &res);
  if (res) {
    std::cout << peval_result_text(res);
    peval_result_free(res);
  }
  if (s != PEVAL_OK) std::cerr << "peval: " << peval_last_error() << "\n";
  return status_exit(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial evaluator for definite logic programs"};
  app.set_version_flag("--version", std::string(peval_version()));
  app.require_subcommand(1);

  std::uint64_t budget = default_budget();

  SpecOptions so;
  so.budget = budget;
  auto* spec = app.add_subcommand("spec", "Specialize a program for its entry directives");
  spec->add_option("input", so.input, "Program file (.pl)")->required()->check(CLI::ExistingFile);
  spec->add_option("-o,--output", so.output, "Residual program file (default: stdout)");
  spec->add_option("--stats", so.stats, "Write counters as JSON to this file");
  spec->add_option("--backend", so.backend, "Ancestor backend")
      ->check(CLI::IsMember({"stacks", "trees", "relation"}));
  spec->add_option("--wqo", so.wqo, "Whistle: hembed, none, depth:<k> or fullseq-hembed");
  spec->add_option("--rule", so.rule, "Computation rule")->check(CLI::IsMember({"leftmost"}));
  spec->add_flag("--determinacy-stop", so.determinacy_stop,
                 "Stop unfolding before nondeterministic steps");
  spec->add_option("--budget", so.budget, "Resolution steps per unfold");

  std::string run_input, run_query;
  std::uint64_t run_budget = budget;
  auto* run = app.add_subcommand("run", "Run a query with the reference interpreter");
  run->add_option("program", run_input, "Program file (.pl)")->required()->check(CLI::ExistingFile);
  run->add_option("query", run_query, "Query, e.g. 'qsort([3,1,2],R,[])'")->required();
  run->add_option("--budget", run_budget, "Resolution step budget");

  std::string cases = "all", sizes, out_dir = "bench-out";
  auto* bench = app.add_subcommand("bench", "Run the backend comparison suite");
  bench->add_option("--cases", cases, "Comma-separated case names or 'all'");
  bench->add_option("--sizes", sizes, "Comma-separated sizes overriding the defaults");
  bench->add_option("--out", out_dir, "Directory for report.json and report.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (*spec) return cmd_spec(so);
  if (*run) return cmd_run(run_input, run_query, run_budget);
  return cmd_bench(cases, sizes, out_dir);
}
