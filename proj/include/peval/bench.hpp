#pragma once

// Benchmark corpus and the backend comparison harness.

#include <functional>
#include <string>
#include <vector>

#include "peval/globalctl.hpp"

namespace peval {

struct BenchCase {
  std::string name;
  std::string source;  // clauses only, no directives
  std::vector<std::size_t> sizes;
  /// Entry list contains repeated elements; subject to the ablation check.
  bool repeated = false;
  std::function<std::string(std::size_t n)> entry;
  /// At least three queries that are instances of the entry.
  std::function<std::vector<std::string>(std::size_t n)> queries;

  /// Source plus `:- entry` for size n.
  Program load(std::size_t n) const;
};

/// qsort, nrev, nrev_rep, rev and permute.
const std::vector<BenchCase>& corpus();
const BenchCase* find_case(std::string_view name);

struct BenchConfig {
  std::vector<std::string> wqos = {"hembed", "fullseq-hembed", "depth:8", "none"};
  std::vector<BackendKind> backends = {BackendKind::Stacks, BackendKind::Trees,
                                       BackendKind::Relation};
  /// Overrides each case's default sizes when non-empty.
  std::vector<std::size_t> sizes;
  std::uint64_t budget = 1'000'000;
  /// Step budget for wqo=none, which only stops on the budget.
  std::uint64_t unbounded_budget = 2'000;
};

struct BenchRow {
  std::string case_name;
  std::size_t n = 0;
  std::string backend;
  std::string wqo;
  UnfoldStats stats;
  std::size_t versions = 0;
  std::size_t clauses = 0;
  double local_ms = 0;
  double global_ms = 0;
  std::string residual_hash;
  std::string error;  // empty on success
};

struct BenchCheck {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<BenchCheck> checks;
  std::vector<std::string> notes;  // informational, never gating

  bool ok() const;
};

/// 64-bit FNV-1a of `text`, as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

/// Throws std::invalid_argument on an unknown case name; "all" selects
/// the whole corpus.
BenchReport run_suite(const std::vector<std::string>& selection, const BenchConfig& cfg);

/// One row for a single specialization run.
BenchRow bench_row(const ResidualProgram& r, std::string case_name, std::size_t n,
                   BackendKind backend, const std::string& wqo);

std::string report_json(const BenchReport& r);
std::string report_csv(const BenchReport& r);
/// Writes report.json and report.csv into `dir`, creating it if needed.
void write_report(const BenchReport& r, const std::string& dir);

/// Counters of one run as a JSON object, shared by the CLI stats file.
std::string stats_json(const BenchRow& row);

}  // namespace peval
