#pragma once

// Global control: the set of specialized atoms, abstraction by variant
// and instance reuse or msg generalization, and residual code generation.

#include <optional>
#include <string>
#include <vector>

#include "peval/engine.hpp"

namespace peval {

struct SpecVersion {
  Atom key;          // generalized call pattern, renamed apart
  std::string name;  // residual predicate name, e.g. qsort__1
  std::vector<Resultant> resultants;
  /// For every residualized body atom of every resultant, the version it
  /// calls (-1 for builtins).
  std::vector<std::vector<int>> calls;
  bool done = false;
  UnfoldStats stats;
};

class SpecSet {
 public:
  const std::vector<SpecVersion>& versions() const noexcept { return versions_; }
  std::vector<SpecVersion>& versions() noexcept { return versions_; }

  /// Index of a version with a variant key, else of the first version
  /// whose key `a` is an instance of.
  std::optional<std::size_t> covering(const Atom& a) const;

  std::size_t add(Atom key, std::string name);

 private:
  std::vector<SpecVersion> versions_;
};

struct Abstraction {
  enum class Kind { Reuse, Add, Generalize };
  Kind kind;
  std::size_t existing = 0;  // Reuse: the covering version; Generalize: the embedded one
  Atom atom;                 // Add: the new atom; Generalize: msg of new and existing
};

/// Variant or instance of a key: reuse. Embeds a comparable key B:
/// generalize to msg(new, B). Otherwise add.
Abstraction abstract(const Atom& a, const SpecSet& set, VarGen& gen);

struct SpecializeConfig {
  UnfoldConfig unfold;
  std::size_t max_versions = 100'000;
};

struct ResidualProgram {
  Program program;  // bridges first, then version clauses
  std::vector<SpecVersion> versions;
  UnfoldStats stats;
  double local_ms = 0;
  double global_ms = 0;
  /// Set when some unfold hit its step budget.
  std::optional<Atom> budget_atom;
};

/// Throws std::invalid_argument without entries, std::runtime_error when
/// the version limit is exceeded.
ResidualProgram specialize(const Program& p, const SpecializeConfig& cfg);

/// Entry-reachable version clauses with bridges dropped and version names
/// mapped back to their source predicate names.
std::vector<Clause> entry_reachable(const ResidualProgram& r);

/// Every non-builtin body atom of a version clause calls a version whose
/// key it is an instance of.
bool closed(const ResidualProgram& r, const Registry& reg);

}  // namespace peval
