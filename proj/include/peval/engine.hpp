#pragma once

// Local control: builds an incomplete ASLD tree for one atom with the
// leftmost rule and extracts its resultants.

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "peval/asld.hpp"

namespace peval {

enum class BackendKind { Stacks, Trees, Relation };

std::string_view backend_name(BackendKind b);
std::optional<BackendKind> parse_backend(std::string_view name);

enum class RuleKind { Derive, DeriveFact, PopDerive, ExternalDerive };
enum class LeafKind { Success, Failure, Residualized };
enum class ResidualReason { None, Inadmissible, ExternalNotEvaluable, NondeterministicStop, Budget };

std::string_view rule_name(RuleKind r);
std::string_view leaf_name(LeafKind k);
std::string_view reason_name(ResidualReason r);

struct Resultant {
  Atom head;
  std::vector<Atom> body;
  LeafKind kind = LeafKind::Success;
  ResidualReason reason = ResidualReason::None;
};

struct UnfoldStats {
  std::uint64_t steps = 0;
  std::uint64_t derive = 0;
  std::uint64_t derive_fact = 0;
  std::uint64_t pop = 0;
  std::uint64_t external = 0;
  std::uint64_t successes = 0;
  std::uint64_t failures = 0;
  std::uint64_t residualized = 0;
  std::uint64_t budget_leaves = 0;
  std::uint64_t peak_cells = 0;

  /// Sums counters; peak_cells takes the maximum.
  UnfoldStats& operator+=(const UnfoldStats& o);
};

struct UnfoldNode {
  int parent = -1;  // -1 for the root
  RuleKind rule = RuleKind::Derive;  // edge from the parent
  int clause = -1;  // program clause position for derive edges
  Substitution mgu;
  std::vector<GoalItem> goal;
  std::optional<LeafKind> leaf;
  ResidualReason reason = ResidualReason::None;
};

struct UnfoldTree {
  std::vector<UnfoldNode> nodes;  // nodes[0] is the root
};

struct UnfoldConfig {
  BackendKind backend = BackendKind::Stacks;
  std::shared_ptr<const Wqo> wqo = std::make_shared<HEmbedWqo>();
  bool determinacy_stop = false;
  std::uint64_t budget = 1'000'000;  // resolution steps per unfold
  bool record_tree = false;
  /// When set, a stack and a tree backend run in lockstep instead of
  /// `backend`, and every comparison is logged here.
  LockstepLog* lockstep = nullptr;
};

struct UnfoldResult {
  /// One per success or residualized leaf, in depth-first clause order.
  std::vector<Resultant> resultants;
  UnfoldStats stats;
  std::optional<UnfoldTree> tree;
};

/// Precondition: `a` is not a builtin call. `gen` must issue ids above
/// every variable of `p` and `a`.
UnfoldResult unfold(const Atom& a, const Program& p, const Registry& reg, const UnfoldConfig& cfg,
                    VarGen& gen);

}  // namespace peval
