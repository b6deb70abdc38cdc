#pragma once

// Plain leftmost SLD interpreter, used as the reference semantics.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "peval/builtins.hpp"

namespace peval {

/// A builtin was reached with its sufficient condition false, e.g.
/// `X =< 1` with X free.
class SldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunResult {
  /// Computed answers restricted to the query variables, in depth-first
  /// clause-order discovery order.
  std::vector<Substitution> answers;
  std::uint64_t steps = 0;
  bool complete = true;  // false when the budget ran out
};

RunResult run(const Program& p, const Registry& reg, std::span<const Atom> query,
              std::uint64_t budget, VarGen& gen);

/// Uses Registry::for_program(p).
RunResult run(const Program& p, std::span<const Atom> query, std::uint64_t budget, VarGen& gen);

}  // namespace peval
