#pragma once

// Homeomorphic embedding and the well-quasi-orders used as unfolding
// whistles.

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "peval/terms.hpp"

namespace peval {

/// s ⊴ t: variables embed variables, s may embed into an argument of t
/// (diving), and equal functors embed argumentwise (coupling). Integers
/// are arity-0 functors, so distinct integers never embed each other.
bool embeds_term(const Term& s, const Term& t);

/// False unless the atoms are comparable.
bool embeds_atom(const Atom& a, const Atom& b);

class Wqo {
 public:
  virtual ~Wqo() = default;
  /// Whether `earlier` blocks `later`; only called on comparable atoms.
  virtual bool leq(const Atom& earlier, const Atom& later) const = 0;
  virtual std::string name() const = 0;
  /// When true the engine checks against every atom selected so far in
  /// the derivation instead of the covering ancestors.
  virtual bool full_sequence() const { return false; }
};

class HEmbedWqo : public Wqo {
 public:
  bool leq(const Atom& earlier, const Atom& later) const override {
    return embeds_atom(earlier, later);
  }
  std::string name() const override { return "hembed"; }
};

class FullSeqHEmbedWqo : public HEmbedWqo {
 public:
  std::string name() const override { return "fullseq-hembed"; }
  bool full_sequence() const override { return true; }
};

/// Never blocks. Not a wqo; unfolding relies on the step budget.
class NoneWqo : public Wqo {
 public:
  bool leq(const Atom&, const Atom&) const override { return false; }
  std::string name() const override { return "none"; }
};

/// Blocks atoms deeper than k, and repeated variants at any depth.
class DepthBoundWqo : public Wqo {
 public:
  explicit DepthBoundWqo(std::size_t k) : k_(k) {}
  bool leq(const Atom& earlier, const Atom& later) const override;
  std::string name() const override { return "depth:" + std::to_string(k_); }
  std::size_t bound() const noexcept { return k_; }

 private:
  std::size_t k_;
};

/// Accepts `hembed`, `none`, `depth:<k>` and `fullseq-hembed`; throws
/// std::invalid_argument otherwise.
std::shared_ptr<const Wqo> make_wqo(std::string_view spec);

/// True iff no comparable atom among `ancestors` is leq `a`.
bool admissible(const Atom& a, std::span<const Atom> ancestors, const Wqo& w);

}  // namespace peval
