#pragma once

// ASLD states and derivation rules.
//
// A state is a goal of atoms and pop marks together with an ancestor
// backend. Every goal entry carries a backend tag: the stack backend
// ignores it, the tree backend stores the proof-tree node the atom hangs
// from, and the relation backend stores the atom's own ancestor list.

#include <cassert>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "peval/builtins.hpp"
#include "peval/embedding.hpp"
#include "peval/program.hpp"

namespace peval {

struct PopMark {
  friend bool operator==(PopMark, PopMark) = default;
};

using GoalItem = std::variant<Atom, PopMark>;

inline bool is_pop(const GoalItem& g) { return std::holds_alternative<PopMark>(g); }

template <class Tag>
struct GoalEntry {
  GoalItem item;
  Tag tag{};
};

/// Shared sink for the stack/tree lockstep comparison.
struct LockstepLog {
  std::uint64_t checks = 0;
  std::uint64_t mismatches = 0;
  std::uint64_t accuracy_violations = 0;
  std::string first_mismatch;
};

// ------------------------------------------------------------------ backends

class StackBackend {
 public:
  using Tag = std::monostate;
  static constexpr const char* kName = "stacks";

  std::size_t height() const noexcept { return height_; }

  std::vector<Atom> contents(const Tag&) const {
    std::vector<Atom> out;
    out.reserve(height_);
    for (const Node* n = top_.get(); n; n = n->next.get()) out.push_back(n->atom);
    return out;
  }

  Tag push(const Atom& selected, const Tag&) {
    std::size_t below = top_ ? top_->cells : 0;
    top_ = std::make_shared<const Node>(Node{selected, top_, below + selected.size()});
    ++height_;
    return {};
  }
  Tag child_tag(const Tag& t) const { return t; }

  void pop() {
    assert(top_);
    top_ = top_->next;
    --height_;
  }

  std::size_t cells(const std::vector<GoalEntry<Tag>>&) const { return top_ ? top_->cells : 0; }

 private:
  struct Node {
    Atom atom;
    std::shared_ptr<const Node> next;
    std::size_t cells;  // including everything below
  };
  std::shared_ptr<const Node> top_;
  std::size_t height_ = 0;
};

/// Proof tree with parent links. Subtrees that no goal atom hangs from
/// any more are released.
class TreeBackend {
 public:
  struct Node {
    Atom atom;
    std::shared_ptr<const Node> parent;
  };
  using Tag = std::shared_ptr<const Node>;
  static constexpr const char* kName = "trees";

  std::size_t height() const noexcept { return height_; }

  std::vector<Atom> contents(const Tag& tag) const {
    std::vector<Atom> out;
    for (const Node* n = tag.get(); n; n = n->parent.get()) out.push_back(n->atom);
    return out;
  }

  Tag push(const Atom& selected, const Tag& tag) {
    cursor_ = std::make_shared<const Node>(Node{selected, tag});
    ++height_;
    return cursor_;
  }
  Tag child_tag(const Tag& t) const { return t; }

  void pop() {
    assert(cursor_);
    cursor_ = cursor_->parent;
    --height_;
  }

  std::size_t cells(const std::vector<GoalEntry<Tag>>& goal) const {
    std::unordered_set<const Node*> seen;
    std::size_t total = 0;
    auto walk = [&](const Node* n) {
      for (; n && seen.insert(n).second; n = n->parent.get()) total += n->atom.size();
    };
    walk(cursor_.get());
    for (const auto& e : goal) walk(e.tag.get());
    return total;
  }

 private:
  Tag cursor_;
  std::size_t height_ = 0;
};

/// Every goal atom owns a copy of its complete ancestor list.
class RelationBackend {
 public:
  struct List {
    std::vector<Atom> atoms;  // nearest ancestor first
    std::size_t cells = 0;
  };
  using Tag = std::shared_ptr<const List>;
  static constexpr const char* kName = "relation";

  std::size_t height() const noexcept { return height_; }

  std::vector<Atom> contents(const Tag& tag) const { return tag ? tag->atoms : std::vector<Atom>{}; }

  Tag push(const Atom& selected, const Tag& tag) {
    auto l = std::make_shared<List>();
    l->atoms.reserve(1 + (tag ? tag->atoms.size() : 0));
    l->atoms.push_back(selected);
    l->cells = selected.size();
    if (tag) {
      l->atoms.insert(l->atoms.end(), tag->atoms.begin(), tag->atoms.end());
      l->cells += tag->cells;
    }
    ++height_;
    return l;
  }
  Tag child_tag(const Tag& t) const { return t ? std::make_shared<const List>(*t) : t; }

  void pop() {
    assert(height_ > 0);
    --height_;
  }

  std::size_t cells(const std::vector<GoalEntry<Tag>>& goal) const {
    std::size_t total = 0;
    for (const auto& e : goal)
      if (e.tag) total += e.tag->cells;
    return total;
  }

 private:
  std::size_t height_ = 0;
};

/// Runs a stack and a tree backend side by side, comparing the ancestor
/// sequences they report before every resolution step. Behaves as the
/// stack backend towards the engine.
class PairBackend {
 public:
  using Tag = std::pair<StackBackend::Tag, TreeBackend::Tag>;
  static constexpr const char* kName = "stacks";

  explicit PairBackend(LockstepLog* log = nullptr) : log_(log) {}

  std::size_t height() const noexcept { return stack_.height(); }
  std::vector<Atom> contents(const Tag& t) const { return stack_.contents(t.first); }

  Tag push(const Atom& selected, const Tag& t) {
    return {stack_.push(selected, t.first), tree_.push(selected, t.second)};
  }
  Tag child_tag(const Tag& t) const { return t; }

  void pop() {
    stack_.pop();
    tree_.pop();
  }

  std::size_t cells(const std::vector<GoalEntry<Tag>>&) const {
    return stack_.cells({});
  }

  /// Compares both ancestor sequences for `selected` and checks that tree
  /// admissibility implies stack admissibility.
  void compare(const Atom& selected, const Tag& t, const Wqo& w) const;

 private:
  StackBackend stack_;
  TreeBackend tree_;
  LockstepLog* log_;
};

// --------------------------------------------------------------------- state

/// Every atom pushed so far in one derivation, most recent first: the
/// stack as it would look if nothing were ever popped.
struct History {
  Atom atom;
  std::shared_ptr<const History> prev;
};

template <class B>
struct State {
  using Tag = typename B::Tag;

  std::vector<GoalEntry<Tag>> goal;
  B anc;
  Atom head;  // root atom instantiated by the answer so far
  std::shared_ptr<const History> history;

  static State initial(const Atom& a, B backend = B{}) {
    State s{{}, std::move(backend), a, nullptr};
    s.goal.push_back({a, Tag{}});
    return s;
  }

  std::size_t pop_marks() const {
    std::size_t n = 0;
    for (const auto& e : goal) n += is_pop(e.item);
    return n;
  }

  std::vector<GoalItem> items() const {
    std::vector<GoalItem> out;
    out.reserve(goal.size());
    for (const auto& e : goal) out.push_back(e.item);
    return out;
  }

  /// Goal atoms with pop marks dropped.
  std::vector<Atom> atoms() const {
    std::vector<Atom> out;
    for (const auto& e : goal)
      if (const Atom* a = std::get_if<Atom>(&e.item)) out.push_back(*a);
    return out;
  }

  const Atom& selected() const { return std::get<Atom>(goal.front().item); }
};

enum class Selection { Atom, Pop, Empty };

/// The leftmost rule: never looks past a pop mark.
inline Selection select_leftmost(const std::vector<GoalItem>& goal) {
  if (goal.empty()) return Selection::Empty;
  return is_pop(goal.front()) ? Selection::Pop : Selection::Atom;
}

template <class B>
Selection select_leftmost(const State<B>& s) {
  if (s.goal.empty()) return Selection::Empty;
  return is_pop(s.goal.front().item) ? Selection::Pop : Selection::Atom;
}

/// Ancestors the admissibility test of the selected atom runs against.
template <class B>
std::vector<Atom> covering_sequence(const State<B>& s, const Wqo& w) {
  if (!w.full_sequence()) return s.anc.contents(s.goal.front().tag);
  std::vector<Atom> out;
  for (const History* h = s.history.get(); h; h = h->prev.get()) out.push_back(h->atom);
  return out;
}

template <class B>
bool selected_admissible(const State<B>& s, const Wqo& w) {
  if constexpr (std::is_same_v<B, PairBackend>) {
    if (!w.full_sequence()) s.anc.compare(s.selected(), s.goal.front().tag, w);
  }
  return admissible(s.selected(), covering_sequence(s, w), w);
}

namespace detail {

template <class B>
void append_rest(State<B>& out, const State<B>& s, const Substitution& theta) {
  for (std::size_t i = 1; i < s.goal.size(); ++i) {
    const auto& e = s.goal[i];
    if (const Atom* a = std::get_if<Atom>(&e.item))
      out.goal.push_back({apply(theta, *a), e.tag});
    else
      out.goal.push_back(e);
  }
}

}  // namespace detail

/// Resolves the selected atom with a renamed-apart clause whose head is
/// known to unify under `theta`: derive for rules, derive-fact for facts.
/// No admissibility test.
template <class B>
State<B> resolve(const State<B>& s, const Clause& c, const Substitution& theta) {
  const auto& sel = s.goal.front();
  const Atom& a = std::get<Atom>(sel.item);
  State<B> out{{}, s.anc, apply(theta, s.head), s.history};
  if (!c.is_fact()) {
    out.history = std::make_shared<const History>(History{a, s.history});
    out.goal.reserve(c.body.size() + s.goal.size());
    auto base = out.anc.push(a, sel.tag);
    for (const Atom& b : c.body) out.goal.push_back({apply(theta, b), out.anc.child_tag(base)});
    out.goal.push_back({PopMark{}, typename B::Tag{}});
  } else {
    out.goal.reserve(s.goal.size());
  }
  detail::append_rest(out, s, theta);
  return out;
}

enum class DeriveOutcome { Ok, Inadmissible, NoUnifier };

template <class B>
struct Derived {
  DeriveOutcome outcome;
  std::optional<State<B>> state;
  Substitution mgu;
};

/// derive / derive-fact: admissibility first, then unification.
template <class B>
Derived<B> derive(const State<B>& s, const Clause& renamed, const Wqo& w) {
  if (!selected_admissible(s, w)) return {DeriveOutcome::Inadmissible, std::nullopt, {}};
  auto theta = mgu(s.selected(), renamed.head);
  if (!theta) return {DeriveOutcome::NoUnifier, std::nullopt, {}};
  return {DeriveOutcome::Ok, resolve(s, renamed, *theta), *theta};
}

template <class B>
State<B> pop_derive(const State<B>& s) {
  assert(select_leftmost(s) == Selection::Pop);
  State<B> out{{s.goal.begin() + 1, s.goal.end()}, s.anc, s.head, s.history};
  out.anc.pop();
  return out;
}

/// external-derive: one child per answer of the executor, ancestors
/// untouched. Returns nullopt when the call is not evaluable.
template <class B>
std::optional<std::vector<std::pair<State<B>, Substitution>>> external_derive(
    const State<B>& s, const BuiltinDef& b) {
  const Atom& call = s.selected();
  if (!check_sc(b, call)) return std::nullopt;
  SubstSeq seq = exec(b, call);
  std::vector<std::pair<State<B>, Substitution>> out;
  out.reserve(seq.answers.size());
  for (Substitution& theta : seq.answers) {
    State<B> child{{}, s.anc, apply(theta, s.head), s.history};
    child.goal.reserve(s.goal.size());
    detail::append_rest(child, s, theta);
    out.emplace_back(std::move(child), std::move(theta));
  }
  return out;
}

}  // namespace peval
