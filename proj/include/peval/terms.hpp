#pragma once

// First-order terms, atoms and substitutions.
//
// Terms are immutable and reference counted; sharing a Term between
// threads or between goals is always safe. Variables are identified by a
// numeric id that is unique within one engine run; their display name is
// cosmetic.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace peval {

using VarId = std::int64_t;

class Term {
 public:
  enum class Kind : std::uint8_t { Var, Int, Struct };

  static Term var(VarId id, std::string name = {});
  static Term integer(std::int64_t value);
  static Term constant(std::string name);
  static Term compound(std::string functor, std::vector<Term> args);
  static Term nil();
  static Term cons(Term head, Term tail);
  /// Builds `[items...|tail]`, or a proper list when no tail is given.
  static Term list(std::span<const Term> items, std::optional<Term> tail = std::nullopt);

  Kind kind() const noexcept;
  bool is_var() const noexcept { return kind() == Kind::Var; }
  bool is_int() const noexcept { return kind() == Kind::Int; }
  bool is_struct() const noexcept { return kind() == Kind::Struct; }
  bool is_atomic() const noexcept { return is_int() || (is_struct() && arity() == 0); }
  bool is_nil() const noexcept;
  bool is_cons() const noexcept;
  bool ground() const noexcept;

  VarId var_id() const;
  std::int64_t int_value() const;
  // Functor name for structures, display name for variables.
  const std::string& name() const noexcept;
  std::size_t arity() const noexcept;
  std::span<const Term> args() const noexcept;
  const Term& arg(std::size_t i) const;

  // Number of term nodes.
  std::size_t size() const noexcept;
  // Leaves (variables, constants, integers) have depth 1.
  std::size_t depth() const noexcept;

  bool same_node(const Term& other) const noexcept { return node_ == other.node_; }
  // Address of the shared node; stable for the lifetime of any copy.
  const void* node_id() const noexcept { return node_.get(); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  Kind kind;
  bool ground;
  std::size_t size;
  std::size_t depth;
  std::int64_t value;  // variable id or integer value
  std::string name;
  std::vector<Term> args;
};

/// Structural equality; variables compare by id.
bool operator==(const Term& a, const Term& b);

/// Standard order of terms: Var < Int < Struct; structures by arity, name, args.
std::strong_ordering compare(const Term& a, const Term& b);

struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return compare(a, b) < 0; }
};

/// Distinct variable ids of `t` in first-occurrence order, appended to `out`.
void collect_vars(const Term& t, std::vector<VarId>& out);
std::vector<VarId> vars_of(const Term& t);
bool occurs(VarId v, const Term& t);

// ---------------------------------------------------------------------------

struct PredKey {
  std::string name;
  std::size_t arity = 0;

  auto operator<=>(const PredKey&) const = default;
  std::string str() const { return name + "/" + std::to_string(arity); }
};

class Atom {
 public:
  Atom(std::string predicate, std::vector<Term> args);
  /// Throws std::invalid_argument unless `t` is a structure or constant.
  explicit Atom(Term t);

  const Term& term() const noexcept { return term_; }
  PredKey pred() const { return {term_.name(), term_.arity()}; }
  const std::string& name() const noexcept { return term_.name(); }
  std::size_t arity() const noexcept { return term_.arity(); }
  std::span<const Term> args() const noexcept { return term_.args(); }
  const Term& arg(std::size_t i) const { return term_.arg(i); }
  std::size_t size() const noexcept { return term_.size(); }
  bool ground() const noexcept { return term_.ground(); }

 private:
  Term term_;
};

inline bool operator==(const Atom& a, const Atom& b) { return a.term() == b.term(); }

/// True when both atoms share predicate symbol and arity.
inline bool comparable(const Atom& a, const Atom& b) {
  return a.arity() == b.arity() && a.name() == b.name();
}

// ---------------------------------------------------------------------------

/// Finite map from variables to terms. Identity bindings are never stored.
class Substitution {
 public:
  using Map = std::map<VarId, Term>;

  Substitution() = default;

  bool empty() const noexcept { return map_.empty(); }
  std::size_t size() const noexcept { return map_.size(); }
  const Term* find(VarId v) const;
  void bind(VarId v, Term t);
  const Map& bindings() const noexcept { return map_; }

  /// Keeps only bindings for the listed variables.
  Substitution restricted_to(std::span<const VarId> vars) const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  Map map_;
};

/// Simultaneous replacement of every bound variable.
Term apply(const Substitution& s, const Term& t);
Atom apply(const Substitution& s, const Atom& a);
std::vector<Atom> apply(const Substitution& s, std::span<const Atom> goal);

/// `apply(compose(first, then), t) == apply(then, apply(first, t))` for all t.
Substitution compose(const Substitution& first, const Substitution& then);

/// True when applying `s` twice equals applying it once.
bool idempotent(const Substitution& s);

/// Most general unifier with occurs check; the result is idempotent.
std::optional<Substitution> mgu(const Term& a, const Term& b);
std::optional<Substitution> mgu(const Atom& a, const Atom& b);

/// One-way matching: a substitution σ over the variables of `general` with
/// σ(general) == specific, treating variables of `specific` as constants.
std::optional<Substitution> match(const Term& general, const Term& specific);
bool instance_of(const Atom& specific, const Atom& general);
bool variant(const Term& a, const Term& b);
bool variant(const Atom& a, const Atom& b);

// ---------------------------------------------------------------------------

/// Monotone source of fresh variable ids, owned by one run.
class VarGen {
 public:
  explicit VarGen(VarId start = 1) : next_(start) {}
  Term fresh(std::string name = {});
  VarId next_id() { return next_++; }
  VarId peek() const noexcept { return next_; }
  void reserve_above(VarId v) {
    if (v >= next_) next_ = v + 1;
  }

 private:
  VarId next_;
};

/// Replaces every variable of `t` by a fresh one; `mapping` is shared so
/// several terms can be renamed consistently.
Term rename(const Term& t, VarGen& gen, std::map<VarId, Term>& mapping);

struct Generalization {
  Atom general;
  Substitution to_first;
  Substitution to_second;
};

/// Most specific generalization (anti-unification). Throws
/// std::invalid_argument when the atoms are not comparable.
Generalization msg(const Atom& a, const Atom& b, VarGen& gen);

}  // namespace peval
