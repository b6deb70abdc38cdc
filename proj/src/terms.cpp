#include "peval/terms.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace peval {

namespace {

const std::string kNil = "[]";
const std::string kCons = ".";

}  // namespace

Term Term::var(VarId id, std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::Var, false, 1, 1, id, std::move(name), {}}));
}

Term Term::integer(std::int64_t value) {
  return Term(std::make_shared<const Node>(Node{Kind::Int, true, 1, 1, value, {}, {}}));
}

Term Term::constant(std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::Struct, true, 1, 1, 0, std::move(name), {}}));
}

Term Term::compound(std::string functor, std::vector<Term> args) {
  bool ground = true;
  std::size_t size = 1;
  std::size_t depth = 0;
  for (const Term& a : args) {
    ground = ground && a.ground();
    size += a.size();
    depth = std::max(depth, a.depth());
  }
  return Term(std::make_shared<const Node>(
      Node{Kind::Struct, ground, size, depth + 1, 0, std::move(functor), std::move(args)}));
}

Term Term::nil() {
  static const Term t = constant(kNil);
  return t;
}

Term Term::cons(Term head, Term tail) {
  return compound(kCons, {std::move(head), std::move(tail)});
}

Term Term::list(std::span<const Term> items, std::optional<Term> tail) {
  Term result = tail ? *tail : nil();
  for (auto it = items.rbegin(); it != items.rend(); ++it) result = cons(*it, result);
  return result;
}

Term::Kind Term::kind() const noexcept { return node_->kind; }
bool Term::ground() const noexcept { return node_->ground; }
bool Term::is_nil() const noexcept { return is_struct() && arity() == 0 && name() == kNil; }
bool Term::is_cons() const noexcept { return is_struct() && arity() == 2 && name() == kCons; }

VarId Term::var_id() const {
  if (!is_var()) throw std::logic_error("var_id on non-variable");
  return node_->value;
}

std::int64_t Term::int_value() const {
  if (!is_int()) throw std::logic_error("int_value on non-integer");
  return node_->value;
}

const std::string& Term::name() const noexcept { return node_->name; }
std::size_t Term::arity() const noexcept { return node_->args.size(); }
std::span<const Term> Term::args() const noexcept { return node_->args; }
const Term& Term::arg(std::size_t i) const { return node_->args.at(i); }
std::size_t Term::size() const noexcept { return node_->size; }
std::size_t Term::depth() const noexcept { return node_->depth; }

bool operator==(const Term& a, const Term& b) {
  if (a.same_node(b)) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var:
      return a.var_id() == b.var_id();
    case Term::Kind::Int:
      return a.int_value() == b.int_value();
    case Term::Kind::Struct:
      if (a.arity() != b.arity() || a.size() != b.size() || a.name() != b.name()) return false;
      for (std::size_t i = 0; i < a.arity(); ++i)
        if (!(a.arg(i) == b.arg(i))) return false;
      return true;
  }
  return false;
}

std::strong_ordering compare(const Term& a, const Term& b) {
  if (a.same_node(b)) return std::strong_ordering::equal;
  if (a.kind() != b.kind()) return a.kind() <=> b.kind();
  switch (a.kind()) {
    case Term::Kind::Var:
      return a.var_id() <=> b.var_id();
    case Term::Kind::Int:
      return a.int_value() <=> b.int_value();
    case Term::Kind::Struct: {
      if (auto c = a.arity() <=> b.arity(); c != 0) return c;
      if (int c = a.name().compare(b.name()); c != 0) return c <=> 0;
      for (std::size_t i = 0; i < a.arity(); ++i)
        if (auto c = compare(a.arg(i), b.arg(i)); c != 0) return c;
      return std::strong_ordering::equal;
    }
  }
  return std::strong_ordering::equal;
}

void collect_vars(const Term& t, std::vector<VarId>& out) {
  if (t.ground()) return;
  if (t.is_var()) {
    if (std::find(out.begin(), out.end(), t.var_id()) == out.end()) out.push_back(t.var_id());
    return;
  }
  for (const Term& a : t.args()) collect_vars(a, out);
}

std::vector<VarId> vars_of(const Term& t) {
  std::vector<VarId> out;
  collect_vars(t, out);
  return out;
}

bool occurs(VarId v, const Term& t) {
  if (t.ground()) return false;
  if (t.is_var()) return t.var_id() == v;
  return std::any_of(t.args().begin(), t.args().end(),
                     [v](const Term& a) { return occurs(v, a); });
}

// ---------------------------------------------------------------------------

Atom::Atom(std::string predicate, std::vector<Term> args)
    : term_(args.empty() ? Term::constant(std::move(predicate))
                         : Term::compound(std::move(predicate), std::move(args))) {}

Atom::Atom(Term t) : term_(std::move(t)) {
  if (!term_.is_struct()) throw std::invalid_argument("atom must be a callable term");
}

// ---------------------------------------------------------------------------

const Term* Substitution::find(VarId v) const {
  auto it = map_.find(v);
  return it == map_.end() ? nullptr : &it->second;
}

void Substitution::bind(VarId v, Term t) {
  if (t.is_var() && t.var_id() == v) {
    map_.erase(v);
    return;
  }
  map_.insert_or_assign(v, std::move(t));
}

Substitution Substitution::restricted_to(std::span<const VarId> vars) const {
  Substitution out;
  for (VarId v : vars)
    if (const Term* t = find(v)) out.map_.emplace(v, *t);
  return out;
}

Term apply(const Substitution& s, const Term& t) {
  if (s.empty() || t.ground()) return t;
  if (t.is_var()) {
    const Term* b = s.find(t.var_id());
    return b ? *b : t;
  }
  std::vector<Term> args;
  bool changed = false;
  args.reserve(t.arity());
  for (const Term& a : t.args()) {
    args.push_back(apply(s, a));
    changed = changed || !args.back().same_node(a);
  }
  return changed ? Term::compound(t.name(), std::move(args)) : t;
}

Atom apply(const Substitution& s, const Atom& a) { return Atom(apply(s, a.term())); }

std::vector<Atom> apply(const Substitution& s, std::span<const Atom> goal) {
  std::vector<Atom> out;
  out.reserve(goal.size());
  for (const Atom& a : goal) out.push_back(apply(s, a));
  return out;
}

Substitution compose(const Substitution& first, const Substitution& then) {
  Substitution out;
  for (const auto& [v, t] : first.bindings()) out.bind(v, apply(then, t));
  for (const auto& [v, t] : then.bindings())
    if (!first.find(v)) out.bind(v, t);
  return out;
}

bool idempotent(const Substitution& s) {
  for (const auto& [v, t] : s.bindings()) {
    for (VarId w : vars_of(t))
      if (s.find(w)) return false;
  }
  return true;
}

namespace {

class Unifier {
 public:
  bool unify(const Term& a, const Term& b) {
    std::vector<std::pair<Term, Term>> work{{a, b}};
    while (!work.empty()) {
      auto [x, y] = std::move(work.back());
      work.pop_back();
      x = deref(x);
      y = deref(y);
      if (x.same_node(y)) continue;
      if (x.is_var() && y.is_var() && x.var_id() == y.var_id()) continue;
      if (x.is_var()) {
        if (occurs_bound(x.var_id(), y)) return false;
        bindings_.insert_or_assign(x.var_id(), y);
        continue;
      }
      if (y.is_var()) {
        if (occurs_bound(y.var_id(), x)) return false;
        bindings_.insert_or_assign(y.var_id(), x);
        continue;
      }
      if (x.kind() != y.kind()) return false;
      if (x.is_int()) {
        if (x.int_value() != y.int_value()) return false;
        continue;
      }
      if (x.arity() != y.arity() || x.name() != y.name()) return false;
      for (std::size_t i = x.arity(); i-- > 0;) work.emplace_back(x.arg(i), y.arg(i));
    }
    return true;
  }

  Substitution solved() {
    Substitution out;
    for (const auto& [v, t] : bindings_) out.bind(v, resolve(t));
    return out;
  }

 private:
  Term deref(Term t) const {
    while (t.is_var()) {
      auto it = bindings_.find(t.var_id());
      if (it == bindings_.end()) break;
      t = it->second;
    }
    return t;
  }

  bool occurs_bound(VarId v, const Term& t) const {
    if (t.ground()) return false;
    if (t.is_var()) {
      Term d = deref(t);
      if (d.is_var()) return d.var_id() == v;
      return occurs_bound(v, d);
    }
    for (const Term& a : t.args())
      if (occurs_bound(v, a)) return true;
    return false;
  }

  Term resolve(const Term& t) {
    if (t.ground()) return t;
    if (t.is_var()) {
      auto it = bindings_.find(t.var_id());
      if (it == bindings_.end()) return t;
      if (auto m = memo_.find(t.var_id()); m != memo_.end()) return m->second;
      Term r = resolve(it->second);
      memo_.emplace(t.var_id(), r);
      return r;
    }
    std::vector<Term> args;
    bool changed = false;
    args.reserve(t.arity());
    for (const Term& a : t.args()) {
      args.push_back(resolve(a));
      changed = changed || !args.back().same_node(a);
    }
    return changed ? Term::compound(t.name(), std::move(args)) : t;
  }

  std::map<VarId, Term> bindings_;
  std::map<VarId, Term> memo_;
};

bool match_into(const Term& general, const Term& specific, std::map<VarId, Term>& m) {
  if (general.is_var()) {
    auto [it, inserted] = m.emplace(general.var_id(), specific);
    return inserted || it->second == specific;
  }
  if (general.kind() != specific.kind()) return false;
  if (general.is_int()) return general.int_value() == specific.int_value();
  if (general.arity() != specific.arity() || general.name() != specific.name()) return false;
  if (general.ground()) return general == specific;
  for (std::size_t i = 0; i < general.arity(); ++i)
    if (!match_into(general.arg(i), specific.arg(i), m)) return false;
  return true;
}

bool variant_into(const Term& a, const Term& b, std::map<VarId, VarId>& fwd,
                  std::map<VarId, VarId>& back) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var: {
      auto [f, fi] = fwd.emplace(a.var_id(), b.var_id());
      auto [r, ri] = back.emplace(b.var_id(), a.var_id());
      return f->second == b.var_id() && r->second == a.var_id();
    }
    case Term::Kind::Int:
      return a.int_value() == b.int_value();
    case Term::Kind::Struct:
      if (a.arity() != b.arity() || a.name() != b.name() || a.size() != b.size()) return false;
      for (std::size_t i = 0; i < a.arity(); ++i)
        if (!variant_into(a.arg(i), b.arg(i), fwd, back)) return false;
      return true;
  }
  return false;
}

}  // namespace

std::optional<Substitution> mgu(const Term& a, const Term& b) {
  Unifier u;
  if (!u.unify(a, b)) return std::nullopt;
  return u.solved();
}

std::optional<Substitution> mgu(const Atom& a, const Atom& b) {
  if (!comparable(a, b)) return std::nullopt;
  return mgu(a.term(), b.term());
}

std::optional<Substitution> match(const Term& general, const Term& specific) {
  std::map<VarId, Term> m;
  if (!match_into(general, specific, m)) return std::nullopt;
  Substitution s;
  for (auto& [v, t] : m) s.bind(v, std::move(t));
  return s;
}

bool instance_of(const Atom& specific, const Atom& general) {
  return comparable(specific, general) && match(general.term(), specific.term()).has_value();
}

bool variant(const Term& a, const Term& b) {
  std::map<VarId, VarId> fwd, back;
  return variant_into(a, b, fwd, back);
}

bool variant(const Atom& a, const Atom& b) { return variant(a.term(), b.term()); }

// ---------------------------------------------------------------------------

Term VarGen::fresh(std::string name) { return Term::var(next_++, std::move(name)); }

Term rename(const Term& t, VarGen& gen, std::map<VarId, Term>& mapping) {
  if (t.ground()) return t;
  if (t.is_var()) {
    auto it = mapping.find(t.var_id());
    if (it == mapping.end()) it = mapping.emplace(t.var_id(), gen.fresh(t.name())).first;
    return it->second;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(rename(a, gen, mapping));
  return Term::compound(t.name(), std::move(args));
}

namespace {

struct PairLess {
  bool operator()(const std::pair<Term, Term>& x, const std::pair<Term, Term>& y) const {
    if (auto c = compare(x.first, y.first); c != 0) return c < 0;
    return compare(x.second, y.second) < 0;
  }
};

class AntiUnifier {
 public:
  explicit AntiUnifier(VarGen& gen) : gen_(gen) {}

  Term generalize(const Term& a, const Term& b) {
    if (a == b) return a;
    if (a.is_struct() && b.is_struct() && a.arity() == b.arity() && a.arity() > 0 &&
        a.name() == b.name()) {
      std::vector<Term> args;
      args.reserve(a.arity());
      for (std::size_t i = 0; i < a.arity(); ++i) args.push_back(generalize(a.arg(i), b.arg(i)));
      return Term::compound(a.name(), std::move(args));
    }
    auto key = std::make_pair(a, b);
    auto it = seen_.find(key);
    if (it != seen_.end()) return it->second;
    Term v = gen_.fresh();
    seen_.emplace(std::move(key), v);
    first_.bind(v.var_id(), a);
    second_.bind(v.var_id(), b);
    return v;
  }

  Substitution first_;
  Substitution second_;

 private:
  VarGen& gen_;
  std::map<std::pair<Term, Term>, Term, PairLess> seen_;
};

}  // namespace

Generalization msg(const Atom& a, const Atom& b, VarGen& gen) {
  if (!comparable(a, b))
    throw std::invalid_argument("msg: predicate mismatch " + a.pred().str() + " vs " +
                                b.pred().str());
  AntiUnifier au(gen);
  Term g = au.generalize(a.term(), b.term());
  return {Atom(std::move(g)), std::move(au.first_), std::move(au.second_)};
}

}  // namespace peval
