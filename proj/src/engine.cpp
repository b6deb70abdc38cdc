#include "peval/engine.hpp"

#include <algorithm>

#include "peval/parser.hpp"

namespace peval {

std::string_view backend_name(BackendKind b) {
  switch (b) {
    case BackendKind::Stacks:
      return "stacks";
    case BackendKind::Trees:
      return "trees";
    case BackendKind::Relation:
      return "relation";
  }
  return "?";
}

std::optional<BackendKind> parse_backend(std::string_view name) {
  if (name == "stacks") return BackendKind::Stacks;
  if (name == "trees") return BackendKind::Trees;
  if (name == "relation") return BackendKind::Relation;
  return std::nullopt;
}

std::string_view rule_name(RuleKind r) {
  switch (r) {
    case RuleKind::Derive:
      return "derive";
    case RuleKind::DeriveFact:
      return "derive-fact";
    case RuleKind::PopDerive:
      return "pop-derive";
    case RuleKind::ExternalDerive:
      return "external-derive";
  }
  return "?";
}

std::string_view leaf_name(LeafKind k) {
  switch (k) {
    case LeafKind::Success:
      return "success";
    case LeafKind::Failure:
      return "failure";
    case LeafKind::Residualized:
      return "residualized";
  }
  return "?";
}

std::string_view reason_name(ResidualReason r) {
  switch (r) {
    case ResidualReason::None:
      return "none";
    case ResidualReason::Inadmissible:
      return "inadmissible";
    case ResidualReason::ExternalNotEvaluable:
      return "external-not-evaluable";
    case ResidualReason::NondeterministicStop:
      return "nondeterministic-stop";
    case ResidualReason::Budget:
      return "budget";
  }
  return "?";
}

UnfoldStats& UnfoldStats::operator+=(const UnfoldStats& o) {
  steps += o.steps;
  derive += o.derive;
  derive_fact += o.derive_fact;
  pop += o.pop;
  external += o.external;
  successes += o.successes;
  failures += o.failures;
  residualized += o.residualized;
  budget_leaves += o.budget_leaves;
  peak_cells = std::max(peak_cells, o.peak_cells);
  return *this;
}

void PairBackend::compare(const Atom& selected, const Tag& t, const Wqo& w) const {
  if (!log_) return;
  std::vector<Atom> from_stack = stack_.contents(t.first);
  std::vector<Atom> from_tree = tree_.contents(t.second);
  ++log_->checks;
  if (from_stack != from_tree) {
    if (log_->mismatches++ == 0) {
      std::string msg = "selected " + render_atom(selected) + ": stack [";
      for (const Atom& a : from_stack) msg += render_atom(a) + " ";
      msg += "] tree [";
      for (const Atom& a : from_tree) msg += render_atom(a) + " ";
      log_->first_mismatch = msg + "]";
    }
  }
  if (admissible(selected, from_tree, w) && !admissible(selected, from_stack, w))
    ++log_->accuracy_violations;
}

namespace {

template <class B>
class Unfolder {
 public:
  Unfolder(const Program& p, const Registry& reg, const UnfoldConfig& cfg, VarGen& gen)
      : p_(p), reg_(reg), cfg_(cfg), w_(*cfg.wqo), gen_(gen) {}

  UnfoldResult run(const Atom& a, B backend) {
    if (cfg_.record_tree) res_.tree.emplace();
    State<B> root = State<B>::initial(a, std::move(backend));
    int node = add_node(-1, RuleKind::Derive, -1, nullptr, root);
    work_.push_back({std::move(root), node, 0});
    while (!work_.empty()) {
      Pending pd = std::move(work_.back());
      work_.pop_back();
      expand(pd);
    }
    return std::move(res_);
  }

 private:
  struct Pending {
    State<B> s;
    int node;
    std::size_t depth;
  };

  int add_node(int parent, RuleKind r, int clause, const Substitution* m, const State<B>& s) {
    if (!res_.tree) return -1;
    UnfoldNode n;
    n.parent = parent;
    n.rule = r;
    n.clause = clause;
    if (m) n.mgu = *m;
    n.goal = s.items();
    res_.tree->nodes.push_back(std::move(n));
    return static_cast<int>(res_.tree->nodes.size() - 1);
  }

  void leaf(const Pending& pd, LeafKind k, ResidualReason r = ResidualReason::None) {
    if (res_.tree && pd.node >= 0) {
      res_.tree->nodes[pd.node].leaf = k;
      res_.tree->nodes[pd.node].reason = r;
    }
    UnfoldStats& st = res_.stats;
    switch (k) {
      case LeafKind::Success:
        ++st.successes;
        res_.resultants.push_back({pd.s.head, {}, k, r});
        break;
      case LeafKind::Failure:
        ++st.failures;
        break;
      case LeafKind::Residualized:
        ++st.residualized;
        if (r == ResidualReason::Budget) ++st.budget_leaves;
        res_.resultants.push_back({pd.s.head, pd.s.atoms(), k, r});
        break;
    }
  }

  void push_children(std::vector<Pending>& children) {
    for (auto it = children.rbegin(); it != children.rend(); ++it) work_.push_back(std::move(*it));
  }

  void expand(Pending& pd) {
    UnfoldStats& st = res_.stats;
    const State<B>& s = pd.s;
    st.peak_cells = std::max<std::uint64_t>(st.peak_cells, s.anc.cells(s.goal));

    Selection sel = select_leftmost(s);
    if (sel == Selection::Empty) return leaf(pd, LeafKind::Success);
    if (st.steps >= cfg_.budget) return leaf(pd, LeafKind::Residualized, ResidualReason::Budget);

    if (sel == Selection::Pop) {
      ++st.steps;
      ++st.pop;
      State<B> child = pop_derive(s);
      int node = add_node(pd.node, RuleKind::PopDerive, -1, nullptr, child);
      work_.push_back({std::move(child), node, pd.depth + 1});
      return;
    }

    const Atom& atom = s.selected();
    if (const BuiltinDef* b = reg_.find(atom.pred())) {
      auto kids = external_derive(s, *b);
      if (!kids) return leaf(pd, LeafKind::Residualized, ResidualReason::ExternalNotEvaluable);
      if (kids->empty()) return leaf(pd, LeafKind::Failure);
      std::vector<Pending> children;
      children.reserve(kids->size());
      for (auto& [cs, theta] : *kids) {
        ++st.steps;
        ++st.external;
        int node = add_node(pd.node, RuleKind::ExternalDerive, -1, &theta, cs);
        children.push_back({std::move(cs), node, pd.depth + 1});
      }
      return push_children(children);
    }

    if (!selected_admissible(s, w_))
      return leaf(pd, LeafKind::Residualized, ResidualReason::Inadmissible);

    struct Match {
      std::size_t index;
      Clause clause;
      Substitution theta;
    };
    std::vector<Match> matches;
    for (std::size_t idx : p_.clauses_for(atom.pred())) {
      Clause c = rename_apart(p_.clauses()[idx], gen_);
      if (auto theta = mgu(atom, c.head)) matches.push_back({idx, std::move(c), std::move(*theta)});
    }
    if (matches.empty()) return leaf(pd, LeafKind::Failure);
    if (cfg_.determinacy_stop && pd.depth > 0 && matches.size() >= 2)
      return leaf(pd, LeafKind::Residualized, ResidualReason::NondeterministicStop);

    std::vector<Pending> children;
    children.reserve(matches.size());
    for (const Match& m : matches) {
      ++st.steps;
      RuleKind r = m.clause.is_fact() ? RuleKind::DeriveFact : RuleKind::Derive;
      ++(m.clause.is_fact() ? st.derive_fact : st.derive);
      State<B> child = resolve(s, m.clause, m.theta);
      int node = add_node(pd.node, r, static_cast<int>(m.index), &m.theta, child);
      children.push_back({std::move(child), node, pd.depth + 1});
    }
    push_children(children);
  }

  const Program& p_;
  const Registry& reg_;
  const UnfoldConfig& cfg_;
  const Wqo& w_;
  VarGen& gen_;
  UnfoldResult res_;
  std::vector<Pending> work_;
};

}  // namespace

UnfoldResult unfold(const Atom& a, const Program& p, const Registry& reg, const UnfoldConfig& cfg,
                    VarGen& gen) {
  gen.reserve_above(p.max_var_id());
  for (VarId v : vars_of(a.term())) gen.reserve_above(v);
  if (cfg.lockstep)
    return Unfolder<PairBackend>(p, reg, cfg, gen).run(a, PairBackend(cfg.lockstep));
  switch (cfg.backend) {
    case BackendKind::Stacks:
      return Unfolder<StackBackend>(p, reg, cfg, gen).run(a, StackBackend{});
    case BackendKind::Trees:
      return Unfolder<TreeBackend>(p, reg, cfg, gen).run(a, TreeBackend{});
    case BackendKind::Relation:
      return Unfolder<RelationBackend>(p, reg, cfg, gen).run(a, RelationBackend{});
  }
  return {};
}

}  // namespace peval
