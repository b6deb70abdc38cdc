#include "peval/globalctl.hpp"

#include <chrono>
#include <deque>
#include <set>
#include <stdexcept>

namespace peval {

std::optional<std::size_t> SpecSet::covering(const Atom& a) const {
  for (std::size_t i = 0; i < versions_.size(); ++i)
    if (variant(a, versions_[i].key)) return i;
  for (std::size_t i = 0; i < versions_.size(); ++i)
    if (comparable(a, versions_[i].key) && instance_of(a, versions_[i].key)) return i;
  return std::nullopt;
}

std::size_t SpecSet::add(Atom key, std::string name) {
  SpecVersion v{std::move(key), std::move(name), {}, {}, false, {}};
  versions_.push_back(std::move(v));
  return versions_.size() - 1;
}

Abstraction abstract(const Atom& a, const SpecSet& set, VarGen& gen) {
  if (auto i = set.covering(a)) return {Abstraction::Kind::Reuse, *i, a};
  const auto& vs = set.versions();
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (embeds_atom(vs[i].key, a))
      return {Abstraction::Kind::Generalize, i, msg(a, vs[i].key, gen).general};
  return {Abstraction::Kind::Add, 0, a};
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

class Driver {
 public:
  Driver(const Program& p, const SpecializeConfig& cfg)
      : p_(p), cfg_(cfg), reg_(Registry::for_program(p)), gen_(p.max_var_id() + 1) {
    for (const PredKey& k : p.predicates()) taken_.insert(k.name);
  }

  ResidualProgram run() {
    auto t0 = Clock::now();
    if (p_.entries().empty()) throw std::invalid_argument("program has no entry directive");

    std::vector<int> entry_versions;
    for (const Atom& e : p_.entries())
      entry_versions.push_back(reg_.contains(e.pred()) ? -1 : static_cast<int>(process(e)));

    for (std::size_t next = 0; next < set_.versions().size(); ++next) {
      Atom key = set_.versions()[next].key;
      auto tl = Clock::now();
      UnfoldResult u = unfold(key, p_, reg_, cfg_.unfold, gen_);
      out_.local_ms += ms_since(tl);
      if (u.stats.budget_leaves > 0 && !out_.budget_atom) out_.budget_atom = key;
      out_.stats += u.stats;

      std::vector<std::vector<int>> calls;
      for (const Resultant& r : u.resultants) {
        std::vector<int> row;
        for (const Atom& b : r.body)
          row.push_back(reg_.contains(b.pred()) ? -1 : static_cast<int>(process(b)));
        calls.push_back(std::move(row));
      }
      SpecVersion& v = set_.versions()[next];
      v.resultants = std::move(u.resultants);
      v.calls = std::move(calls);
      v.stats = u.stats;
      v.done = true;
    }

    emit(entry_versions);
    out_.versions = set_.versions();
    out_.global_ms = std::max(0.0, ms_since(t0) - out_.local_ms);
    return std::move(out_);
  }

 private:
  std::string fresh_name(const std::string& pred) {
    while (true) {
      std::string n = pred + "__" + std::to_string(++counter_);
      if (!taken_.contains(n)) {
        taken_.insert(n);
        return n;
      }
    }
  }

  std::size_t process(const Atom& a) {
    Atom cand = a;
    while (true) {
      Abstraction r = abstract(cand, set_, gen_);
      switch (r.kind) {
        case Abstraction::Kind::Reuse:
          return r.existing;
        case Abstraction::Kind::Generalize:
          if (!variant(r.atom, cand)) {
            cand = r.atom;
            continue;
          }
          [[fallthrough]];
        case Abstraction::Kind::Add: {
          if (set_.versions().size() >= cfg_.max_versions)
            throw std::runtime_error("specialization exceeded " +
                                     std::to_string(cfg_.max_versions) + " versions");
          std::map<VarId, Term> mapping;
          Atom key(rename(cand.term(), gen_, mapping));
          return set_.add(std::move(key), fresh_name(cand.name()));
        }
      }
    }
  }

  static Atom renamed(const Atom& a, const std::string& name) {
    return Atom(name, std::vector<Term>(a.args().begin(), a.args().end()));
  }

  void emit(const std::vector<int>& entry_versions) {
    Program& out = out_.program;
    for (const Atom& e : p_.entries()) out.add_entry(e);
    for (const auto& [k, a] : p_.evals()) out.add_eval(a);
    const auto& vs = set_.versions();
    for (std::size_t i = 0; i < p_.entries().size(); ++i) {
      if (entry_versions[i] < 0) continue;
      const Atom& e = p_.entries()[i];
      out.add_clause({e, {renamed(e, vs[entry_versions[i]].name)}, 0});
    }
    for (const SpecVersion& v : vs) {
      for (std::size_t r = 0; r < v.resultants.size(); ++r) {
        const Resultant& res = v.resultants[r];
        Clause c{renamed(res.head, v.name), {}, 0};
        for (std::size_t j = 0; j < res.body.size(); ++j) {
          int callee = v.calls[r][j];
          c.body.push_back(callee < 0 ? res.body[j] : renamed(res.body[j], vs[callee].name));
        }
        out.add_clause(std::move(c));
      }
    }
  }

  const Program& p_;
  const SpecializeConfig& cfg_;
  Registry reg_;
  VarGen gen_;
  SpecSet set_;
  std::set<std::string> taken_;
  std::size_t counter_ = 0;
  ResidualProgram out_;
};

}  // namespace

ResidualProgram specialize(const Program& p, const SpecializeConfig& cfg) {
  return Driver(p, cfg).run();
}

std::vector<Clause> entry_reachable(const ResidualProgram& r) {
  std::map<std::string, const SpecVersion*> by_name;
  for (const SpecVersion& v : r.versions) by_name.emplace(v.name, &v);

  std::set<std::string> seen;
  std::deque<std::string> queue;
  auto visit = [&](const std::string& n) {
    if (by_name.contains(n) && seen.insert(n).second) queue.push_back(n);
  };
  for (const Clause& c : r.program.clauses())
    if (!by_name.contains(c.head.name()))
      for (const Atom& b : c.body) visit(b.name());
  while (!queue.empty()) {
    std::string n = queue.front();
    queue.pop_front();
    for (const Clause& c : r.program.clauses())
      if (c.head.name() == n)
        for (const Atom& b : c.body) visit(b.name());
  }

  auto original = [&](const Atom& a) {
    auto it = by_name.find(a.name());
    if (it == by_name.end()) return a;
    return Atom(it->second->key.name(), std::vector<Term>(a.args().begin(), a.args().end()));
  };
  std::vector<Clause> out;
  for (const Clause& c : r.program.clauses()) {
    if (!seen.contains(c.head.name())) continue;
    Clause n{original(c.head), {}, c.line};
    for (const Atom& b : c.body) n.body.push_back(original(b));
    out.push_back(std::move(n));
  }
  return out;
}

bool closed(const ResidualProgram& r, const Registry& reg) {
  std::map<std::string, const SpecVersion*> by_name;
  for (const SpecVersion& v : r.versions) by_name.emplace(v.name, &v);
  for (const Clause& c : r.program.clauses()) {
    if (!by_name.contains(c.head.name())) continue;
    for (const Atom& b : c.body) {
      if (reg.contains(b.pred())) continue;
      auto it = by_name.find(b.name());
      if (it == by_name.end()) return false;
      const Atom& key = it->second->key;
      Atom call(key.name(), std::vector<Term>(b.args().begin(), b.args().end()));
      if (!instance_of(call, key)) return false;
    }
  }
  return true;
}

}  // namespace peval
