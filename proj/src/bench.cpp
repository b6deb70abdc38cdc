#include "peval/bench.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "peval/parser.hpp"

namespace peval {

namespace {

const char* kQsort = R"(qsort([],R,R).
qsort([X|L],R,R2) :-
   partition(L,X,L1,L2),
   qsort(L2,R1,R2),
   qsort(L1,R,[X|R1]).

partition([],_,[],[]).
partition([E|R],C,[E|Left1],Right) :-
   E =< C,
   partition(R,C,Left1,Right).
partition([E|R],C,Left,[E|Right1]) :-
   E > C,
   partition(R,C,Left,Right1).
)";

const char* kNrev = R"(nrev([],[]).
nrev([H|T],R) :-
   nrev(T,RT),
   app(RT,[H],R).

app([],L,L).
app([H|T],L,[H|R]) :-
   app(T,L,R).
)";

const char* kRev = R"(rev([],A,A).
rev([H|T],A,R) :-
   rev(T,[H|A],R).
)";

const char* kPermute = R"(perm([],[]).
perm(L,[H|T]) :-
   del(H,L,R),
   perm(R,T).

del(X,[X|T],T).
del(X,[H|T],[H|R]) :-
   del(X,T,R).
)";

std::string list_text(const std::vector<long>& xs, const std::string& tail = {}) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(xs[i]);
  }
  if (!tail.empty()) out += (xs.empty() ? "" : "|") + tail;
  return out + "]";
}

std::vector<long> iota_list(std::size_t n) {
  std::vector<long> xs;
  for (std::size_t i = 1; i <= n; ++i) xs.push_back(static_cast<long>(i));
  return xs;
}

std::vector<long> concat(std::vector<long> a, const std::vector<long>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// 1..n-2 followed by two 1s; n=3 gives [1,1,1].
std::vector<long> qsort_list(std::size_t n) {
  std::vector<long> xs = iota_list(n >= 2 ? n - 2 : 0);
  xs.resize(n, 1);
  return xs;
}

std::vector<long> alternating(std::size_t n) {
  std::vector<long> xs;
  for (std::size_t i = 0; i < n; ++i) xs.push_back(static_cast<long>(i % 2 + 1));
  return xs;
}

std::vector<BenchCase> make_corpus() {
  std::vector<BenchCase> c;
  c.push_back({"qsort", kQsort, {10, 20, 40}, true,
               [](std::size_t n) { return "qsort(" + list_text(qsort_list(n)) + ",R,A)"; },
               [](std::size_t n) {
                 std::string l = list_text(qsort_list(n));
                 return std::vector<std::string>{"qsort(" + l + ",R,[])", "qsort(" + l + ",R,[9])",
                                                 "qsort(" + l + ",R,[0,5])"};
               }});
  c.push_back({"nrev", kNrev, {10, 20, 40}, false,
               [](std::size_t n) { return "nrev(" + list_text(iota_list(n), "T") + ",R)"; },
               [](std::size_t n) {
                 auto xs = iota_list(n);
                 return std::vector<std::string>{"nrev(" + list_text(xs) + ",R)",
                                                 "nrev(" + list_text(concat(xs, {0})) + ",R)",
                                                 "nrev(" + list_text(concat(xs, {7, 3})) + ",R)"};
               }});
  c.push_back({"nrev_rep", kNrev, {10, 20, 40}, true,
               [](std::size_t n) { return "nrev(" + list_text(alternating(n), "T") + ",R)"; },
               [](std::size_t n) {
                 auto xs = alternating(n);
                 return std::vector<std::string>{"nrev(" + list_text(xs) + ",R)",
                                                 "nrev(" + list_text(concat(xs, {1})) + ",R)",
                                                 "nrev(" + list_text(concat(xs, {2, 2})) + ",R)"};
               }});
  c.push_back({"rev", kRev, {10, 20, 40}, false,
               [](std::size_t n) { return "rev(" + list_text(iota_list(n), "T") + ",[],R)"; },
               [](std::size_t n) {
                 auto xs = iota_list(n);
                 return std::vector<std::string>{"rev(" + list_text(xs) + ",[],R)",
                                                 "rev(" + list_text(concat(xs, {0})) + ",[],R)",
                                                 "rev(" + list_text(concat(xs, {5, 6})) + ",[],R)"};
               }});
  c.push_back({"permute", kPermute, {4, 5, 6}, false,
               [](std::size_t n) { return "perm(" + list_text(iota_list(n), "T") + ",P)"; },
               [](std::size_t n) {
                 auto xs = iota_list(n);
                 return std::vector<std::string>{
                     "perm(" + list_text(xs) + ",P)", "perm(" + list_text(concat(xs, {0})) + ",P)",
                     "perm(" + list_text(xs) + ",[" + std::to_string(n) + "|P])"};
               }});
  return c;
}

std::string fmt_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

void add_check(BenchReport& r, std::string name, bool pass, std::string detail) {
  r.checks.push_back({std::move(name), pass, std::move(detail)});
}

void run_checks(BenchReport& report, const std::vector<const BenchCase*>& cases) {
  // Group rows by (case, n, wqo).
  std::map<std::tuple<std::string, std::size_t, std::string>, std::vector<const BenchRow*>> groups;
  for (const BenchRow& row : report.rows) groups[{row.case_name, row.n, row.wqo}].push_back(&row);

  for (const BenchRow& row : report.rows)
    if (!row.error.empty())
      add_check(report, "run-ok", false,
                row.case_name + " n=" + std::to_string(row.n) + " " + row.backend + " " + row.wqo +
                    ": " + row.error);

  for (const auto& [key, rows] : groups) {
    const auto& [name, n, wqo] = key;
    std::string where = name + " n=" + std::to_string(n) + " wqo=" + wqo;
    const BenchRow* first = rows.front();
    bool same_hash = true, same_counts = true;
    for (const BenchRow* r : rows) {
      same_hash = same_hash && r->residual_hash == first->residual_hash;
      const UnfoldStats &a = r->stats, &b = first->stats;
      same_counts = same_counts && a.steps == b.steps && a.derive == b.derive &&
                    a.derive_fact == b.derive_fact && a.pop == b.pop && a.external == b.external;
    }
    add_check(report, "residual-identity", same_hash, where);
    add_check(report, "counter-equality", same_counts, where);

    if (n >= 10) {
      std::map<std::string, std::uint64_t> peak;
      for (const BenchRow* r : rows) peak[r->backend] = r->stats.peak_cells;
      if (peak.contains("stacks") && peak.contains("trees") && peak.contains("relation")) {
        bool ordered = peak["stacks"] <= peak["trees"] && peak["trees"] <= peak["relation"];
        add_check(report, "memory-ordering", ordered,
                  where + ": " + std::to_string(peak["stacks"]) + " <= " +
                      std::to_string(peak["trees"]) + " <= " + std::to_string(peak["relation"]));
      }
    }

    std::map<std::string, double> local;
    for (const BenchRow* r : rows) local[r->backend] = r->local_ms;
    if (local.contains("stacks") && local.contains("trees") && local["trees"] > 0.5 &&
        local["stacks"] > 2 * local["trees"])
      report.notes.push_back("timing: stacks slower than trees by more than 2x on " + where + " (" +
                             fmt_ms(local["stacks"]) + " ms vs " + fmt_ms(local["trees"]) + " ms)");
  }

  for (const BenchCase* c : cases) {
    if (!c->repeated) continue;
    std::map<std::size_t, std::pair<const BenchRow*, const BenchRow*>> by_n;
    for (const BenchRow& row : report.rows) {
      if (row.case_name != c->name || row.backend != "stacks" || !row.error.empty()) continue;
      if (row.wqo == "hembed") by_n[row.n].first = &row;
      if (row.wqo == "fullseq-hembed") by_n[row.n].second = &row;
    }
    for (const auto& [n, pr] : by_n) {
      if (!pr.first || !pr.second) continue;
      add_check(report, "ablation-separation",
                pr.second->stats.residualized > pr.first->stats.residualized,
                c->name + " n=" + std::to_string(n) + ": fullseq " +
                    std::to_string(pr.second->stats.residualized) + " vs ancestors " +
                    std::to_string(pr.first->stats.residualized) + " residualized leaves");
    }
  }
}

}  // namespace

Program BenchCase::load(std::size_t n) const {
  return parse_program(source + "\n:- entry " + entry(n) + ".\n");
}

const std::vector<BenchCase>& corpus() {
  static const std::vector<BenchCase> c = make_corpus();
  return c;
}

const BenchCase* find_case(std::string_view name) {
  for (const BenchCase& c : corpus())
    if (c.name == name) return &c;
  return nullptr;
}

bool BenchReport::ok() const {
  for (const BenchCheck& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

BenchRow bench_row(const ResidualProgram& r, std::string case_name, std::size_t n,
                   BackendKind backend, const std::string& wqo) {
  BenchRow row;
  row.case_name = std::move(case_name);
  row.n = n;
  row.backend = std::string(backend_name(backend));
  row.wqo = wqo;
  row.stats = r.stats;
  row.versions = r.versions.size();
  row.clauses = r.program.clauses().size();
  row.local_ms = r.local_ms;
  row.global_ms = r.global_ms;
  row.residual_hash = fnv1a_hex(render_program(r.program));
  return row;
}

BenchReport run_suite(const std::vector<std::string>& selection, const BenchConfig& cfg) {
  std::vector<const BenchCase*> cases;
  for (const std::string& name : selection) {
    if (name == "all") {
      for (const BenchCase& c : corpus()) cases.push_back(&c);
      continue;
    }
    const BenchCase* c = find_case(name);
    if (!c) throw std::invalid_argument("unknown bench case '" + name + "'");
    cases.push_back(c);
  }

  BenchReport report;
  for (const BenchCase* c : cases) {
    const std::vector<std::size_t>& sizes = cfg.sizes.empty() ? c->sizes : cfg.sizes;
    for (std::size_t n : sizes) {
      Program p;
      std::string load_error;
      try {
        p = c->load(n);
      } catch (const std::exception& e) {
        load_error = e.what();
      }
      for (const std::string& wqo : cfg.wqos) {
        for (BackendKind b : cfg.backends) {
          BenchRow row;
          try {
            if (!load_error.empty()) throw std::runtime_error(load_error);
            SpecializeConfig sc;
            sc.unfold.backend = b;
            sc.unfold.wqo = make_wqo(wqo);
            sc.unfold.budget = wqo == "none" ? cfg.unbounded_budget : cfg.budget;
            row = bench_row(specialize(p, sc), c->name, n, b, wqo);
          } catch (const std::exception& e) {
            row.case_name = c->name;
            row.n = n;
            row.backend = std::string(backend_name(b));
            row.wqo = wqo;
            row.error = e.what();
          }
          report.rows.push_back(std::move(row));
        }
      }
    }
  }
  run_checks(report, cases);
  return report;
}

std::string stats_json(const BenchRow& row) {
  nlohmann::ordered_json j;
  j["case"] = row.case_name;
  j["n"] = row.n;
  j["backend"] = row.backend;
  j["wqo"] = row.wqo;
  j["unfold_steps"] = row.stats.steps;
  j["derive"] = row.stats.derive;
  j["derive_fact"] = row.stats.derive_fact;
  j["pop"] = row.stats.pop;
  j["external"] = row.stats.external;
  j["peak_cells"] = row.stats.peak_cells;
  j["residualized"] = row.stats.residualized;
  j["budget_leaves"] = row.stats.budget_leaves;
  j["versions"] = row.versions;
  j["clauses"] = row.clauses;
  j["local_ms"] = row.local_ms;
  j["global_ms"] = row.global_ms;
  j["residual_hash"] = row.residual_hash;
  if (!row.error.empty()) j["error"] = row.error;
  return j.dump(2);
}

std::string report_json(const BenchReport& r) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json cases = nlohmann::ordered_json::array();
  std::map<std::pair<std::string, std::size_t>, std::size_t> index;
  for (const BenchRow& row : r.rows) {
    auto key = std::make_pair(row.case_name, row.n);
    auto it = index.find(key);
    if (it == index.end()) {
      nlohmann::ordered_json c;
      c["case"] = row.case_name;
      c["n"] = row.n;
      c["runs"] = nlohmann::ordered_json::array();
      cases.push_back(std::move(c));
      it = index.emplace(key, cases.size() - 1).first;
    }
    auto run = nlohmann::ordered_json::parse(stats_json(row));
    run.erase("case");
    run.erase("n");
    cases[it->second]["runs"].push_back(std::move(run));
  }
  j["cases"] = std::move(cases);
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const BenchCheck& c : r.checks)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["checks"] = std::move(checks);
  j["notes"] = r.notes;
  j["ok"] = r.ok();
  return j.dump(2) + "\n";
}

std::string report_csv(const BenchReport& r) {
  std::ostringstream out;
  out << "case,n,backend,wqo,unfold_steps,derive,derive_fact,pop,external,peak_cells,"
         "residualized,versions,local_ms,global_ms,residual_hash,error\n";
  for (const BenchRow& row : r.rows) {
    std::string err = row.error;
    for (char& ch : err)
      if (ch == ',' || ch == '\n' || ch == '"') ch = ' ';
    out << row.case_name << ',' << row.n << ',' << row.backend << ',' << row.wqo << ','
        << row.stats.steps << ',' << row.stats.derive << ',' << row.stats.derive_fact << ','
        << row.stats.pop << ',' << row.stats.external << ',' << row.stats.peak_cells << ','
        << row.stats.residualized << ',' << row.versions << ',' << fmt_ms(row.local_ms) << ','
        << fmt_ms(row.global_ms) << ',' << row.residual_hash << ',' << err << '\n';
  }
  return out.str();
}

void write_report(const BenchReport& r, const std::string& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& file, const std::string& text) {
    std::ofstream f(std::filesystem::path(dir) / file, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + file + " in " + dir);
    f << text;
  };
  write("report.json", report_json(r));
  write("report.csv", report_csv(r));
}

}  // namespace peval
