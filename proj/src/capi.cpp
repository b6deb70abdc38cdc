#include "peval.h"

#include <fstream>
#include <sstream>
#include <string>

#include "peval/bench.hpp"
#include "peval/parser.hpp"
#include "peval/sldrun.hpp"

struct peval_program {
  peval::Program prog;
  std::string text;
};

struct peval_result {
  std::string text;
  std::string json;
};

struct peval_answers {
  std::vector<std::string> lines;
  bool complete = true;
  std::uint64_t steps = 0;
};

namespace {

thread_local std::string g_last_error;

peval_status fail(peval_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

template <class F>
peval_status guarded(F&& f) {
  try {
    return f();
  } catch (const peval::ParseError& e) {
    return fail(PEVAL_ERR_PARSE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(PEVAL_ERR_INVALID, e.what());
  } catch (const peval::SldError& e) {
    return fail(PEVAL_ERR_INVALID, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PEVAL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PEVAL_ERR_INTERNAL, e.what());
  }
}

std::vector<std::string> split(const char* s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

extern "C" {

const char* peval_version(void) { return "0.1.0"; }

const char* peval_last_error(void) { return g_last_error.c_str(); }

peval_status peval_program_parse(const char* text, peval_program** out) {
  if (!text || !out) return fail(PEVAL_ERR_INVALID, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto h = std::make_unique<peval_program>();
    h->prog = peval::parse_program(text);
    h->text = peval::render_program(h->prog);
    *out = h.release();
    return PEVAL_OK;
  });
}

peval_status peval_program_load(const char* path, peval_program** out) {
  if (!path || !out) return fail(PEVAL_ERR_INVALID, "null argument");
  *out = nullptr;
  std::ifstream f(path, std::ios::binary);
  if (!f) return fail(PEVAL_ERR_IO, std::string("cannot open ") + path);
  std::stringstream ss;
  ss << f.rdbuf();
  peval_status s = peval_program_parse(ss.str().c_str(), out);
  if (s == PEVAL_ERR_PARSE) g_last_error = std::string(path) + ": " + g_last_error;
  return s;
}

const char* peval_program_text(const peval_program* p) { return p ? p->text.c_str() : ""; }

void peval_program_free(peval_program* p) { delete p; }

void peval_spec_config_init(peval_spec_config* cfg) {
  if (!cfg) return;
  cfg->backend = "stacks";
  cfg->wqo = "hembed";
  cfg->rule = "leftmost";
  cfg->determinacy_stop = 0;
  cfg->budget = 1000000;
}

peval_status peval_specialize(const peval_program* p, const peval_spec_config* cfg,
                              peval_result** out) {
  if (!p || !out) return fail(PEVAL_ERR_INVALID, "null argument");
  *out = nullptr;
  peval_spec_config defaults;
  peval_spec_config_init(&defaults);
  if (!cfg) cfg = &defaults;
  return guarded([&] {
    const char* bname = cfg->backend ? cfg->backend : "stacks";
    auto backend = peval::parse_backend(bname);
    if (!backend)
      return fail(PEVAL_ERR_INVALID, std::string("unknown backend '") + bname +
                                         "' (expected stacks, trees or relation)");
    if (cfg->rule && std::string_view(cfg->rule) != "leftmost")
      return fail(PEVAL_ERR_INVALID, std::string("unknown rule '") + cfg->rule +
                                         "' (only leftmost is supported)");
    if (p->prog.entries().empty())
      return fail(PEVAL_ERR_PARSE, "program has no ':- entry' directive");
    std::string wqo = cfg->wqo ? cfg->wqo : "hembed";
    peval::SpecializeConfig sc;
    sc.unfold.backend = *backend;
    sc.unfold.wqo = peval::make_wqo(wqo);
    sc.unfold.determinacy_stop = cfg->determinacy_stop != 0;
    sc.unfold.budget = cfg->budget ? cfg->budget : 1000000;

    peval::ResidualProgram r = peval::specialize(p->prog, sc);
    auto h = std::make_unique<peval_result>();
    h->text = peval::render_program(r.program);
    h->json = peval::stats_json(peval::bench_row(r, "spec", 0, *backend, wqo)) + "\n";
    *out = h.release();
    if (r.budget_atom)
      return fail(PEVAL_ERR_BUDGET,
                  "step budget exhausted while unfolding " + peval::render_atom(*r.budget_atom));
    return PEVAL_OK;
  });
}

const char* peval_result_text(const peval_result* r) { return r ? r->text.c_str() : ""; }

const char* peval_result_json(const peval_result* r) { return r ? r->json.c_str() : ""; }

void peval_result_free(peval_result* r) { delete r; }

peval_status peval_run(const peval_program* p, const char* query, uint64_t budget,
                       peval_answers** out) {
  if (!p || !query || !out) return fail(PEVAL_ERR_INVALID, "null argument");
  *out = nullptr;
  return guarded([&] {
    peval::VarGen gen(p->prog.max_var_id() + 1);
    peval::Query q = peval::parse_query(query, gen);
    peval::RunResult rr = peval::run(p->prog, q.goals, budget ? budget : 1000000, gen);

    peval::VarNames names;
    for (const auto& [name, id] : q.names) names.emplace(id, name);
    auto h = std::make_unique<peval_answers>();
    for (const peval::Substitution& s : rr.answers) {
      std::string line;
      for (const auto& [name, id] : q.names) {
        if (name.starts_with('_')) continue;
        const peval::Term* t = s.find(id);
        if (!t) continue;
        if (!line.empty()) line += ", ";
        line += name + " = " + peval::render_term(*t, names);
      }
      h->lines.push_back(line.empty() ? "yes" : line);
    }
    h->complete = rr.complete;
    h->steps = rr.steps;
    *out = h.release();
    if (!rr.complete) return fail(PEVAL_ERR_BUDGET, "step budget exhausted");
    return PEVAL_OK;
  });
}

size_t peval_answers_count(const peval_answers* a) { return a ? a->lines.size() : 0; }

const char* peval_answers_get(const peval_answers* a, size_t i) {
  if (!a || i >= a->lines.size()) return nullptr;
  return a->lines[i].c_str();
}

int peval_answers_complete(const peval_answers* a) { return a && a->complete ? 1 : 0; }

uint64_t peval_answers_steps(const peval_answers* a) { return a ? a->steps : 0; }

void peval_answers_free(peval_answers* a) { delete a; }

peval_status peval_bench(const char* cases, const char* sizes, const char* out_dir,
                         peval_result** out) {
  if (!cases || !out) return fail(PEVAL_ERR_INVALID, "null argument");
  *out = nullptr;
  return guarded([&] {
    peval::BenchConfig cfg;
    if (sizes)
      for (const std::string& s : split(sizes)) cfg.sizes.push_back(std::stoul(s));
    peval::BenchReport report = peval::run_suite(split(cases), cfg);
    if (out_dir) {
      try {
        peval::write_report(report, out_dir);
      } catch (const std::exception& e) {
        return fail(PEVAL_ERR_IO, e.what());
      }
    }
    auto h = std::make_unique<peval_result>();
    std::size_t failed = 0;
    for (const peval::BenchCheck& c : report.checks) {
      if (c.pass) continue;
      ++failed;
      h->text += "FAIL " + c.name + ": " + c.detail + "\n";
    }
    for (const std::string& n : report.notes) h->text += "note: " + n + "\n";
    h->text += std::to_string(report.rows.size()) + " runs, " +
               std::to_string(report.checks.size()) + " checks, " + std::to_string(failed) +
               " failed\n";
    h->json = peval::report_json(report);
    *out = h.release();
    if (failed) return fail(PEVAL_ERR_CHECK, std::to_string(failed) + " bench checks failed");
    return PEVAL_OK;
  });
}

}  // extern "C"
