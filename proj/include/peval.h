/* C interface to the partial evaluator.
 *
 * All handles are opaque and owned by the caller, who releases them with
 * the matching *_free function. Strings returned by accessors stay valid
 * until their handle is freed. On failure every function returns a
 * nonzero status and peval_last_error() describes the problem; the error
 * text is per thread.
 */
#ifndef PEVAL_H
#define PEVAL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PEVAL_API __declspec(dllexport)
#else
#define PEVAL_API __attribute__((visibility("default")))
#endif

typedef enum peval_status {
  PEVAL_OK = 0,
  PEVAL_ERR_PARSE = 1,   /* syntax error, bad directive, missing entry */
  PEVAL_ERR_BUDGET = 2,  /* a step budget ran out; partial results are still returned */
  PEVAL_ERR_INVALID = 3, /* bad argument or configuration */
  PEVAL_ERR_IO = 4,
  PEVAL_ERR_CHECK = 5,   /* a bench invariant failed; the report is still returned */
  PEVAL_ERR_INTERNAL = 6
} peval_status;

typedef struct peval_program peval_program;
typedef struct peval_result peval_result;
typedef struct peval_answers peval_answers;

PEVAL_API const char* peval_version(void);
PEVAL_API const char* peval_last_error(void);

PEVAL_API peval_status peval_program_parse(const char* text, peval_program** out);
PEVAL_API peval_status peval_program_load(const char* path, peval_program** out);
/* Canonical rendering of the parsed program. */
PEVAL_API const char* peval_program_text(const peval_program* p);
PEVAL_API void peval_program_free(peval_program* p);

typedef struct peval_spec_config {
  const char* backend;  /* "stacks" (default), "trees" or "relation" */
  const char* wqo;      /* "hembed" (default), "none", "depth:<k>", "fullseq-hembed" */
  const char* rule;     /* "leftmost" (default and only value) */
  int determinacy_stop; /* stop before nondeterministic steps after the first */
  uint64_t budget;      /* resolution steps per unfold; 0 means 1000000 */
} peval_spec_config;

PEVAL_API void peval_spec_config_init(peval_spec_config* cfg);

/* Specializes `p` for its entry directives. `*out` is set on PEVAL_OK and
 * on PEVAL_ERR_BUDGET. */
PEVAL_API peval_status peval_specialize(const peval_program* p, const peval_spec_config* cfg,
                                        peval_result** out);
/* Residual program text, or the bench summary. */
PEVAL_API const char* peval_result_text(const peval_result* r);
/* Counters as JSON, or the full bench report. */
PEVAL_API const char* peval_result_json(const peval_result* r);
PEVAL_API void peval_result_free(peval_result* r);

/* Runs `query` with the reference SLD interpreter. `*out` is set on
 * PEVAL_OK and on PEVAL_ERR_BUDGET (answers found before the budget ran
 * out). */
PEVAL_API peval_status peval_run(const peval_program* p, const char* query, uint64_t budget,
                                 peval_answers** out);
PEVAL_API size_t peval_answers_count(const peval_answers* a);
/* One answer as "X = t, Y = s", or "yes" when it binds no query variable. */
PEVAL_API const char* peval_answers_get(const peval_answers* a, size_t i);
PEVAL_API int peval_answers_complete(const peval_answers* a);
PEVAL_API uint64_t peval_answers_steps(const peval_answers* a);
PEVAL_API void peval_answers_free(peval_answers* a);

/* Runs the benchmark suite. `cases` is a comma-separated list of case
 * names or "all"; `sizes` is a comma-separated list or NULL for each
 * case's defaults. When `out_dir` is not NULL, report.json and report.csv
 * are written there. `*out` is set on PEVAL_OK and PEVAL_ERR_CHECK. */
PEVAL_API peval_status peval_bench(const char* cases, const char* sizes, const char* out_dir,
                                   peval_result** out);

#ifdef __cplusplus
}
#endif

#endif /* PEVAL_H */
