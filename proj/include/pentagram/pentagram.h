/*
 * pentagram — verification engine for pentagon/pentagram incidence theorems.
 *
 * C API of the shared library. All functions are thread-safe; objects are
 * opaque handles freed by their matching *_free call. Functions that can
 * fail return a pentagram_status; a human-readable message for the most
 * recent failure on the calling thread is available via pentagram_last_error.
 */

#ifndef PENTAGRAM_H
#define PENTAGRAM_H

#include <stdint.h>

#if defined(_WIN32)
#define PENTAGRAM_API __declspec(dllexport)
#else
#define PENTAGRAM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pentagram_status {
  PENTAGRAM_OK = 0,
  PENTAGRAM_ERR_USAGE = 1,          /* bad flags/options */
  PENTAGRAM_ERR_PARSE = 2,          /* malformed document */
  PENTAGRAM_ERR_DEGENERATE = 3,     /* construction degenerated (render is partial) */
  PENTAGRAM_ERR_NO_CONVERGENCE = 4, /* solver missed its tolerance */
  PENTAGRAM_ERR_IO = 5,
  PENTAGRAM_ERR_INTERNAL = 6
} pentagram_status;

/* A five-point configuration document (schema_version "1"). */
typedef struct pentagram_config pentagram_config;

/* Result of a verify or solve run: a JSON report, a human summary, and the
 * CLI exit code contract (0 all pass, 1 any fail, 2 degenerate or
 * indeterminate only). */
typedef struct pentagram_report pentagram_report;

typedef struct pentagram_verify_options {
  const char* theorem; /* miquel | takada | eleven | dual | collinear-b |
                          collinear-a | five-circles-chain */
  const char* mode;    /* "exact" | "float" */
  int bits;            /* float mantissa bits; 0 = default (53; the chain uses 256) */
  uint64_t seed;
  int trials;          /* >= 1 */
  double tolerance;    /* rel_pass override; 0 = mode default */
  int workers;         /* 0 = PENTAGRAM_WORKERS env or hardware concurrency */
} pentagram_verify_options;

PENTAGRAM_API const char* pentagram_version(void);
PENTAGRAM_API const char* pentagram_status_name(pentagram_status status);

/* Most recent failure message on this thread (empty string when none). */
PENTAGRAM_API const char* pentagram_last_error(void);

PENTAGRAM_API void pentagram_free(char* text);

/* --- configuration documents ------------------------------------------- */

PENTAGRAM_API pentagram_status pentagram_config_parse(const char* json_text,
                                                      pentagram_config** out);
PENTAGRAM_API pentagram_status pentagram_config_read(const char* path, pentagram_config** out);
/* Canonical JSON; exact documents re-serialize byte-identically. Free the
 * returned string with pentagram_free. */
PENTAGRAM_API char* pentagram_config_emit(const pentagram_config* config);
PENTAGRAM_API void pentagram_config_free(pentagram_config* config);

/* --- verification -------------------------------------------------------- */

/* Seeded suite over generated configurations. */
PENTAGRAM_API pentagram_status pentagram_verify_suite(const pentagram_verify_options* options,
                                                      pentagram_report** out);

/* One supplied configuration. Exact mode lifts float coordinates exactly. */
PENTAGRAM_API pentagram_status pentagram_verify_config(const pentagram_verify_options* options,
                                                       const pentagram_config* config,
                                                       pentagram_report** out);

PENTAGRAM_API const char* pentagram_report_json(const pentagram_report* report);
PENTAGRAM_API const char* pentagram_report_summary(const pentagram_report* report);
PENTAGRAM_API int pentagram_report_exit_code(const pentagram_report* report);
PENTAGRAM_API void pentagram_report_free(pentagram_report* report);

/* --- concyclic-centers solver ---------------------------------------------- */

/* Searches for `count` pentagons with concyclic Miquel-circle centers.
 * The report JSON is a solved-batch document embedding per-start solve
 * diagnostics; exit code 0 iff every start converged (reports with partial
 * output are still produced on PENTAGRAM_ERR_NO_CONVERGENCE). */
PENTAGRAM_API pentagram_status pentagram_solve(int count, uint64_t seed, int max_iterations,
                                               pentagram_report** out);

/* --- rendering ------------------------------------------------------------ */

/* `show_csv`: comma list among A,B,C,K,L,D,E,O,J,X,circles,klines (NULL or
 * empty = points A only). Missing derived layers are computed on the fly.
 * Returns PENTAGRAM_ERR_DEGENERATE with a partial figure when a requested
 * layer cannot be constructed. Free *svg_out with pentagram_free. */
PENTAGRAM_API pentagram_status pentagram_render_svg(const pentagram_config* config,
                                                    const char* show_csv, char** svg_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PENTAGRAM_H */
