/* tab3 — exact analysis of three-way tables from their 2-marginals.
 *
 * C interface to the shared library.  All functions are thread-safe as long
 * as each tab3_instance handle is used from one thread at a time after
 * creation (handles are immutable once parsed, so sharing a handle across
 * concurrent tab3_run calls is also fine).
 *
 * Memory: every char* an API call hands out (reports, JSON, error messages)
 * is owned by the caller and must be released with tab3_string_free.
 * Instances must be released with tab3_instance_free.
 */
#ifndef TAB3_H
#define TAB3_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define TAB3_API __declspec(dllexport)
#else
#define TAB3_API __attribute__((visibility("default")))
#endif

typedef enum tab3_status {
  TAB3_OK = 0,
  TAB3_INVALID_INPUT = 2,  /* malformed JSON, bad schema, unusable arguments */
  TAB3_CAP_EXCEEDED = 3,   /* state space or enumeration budget exhausted */
  TAB3_INTERNAL_ERROR = 4
} tab3_status;

/* Opaque parsed instance. */
typedef struct tab3_instance tab3_instance;

/* Per-run knobs.  Zero-initialize and set what you need; 0 means "default".
 * entry is 1-based (i, j, k); leave it {0,0,0} unless the command takes one. */
typedef struct tab3_options {
  uint64_t state_cap; /* transfer engine state-space bound (default 10^7) */
  uint64_t node_cap;  /* oracle enumeration bound (default 10^7) */
  int entry[3];       /* target cell for entry-range commands */
  int embed;          /* nonzero: generators emit the embedded instance */
} tab3_options;

/* Library version as "major.minor.patch".  Static string; do not free. */
TAB3_API const char *tab3_version(void);

/* Parse an instance (or a report wrapping one) from JSON text.
 * On success stores a new handle in *out and returns TAB3_OK.
 * On failure *out is NULL and *error (if non-NULL) holds a message. */
TAB3_API tab3_status tab3_instance_parse(const char *json_text, tab3_instance **out,
                                         char **error);

/* Normalized JSON for a parsed instance (round-trips byte-identically). */
TAB3_API tab3_status tab3_instance_to_json(const tab3_instance *inst, char **json_out,
                                           char **error);

TAB3_API void tab3_instance_free(tab3_instance *inst);

/* Run one command and produce a JSON report.
 *
 * Commands: "check", "exists", "count", "entry-range", "lp", "reduce-3dm",
 * "reduce-permanent", "embed", "gadget-zero", "gadget-frechet", "gen vlach",
 * "gen example21", "oracle count", "oracle exists", "oracle entry-range",
 * "oracle 3dm", "oracle permanent".
 *
 * Generator commands accept a NULL instance; all others require one.
 * options may be NULL for defaults.  Reports for identical inputs are
 * byte-identical across runs. */
TAB3_API tab3_status tab3_run(const tab3_instance *inst, const char *command,
                              const tab3_options *options, char **report_out,
                              char **error);

/* Render a JSON report as human-readable text. */
TAB3_API tab3_status tab3_report_to_text(const char *report_json, char **text_out,
                                         char **error);

/* Release any string returned through a char** out-parameter. */
TAB3_API void tab3_string_free(char *s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TAB3_H */
