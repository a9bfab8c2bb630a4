#ifndef FUZZNORM_H
#define FUZZNORM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define FN_OK 0

#define FN_ERR_NULL 1

#define FN_ERR_UTF8 2

#define FN_ERR_CONFIG 3

#define FN_ERR_PARSE 4

#define FN_ERR_DOMAIN 5

#define FN_ERR_BUDGET 6

#define FN_ERR_NOT_TOTAL 7

#define FN_ERR_IO 8

#define FN_ERR_PANIC 99

#define FN_VERDICT_HOLDS 0

#define FN_VERDICT_FAILS 1

#define FN_VERDICT_VACUOUS 2

/*
 A parsed connective.
 */
typedef struct FnConnective FnConnective;

/*
 A property report.
 */
typedef struct FnReport FnReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parses a connective id such as `tnorm:lukasiewicz` or
 `uninorm:umin(1/2,product,probsum)`.

 # Safety
 `id` must be a NUL-terminated string; `out` must be writable.
 */
int32_t fn_connective_parse(const char *id, struct FnConnective **out);

/*
 # Safety
 `c` must come from `fn_connective_parse` and not be used afterwards.
 */
void fn_connective_free(struct FnConnective *c);

/*
 The canonical id of `c`, as a new string.

 # Safety
 `c` must be a live handle; `out` must be writable.
 */
int32_t fn_connective_name(const struct FnConnective *c, char **out);

/*
 `C(x, y)` for rationals written `p/q`; the result is written as `p/q`.

 # Safety
 `c` must be a live handle, `x` and `y` NUL-terminated, `out` writable.
 */
int32_t fn_connective_eval(const struct FnConnective *c, const char *x, const char *y, char **out);

/*
 Checks one property of `c` on the grid `{i/grid}`: `axioms`, `strict`,
 `cancel`, `condcancel`, `archimedean`, `limit` or `classify`.

 # Safety
 `c` must be a live handle, `property` NUL-terminated, `out` writable.
 */
int32_t fn_check_property(const struct FnConnective *c,
                          const char *property,
                          uint32_t grid,
                          struct FnReport **out);

/*
 Checks `mu` (`builtin:identity`, ... or a JSON file path) as a fuzzy
 substructure of `([0,1], carrier)` of the given kind. The a-, u- and
 f-submonoid kinds use the carrier operation as combiner.

 # Safety
 All pointers must be valid: strings NUL-terminated, `out` writable.
 */
int32_t fn_check_substructure(const char *mu,
                              const struct FnConnective *carrier,
                              const char *kind,
                              uint32_t grid,
                              struct FnReport **out);

/*
 # Safety
 `r` must be a live report handle.
 */
int32_t fn_report_verdict(const struct FnReport *r, int32_t *out);

/*
 Number of witnesses recorded directly on the report.

 # Safety
 `r` must be a live report handle; `out` writable.
 */
int32_t fn_report_witness_count(const struct FnReport *r, size_t *out);

/*
 The report as JSON, as a new string.

 # Safety
 `r` must be a live report handle; `out` writable.
 */
int32_t fn_report_json(const struct FnReport *r, char **out);

/*
 # Safety
 `r` must come from this library and not be used afterwards.
 */
void fn_report_free(struct FnReport *r);

/*
 Runs the proposition suite. `only` is a comma-separated list of row ids,
 or NULL for every row. Writes the JSON summary and the suite exit code
 (0 confirmed, 1 counterexample, 2 skipped).

 # Safety
 `only` must be NULL or NUL-terminated; `json_out` and `exit_out` writable.
 */
int32_t fn_run_suite(uint32_t grid, const char *only, char **json_out, int32_t *exit_out);

/*
 Message for the last failure on this thread as a new string, or NULL.
 */
char *fn_last_error_message(void);

/*
 # Safety
 `s` must be a string returned by this library, or NULL.
 */
void fn_string_free(char *s);

/*
 Library version; static, do not free.
 */
const char *fn_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FUZZNORM_H */
