#ifndef CHORDSTATE_H
#define CHORDSTATE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes of every fallible call.
 */
typedef enum CsStatus {
  CS_STATUS_OK = 0,
  CS_STATUS_NULL_POINTER = 1,
  CS_STATUS_INVALID_UTF8 = 2,
  CS_STATUS_PARSE = 3,
  CS_STATUS_DIMENSION = 4,
  CS_STATUS_ARGUMENT = 5,
  CS_STATUS_RESOURCE = 6,
  CS_STATUS_SHAPE = 7,
  CS_STATUS_CONSISTENCY = 8,
  CS_STATUS_ZERO_DIMENSIONAL = 9,
  CS_STATUS_PANIC = 10,
} CsStatus;

/**
 * A parsed chord diagram.
 */
typedef struct CsDiagram CsDiagram;

/**
 * A parsed labelling.
 */
typedef struct CsLabelling CsLabelling;

/**
 * A Gram positivity report.
 */
typedef struct CsReport CsReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread. Valid until the next
 * failing call on the same thread; do not free.
 */
const char *cs_last_error(void);

/**
 * Library version as a static string; do not free.
 */
const char *cs_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void cs_string_free(char *s);

/**
 * Parses `N: (i,j) (k,l) ...` into a new diagram handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum CsStatus cs_diagram_parse(const char *text, struct CsDiagram **out);

/**
 * # Safety
 * `d` must be null or a handle from [`cs_diagram_parse`], not yet freed.
 */
void cs_diagram_free(struct CsDiagram *d);

/**
 * # Safety
 * `d` must be a live diagram handle.
 */
size_t cs_diagram_strands(const struct CsDiagram *d);

/**
 * # Safety
 * `d` must be a live diagram handle.
 */
size_t cs_diagram_chord_count(const struct CsDiagram *d);

/**
 * Canonical text form; free with [`cs_string_free`]. Null if `d` is null.
 *
 * # Safety
 * `d` must be null or a live diagram handle.
 */
char *cs_diagram_to_string(const struct CsDiagram *d);

/**
 * Parses a comma-separated labelling such as `sym:2,ext:2,std`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum CsStatus cs_labelling_parse(const char *text, struct CsLabelling **out);

/**
 * # Safety
 * `l` must be null or a handle from [`cs_labelling_parse`], not yet freed.
 */
void cs_labelling_free(struct CsLabelling *l);

/**
 * Weight of `d` at `n` as an exact rational string (`p` or `p/q`).
 * A null labelling means the defining representation on every strand.
 *
 * # Safety
 * `d` must be a live diagram handle, `l` null or a live labelling handle,
 * `value_out` a valid pointer. The returned string must be freed with
 * [`cs_string_free`].
 */
enum CsStatus cs_weight(const struct CsDiagram *d,
                        const struct CsLabelling *l,
                        uint32_t n,
                        char **value_out);

/**
 * Weight of `d` as a polynomial in `n`: a JSON array of rational strings,
 * constant term first.
 *
 * # Safety
 * As [`cs_weight`].
 */
enum CsStatus cs_weight_poly_json(const struct CsDiagram *d,
                                  const struct CsLabelling *l,
                                  char **json_out);

/**
 * Builds and checks the Gram matrix over all words with at most `depth`
 * chords, using the default resource limits.
 *
 * # Safety
 * `l` must be null or a live labelling handle; `out` a valid pointer.
 */
enum CsStatus cs_verify(size_t strands,
                        size_t depth,
                        const struct CsLabelling *l,
                        uint32_t n,
                        struct CsReport **out);

/**
 * # Safety
 * `r` must be null or a handle from [`cs_verify`], not yet freed.
 */
void cs_report_free(struct CsReport *r);

/**
 * # Safety
 * `r` must be a live report handle.
 */
bool cs_report_psd(const struct CsReport *r);

/**
 * Symmetric, PSD, positive unit value, and a symmetric/exterior-power labelling.
 *
 * # Safety
 * `r` must be a live report handle.
 */
bool cs_report_certificate(const struct CsReport *r);

/**
 * # Safety
 * `r` must be a live report handle.
 */
size_t cs_report_basis_len(const struct CsReport *r);

/**
 * # Safety
 * `r` must be a live report handle.
 */
size_t cs_report_rank(const struct CsReport *r);

/**
 * Full report as JSON; free with [`cs_string_free`].
 *
 * # Safety
 * `r` must be null or a live report handle.
 */
char *cs_report_to_json(const struct CsReport *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHORDSTATE_H */
