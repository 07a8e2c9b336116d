/* C interface to the ffheights library. All returned strings are
 * allocated by the library and must be released with ffh_string_free. */

#ifndef FFHEIGHTS_H
#define FFHEIGHTS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum FfhStatus {
  FFH_STATUS_OK = 0,
  FFH_STATUS_ERR_DOMAIN = 1,
  FFH_STATUS_ERR_VALIDATION = 2,
  FFH_STATUS_ERR_RESOURCE = 3,
  FFH_STATUS_ERR_PARSE = 4,
  FFH_STATUS_ERR_UNSUPPORTED = 5,
  FFH_STATUS_ERR_NULL = 6,
  FFH_STATUS_ERR_UTF8 = 7,
  FFH_STATUS_ERR_PANIC = 8,
} FfhStatus;

/**
 * Opaque elliptic curve handle.
 */
typedef struct FfhCurve FfhCurve;

/**
 * Opaque elliptic point handle.
 */
typedef struct FfhEPoint FfhEPoint;

/**
 * Opaque field handle (F_{p^m} plus its canonical modulus).
 */
typedef struct FfhField FfhField;

/**
 * Opaque rational-map handle; the field of definition is embedded.
 */
typedef struct FfhMap FfhMap;

/**
 * Opaque point of P^1 over a constant extension.
 */
typedef struct FfhPoint FfhPoint;

/**
 * The most recent error message on this thread, or NULL; caller frees.
 */
char *ffh_last_error_message(void);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must have been returned by an ffheights function and not yet freed.
 */
void ffh_string_free(char *s);

/**
 * Library version as a string; caller frees.
 */
char *ffh_version(void);

/**
 * Construct F_{p^m}.
 *
 * # Safety
 * `out` must be a valid pointer to a handle slot.
 */
enum FfhStatus ffh_field_new(uint64_t p, uint32_t m, struct FfhField **out);

/**
 * Construct the field of order q = p^m.
 *
 * # Safety
 * `out` must be a valid pointer to a handle slot.
 */
enum FfhStatus ffh_field_from_order(uint64_t q, struct FfhField **out);

/**
 * # Safety
 * `f` must be a live handle from `ffh_field_new`/`ffh_field_from_order`.
 */
void ffh_field_free(struct FfhField *f);

/**
 * Parse a rational map literal like "(z^2+t)/z" over the field.
 *
 * # Safety
 * `field` must be live; `src` a NUL-terminated string; `out` valid.
 */
enum FfhStatus ffh_map_parse(const struct FfhField *field, const char *src, struct FfhMap **out);

/**
 * # Safety
 * `m` must be a live map handle.
 */
void ffh_map_free(struct FfhMap *m);

/**
 * The certified height-gap constant C(f), as "a/b"; caller frees.
 *
 * # Safety
 * `m` must be live; `out` valid.
 */
enum FfhStatus ffh_map_gap_constant(const struct FfhMap *m, char **out);

/**
 * Parse a point literal "[a : b]" over a constant extension of index m.
 *
 * # Safety
 * `field` must be live; `src` NUL-terminated; `out` valid.
 */
enum FfhStatus ffh_point_parse(const struct FfhField *field,
                               const char *src,
                               uint32_t m,
                               struct FfhPoint **out);

/**
 * # Safety
 * `p` must be a live point handle.
 */
void ffh_point_free(struct FfhPoint *p);

/**
 * Naive Weil height as "a/b"; caller frees.
 *
 * # Safety
 * `p` must be live; `out` valid.
 */
enum FfhStatus ffh_height(const struct FfhPoint *p, char **out);

/**
 * Local height decomposition as a JSON document; caller frees.
 *
 * # Safety
 * `p` must be live; `out` valid.
 */
enum FfhStatus ffh_local_heights_json(const struct FfhPoint *p, char **out);

/**
 * Canonical height with certified error <= eps ("a/b" string), as a JSON
 * document {"value","error_bound","exact"}; caller frees.
 *
 * # Safety
 * All handles must be live; `eps` NUL-terminated; `out` valid.
 */
enum FfhStatus ffh_canonical_height(const struct FfhMap *map,
                                    const struct FfhPoint *p,
                                    const char *eps,
                                    char **out);

/**
 * Exact preperiodicity decision; writes 0 or 1.
 *
 * # Safety
 * Handles must be live; `out` valid.
 */
enum FfhStatus ffh_is_preperiodic(const struct FfhMap *map, const struct FfhPoint *p, bool *out);

/**
 * Parse a curve from JSON {"a1":...,"a6":...} over the field.
 *
 * # Safety
 * `field` live; `json` NUL-terminated; `out` valid.
 */
enum FfhStatus ffh_curve_parse(const struct FfhField *field,
                               const char *json,
                               struct FfhCurve **out);

/**
 * # Safety
 * `c` must be a live curve handle.
 */
void ffh_curve_free(struct FfhCurve *c);

/**
 * Parse an elliptic point: "O" or {"x":"...","y":"..."}.
 *
 * # Safety
 * `field` live; `json` NUL-terminated; `out` valid.
 */
enum FfhStatus ffh_epoint_parse(const struct FfhField *field,
                                const char *json,
                                struct FfhEPoint **out);

/**
 * # Safety
 * `p` must be a live elliptic point handle.
 */
void ffh_epoint_free(struct FfhEPoint *p);

/**
 * Neron-Tate height (theta-normalized) within eps, as JSON; caller frees.
 *
 * # Safety
 * Handles live; `eps` NUL-terminated; `out` valid.
 */
enum FfhStatus ffh_nt_height(const struct FfhCurve *curve,
                             const struct FfhEPoint *p,
                             const char *eps,
                             char **out);

/**
 * Exact torsion decision; writes 0 or 1.
 *
 * # Safety
 * Handles live; `out` valid.
 */
enum FfhStatus ffh_is_torsion(const struct FfhCurve *curve, const struct FfhEPoint *p, bool *out);

/**
 * Local Hodge index verdict for a Kodaira type name ("I3", "IV*", ...),
 * as a JSON report; caller frees.
 *
 * # Safety
 * `name` NUL-terminated; `out` valid.
 */
enum FfhStatus ffh_fiber_check_type(const char *name, char **out);

/**
 * Faltings-Hriljac cross-check from a combined JSON input (same schema as
 * the CLI fh-check), with certified error <= eps; JSON report out.
 *
 * # Safety
 * `json` and `eps` NUL-terminated; `out` valid.
 */
enum FfhStatus ffh_fh_check(const char *json, const char *eps, char **out);

#endif  /* FFHEIGHTS_H */
