#ifndef DIFFBKK_H
#define DIFFBKK_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DbkEVariant {
  DBK_E_VARIANT_PRINTED = 0,
  DBK_E_VARIANT_PER_J = 1,
} DbkEVariant;

// Which multiple of the all-variables simplex enters Gamma.
typedef enum DbkGammaVariant {
  DBK_GAMMA_VARIANT_THEOREM12 = 0,
  DBK_GAMMA_VARIANT_PROP42 = 1,
  DBK_GAMMA_VARIANT_REFINED = 2,
} DbkGammaVariant;

// Result of every fallible call.
typedef enum DbkStatus {
  DBK_STATUS_OK = 0,
  DBK_STATUS_NULL_POINTER = 1,
  DBK_STATUS_INVALID_UTF8 = 2,
  // Malformed input: bad JSON, dimension mismatch, unknown option.
  DBK_STATUS_INVALID_INPUT = 3,
  // A mathematical hypothesis of the requested bound does not hold.
  DBK_STATUS_HYPOTHESIS = 4,
  // A size guard was exceeded.
  DBK_STATUS_GUARD = 5,
  // A Rust panic was caught at the boundary.
  DBK_STATUS_INTERNAL = 6,
} DbkStatus;

// Opaque lattice polytope.
typedef struct DbkPolytope DbkPolytope;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failing call on this thread, or NULL. The pointer
// stays valid until the next failing call on the same thread.
const char *dbk_last_error(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void dbk_string_free(char *s);

// Builds the convex hull of `count` points of dimension `dim`, stored
// row-major in `coords`.
//
// # Safety
// `coords` must point to `dim * count` integers; `out` must be writable.
enum DbkStatus dbk_polytope_from_points(const int64_t *coords,
                                        size_t dim,
                                        size_t count,
                                        struct DbkPolytope **out);

// Parses `{"dim": s, "points": [[...], ...]}`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum DbkStatus dbk_polytope_from_json(const char *json, struct DbkPolytope **out);

// # Safety
// `p` must come from this library and not have been freed. NULL is ignored.
void dbk_polytope_free(struct DbkPolytope *p);

// Ambient dimension, or 0 for NULL.
//
// # Safety
// `p` must be NULL or a live handle.
size_t dbk_polytope_dim(const struct DbkPolytope *p);

// Number of vertices, or 0 for NULL.
//
// # Safety
// `p` must be NULL or a live handle.
size_t dbk_polytope_vertex_count(const struct DbkPolytope *p);

// Euclidean volume as a reduced fraction `"p/q"` or integer.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum DbkStatus dbk_polytope_volume(const struct DbkPolytope *p, char **out);

// The polytope as JSON, with its canonical vertex list.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum DbkStatus dbk_polytope_to_json(const struct DbkPolytope *p, char **out);

// Minkowski sum of two polytopes.
//
// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum DbkStatus dbk_polytope_minkowski_sum(const struct DbkPolytope *a,
                                          const struct DbkPolytope *b,
                                          struct DbkPolytope **out);

// Mixed volume `V(P_1, …, P_s)` of `count = s` polytopes in `Z^s`.
//
// # Safety
// `polys` must point to `count` live handles; `out` must be writable.
enum DbkStatus dbk_mixed_volume(const struct DbkPolytope *const *polys, size_t count, char **out);

// Root count `s! V(P_1, …, P_s)`, choosing the engine automatically.
//
// # Safety
// `polys` must point to `count` live handles; `out` must be writable.
enum DbkStatus dbk_bkk_count(const struct DbkPolytope *const *polys, size_t count, char **out);

// `C_{s,k}`.
//
// # Safety
// `out` must be writable.
enum DbkStatus dbk_c_const(size_t s, size_t k, char **out);

// `E_{s,k}` in the requested reading.
//
// # Safety
// `out` must be writable.
enum DbkStatus dbk_e_const(size_t s, size_t k, enum DbkEVariant variant, char **out);

// Isogeny count bound for `α(z) = (az+b)/(cz+d)`; writes the full JSON report.
//
// # Safety
// `out` must be writable.
enum DbkStatus dbk_isogeny_bound(int64_t a,
                                 int64_t b,
                                 int64_t c,
                                 int64_t d,
                                 enum DbkGammaVariant variant,
                                 bool exact_gamma,
                                 char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIFFBKK_H */
