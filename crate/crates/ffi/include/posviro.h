#ifndef POSVIRO_H
#define POSVIRO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result codes; the first four agree with the exit codes of the command line tool.
typedef enum PosviroStatus {
  POSVIRO_STATUS_OK = 0,
  POSVIRO_STATUS_CHECK_FAILED = 1,
  POSVIRO_STATUS_INVALID_ARGUMENT = 2,
  POSVIRO_STATUS_NUMERIC = 3,
  POSVIRO_STATUS_NULL_POINTER = 4,
  POSVIRO_STATUS_PANIC = 5,
} PosviroStatus;

// A pure simplicial complex.
typedef struct PosviroComplex PosviroComplex;

// A matrix of exact rationals.
typedef struct PosviroMatrix PosviroMatrix;

// A Viro system with symbolic parameter `t`.
typedef struct PosviroSystem PosviroSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the
// next call on the same thread.
const char *posviro_last_error(void);

// Library version as a static string.
const char *posviro_version(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void posviro_string_free(char *s);

// Parses a complex from `{"dimension", "n_vertices", "facets"}` JSON.
//
// # Safety
// `json` must be a nul-terminated string and `out` a writable pointer.
enum PosviroStatus posviro_complex_from_json(const char *json, struct PosviroComplex **out);

// The minimal triangulation of the cyclic polytope `C(n, d)`, or its
// bipartite subcomplex when `bipartite` is true.
//
// # Safety
// `out` must be a writable pointer.
enum PosviroStatus posviro_cyclic_complex(uintptr_t n,
                                          uintptr_t d,
                                          bool bipartite,
                                          struct PosviroComplex **out);

// # Safety
// `k` must be a live handle and `out` a writable pointer.
enum PosviroStatus posviro_complex_facet_count(const struct PosviroComplex *k, uintptr_t *out);

// # Safety
// `k` must be a live handle and `out` a writable pointer.
enum PosviroStatus posviro_complex_to_json(const struct PosviroComplex *k, char **out);

// # Safety
// `k` must be null or a live handle.
void posviro_complex_free(struct PosviroComplex *k);

// Parses a matrix from `{"rows", "cols", "entries"}` JSON with entries as
// strings such as `"-3/4"`.
//
// # Safety
// `json` must be a nul-terminated string and `out` a writable pointer.
enum PosviroStatus posviro_matrix_from_json(const char *json, struct PosviroMatrix **out);

// # Safety
// `m` must be a live handle and `out` a writable pointer.
enum PosviroStatus posviro_matrix_to_json(const struct PosviroMatrix *m, char **out);

// # Safety
// `m` must be null or a live handle.
void posviro_matrix_free(struct PosviroMatrix *m);

// Writes whether `c` positively decorates every facet of `k`.
//
// # Safety
// `k` and `c` must be live handles and `out` a writable pointer.
enum PosviroStatus posviro_is_decorated(const struct PosviroComplex *k,
                                        const struct PosviroMatrix *c,
                                        bool *out);

// Searches for an exactly verified decoration. Returns `CheckFailed` and
// leaves `out` untouched when none is found.
//
// # Safety
// `k` must be a live handle and `out` a writable pointer.
enum PosviroStatus posviro_decorate(const struct PosviroComplex *k,
                                    uintptr_t restarts,
                                    uint64_t seed,
                                    struct PosviroMatrix **out);

// Parses a Viro system from `{"dimension", "points", "coefficients", "heights"}` JSON.
//
// # Safety
// `json` must be a nul-terminated string and `out` a writable pointer.
enum PosviroStatus posviro_system_from_json(const char *json, struct PosviroSystem **out);

// # Safety
// `s` must be null or a live handle.
void posviro_system_free(struct PosviroSystem *s);

// Number of distinct positive roots found near the facet predictions at
// `t = t_num / t_den`, using `precision` bits (0 for the default).
//
// # Safety
// `s` and `k` must be live handles and `out` a writable pointer.
enum PosviroStatus posviro_count_positive_roots(const struct PosviroSystem *s,
                                                const struct PosviroComplex *k,
                                                int64_t t_num,
                                                int64_t t_den,
                                                uintptr_t precision,
                                                uintptr_t *out);

// Number of facets of `S_{n,d}` as a decimal string.
//
// # Safety
// `out` must be a writable pointer.
enum PosviroStatus posviro_count_snd(uintptr_t n, uintptr_t d, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POSVIRO_H */
