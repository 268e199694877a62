#ifndef SDF_H
#define SDF_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum SdfStatus {
  SDF_STATUS_OK = 0,
  SDF_STATUS_NULL_ARGUMENT = 1,
  SDF_STATUS_INVALID_UTF8 = 2,
  // Spec, token, JSON or matrix text did not parse.
  SDF_STATUS_PARSE = 3,
  // An extension or construction precondition does not hold.
  SDF_STATUS_PRECONDITION = 4,
  // A referenced code is unknown.
  SDF_STATUS_UNRESOLVED = 5,
  // Output buffer too small.
  SDF_STATUS_BUFFER_TOO_SMALL = 6,
  // The census could not certify its counts.
  SDF_STATUS_INCOMPLETE = 7,
  SDF_STATUS_INTERNAL = 8,
  SDF_STATUS_PANIC = 9,
} SdfStatus;

// Opaque binary linear code.
typedef struct SdfBinary SdfBinary;

// Opaque ring code.
typedef struct SdfCode SdfCode;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread ("" after a success).
// Valid until the next call on the same thread.
const char *sdf_last_error(void);

// Builds a code from spec text. `name` selects a section (null: the last
// one); bases resolve in the text, then in the built-in library.
//
// # Safety
// `spec` and non-null `name` must be NUL-terminated strings; `out` must be
// writable.
enum SdfStatus sdf_code_from_spec(const char *spec, const char *name, struct SdfCode **out);

// Builds a library code by name or expression, e.g. `"J1"` or `"psi_f4u(L6)"`.
//
// # Safety
// `expr` must be a NUL-terminated string; `out` must be writable.
enum SdfStatus sdf_code_from_library(const char *expr, struct SdfCode **out);

// Loads a code from its JSON file form.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum SdfStatus sdf_code_from_json(const char *json, struct SdfCode **out);

// JSON file form of `code`; free with [`sdf_string_free`].
//
// # Safety
// `code` must be a live handle; `out` must be writable.
enum SdfStatus sdf_code_to_json(const struct SdfCode *code, char **out);

// Length over the ring.
//
// # Safety
// `code` must be a live handle; `out` must be writable.
enum SdfStatus sdf_code_length(const struct SdfCode *code, size_t *out);

// Self-duality under the ring's Euclidean inner product.
//
// # Safety
// `code` must be a live handle; `out` must be writable.
enum SdfStatus sdf_code_is_self_dual(const struct SdfCode *code, bool *out);

// Two-coordinate extension. `theorem` is `'A'` (bordered) or `'B'`
// (systematic); `x` and `c` use the ring's token alphabet.
//
// # Safety
// `code` must be a live handle, `x` and `c` NUL-terminated strings and
// `out` writable.
enum SdfStatus sdf_code_extend(const struct SdfCode *code,
                               char theorem,
                               const char *x,
                               const char *c,
                               struct SdfCode **out);

// Binary image through the ring's Gray map.
//
// # Safety
// `code` must be a live handle; `out` must be writable.
enum SdfStatus sdf_code_binary_image(const struct SdfCode *code, struct SdfBinary **out);

// Binary code from '0'/'1' rows, one per line.
//
// # Safety
// `matrix` must be a NUL-terminated string; `out` must be writable.
enum SdfStatus sdf_binary_from_matrix(const char *matrix, struct SdfBinary **out);

// Length `n` and dimension `k`.
//
// # Safety
// `code` must be a live handle; `n` and `k` must be writable.
enum SdfStatus sdf_binary_parameters(const struct SdfBinary *code, size_t *n, size_t *k);

// Exact minimum distance.
//
// # Safety
// `code` must be a live handle; `out` must be writable.
enum SdfStatus sdf_binary_min_distance(const struct SdfBinary *code, size_t *out);

// Exact codeword counts for weights `0..=wmax` into `counts`, which must
// hold `wmax + 1` entries (`len`).
//
// # Safety
// `code` must be a live handle and `counts` valid for `len` writes.
enum SdfStatus sdf_binary_census(const struct SdfBinary *code,
                                 size_t wmax,
                                 uint64_t *counts,
                                 size_t len);

// # Safety
// `code` must be null or a handle from this library, freed once.
void sdf_code_free(struct SdfCode *code);

// # Safety
// `code` must be null or a handle from this library, freed once.
void sdf_binary_free(struct SdfBinary *code);

// # Safety
// `s` must be null or a string returned by this library, freed once.
void sdf_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SDF_H */
