#ifndef IDEAL_COXETER_H
#define IDEAL_COXETER_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result code of every fallible call.
typedef enum IcStatus {
  IC_STATUS_OK = 0,
  IC_STATUS_NULL_POINTER = 1,
  IC_STATUS_INVALID_UTF8 = 2,
  // Malformed ICP text or unknown catalog name.
  IC_STATUS_PARSE = 3,
  // The model or request failed validation.
  IC_STATUS_INVALID = 4,
  // Certification could not decide (e.g. a repeated root).
  IC_STATUS_INCONCLUSIVE = 5,
  // Tolerance out of range or not reachable.
  IC_STATUS_BAD_TOLERANCE = 6,
  // A result does not fit the C integer type.
  IC_STATUS_OVERFLOW = 7,
  // Enumeration hit its element cap.
  IC_STATUS_RESOURCE_LIMIT = 8,
  IC_STATUS_BUFFER_TOO_SMALL = 9,
  // A Rust panic was caught at the boundary.
  IC_STATUS_INTERNAL = 10,
} IcStatus;

// An ideal Coxeter polyhedron (combinatorial model with dihedral labels).
typedef struct IcPolyhedron IcPolyhedron;

// Certified growth rate: `tau` lies in `[tau_lo, tau_hi]`.
typedef struct IcGrowthRate {
  double tau_lo;
  double tau_hi;
  // The dominant root of g is simple.
  bool simple;
  // tau is a Perron number (certified).
  bool perron;
  // The enclosure is a single rational point.
  bool exact;
} IcGrowthRate;

// Volume estimate: the true value is within `error_bound` of `value`.
typedef struct IcVolume {
  double value;
  double error_bound;
} IcVolume;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer
// stays valid until the next call into this library on the same thread.
const char *ic_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *ic_version(void);

// Parses ICP text into a new handle (free with [`ic_polyhedron_free`]).
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum IcStatus ic_polyhedron_parse(const char *text, struct IcPolyhedron **out);

// Built-in model by name (`P1`..`P5`, `OCT`).
//
// # Safety
// `name` must be a NUL-terminated string and `out` a valid pointer.
enum IcStatus ic_polyhedron_catalog(const char *name, struct IcPolyhedron **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `p` must come from this library and not be freed twice.
void ic_polyhedron_free(struct IcPolyhedron *p);

// Number of faces, or 0 for a null handle.
//
// # Safety
// `p` must be null or a live handle.
size_t ic_polyhedron_face_count(const struct IcPolyhedron *p);

// Serialises to ICP text. Free the string with [`ic_string_free`].
//
// # Safety
// `p` must be a live handle and `out` a valid pointer.
enum IcStatus ic_polyhedron_to_icp(const struct IcPolyhedron *p, char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void ic_string_free(char *s);

// Runs every realizability check. `*valid` reports the verdict; on
// `false` the failing checks are in the last error message.
//
// # Safety
// `p` must be a live handle and `valid` a valid pointer.
enum IcStatus ic_validate(const struct IcPolyhedron *p, bool *valid);

// Coefficients of g (degree 0 first, 8 entries) under the buffer protocol.
//
// # Safety
// `p` must be a live handle, `buf` must hold `cap` entries, `len` valid.
enum IcStatus ic_g_coefficients(const struct IcPolyhedron *p,
                                int64_t *buf,
                                size_t cap,
                                size_t *len);

// Certified growth rate with enclosure width at most `tol`.
//
// # Safety
// `p` must be a live handle and `out` a valid pointer.
enum IcStatus ic_growth_rate(const struct IcPolyhedron *p, double tol, struct IcGrowthRate *out);

// Series coefficients a_0..=a_n of the growth function.
//
// # Safety
// `p` must be a live handle, `buf` must hold `cap` entries, `len` valid.
enum IcStatus ic_growth_series(const struct IcPolyhedron *p,
                               size_t n,
                               uint64_t *buf,
                               size_t cap,
                               size_t *len);

// Sphere sizes up to `depth` by enumerating the reflection group.
//
// # Safety
// `p` must be a live handle, `buf` must hold `cap` entries, `len` valid.
enum IcStatus ic_oracle_growth(const struct IcPolyhedron *p,
                               size_t depth,
                               uint64_t *buf,
                               size_t cap,
                               size_t *len);

// Volume of a built-in polyhedron (`P1`..`P5`).
//
// # Safety
// `name` must be a NUL-terminated string and `out` a valid pointer.
enum IcStatus ic_volume(const char *name, double tol, struct IcVolume *out);

// Glues `b` to `a` along faces `face_a`, `face_b`. `map` holds `map_len`
// pairs `(k, l)` flattened as `k0, l0, k1, l1, ...`: neighbour `k` of
// `face_a` is matched with neighbour `l` of `face_b`.
//
// # Safety
// Handles must be live, `map` must hold `2 * map_len` entries, `out` valid.
enum IcStatus ic_glue(const struct IcPolyhedron *a,
                      size_t face_a,
                      const struct IcPolyhedron *b,
                      size_t face_b,
                      const size_t *map,
                      size_t map_len,
                      struct IcPolyhedron **out);

// Whether two models are combinatorially isomorphic (labels included).
//
// # Safety
// Handles must be live and `result` valid.
enum IcStatus ic_isomorphic(const struct IcPolyhedron *a,
                            const struct IcPolyhedron *b,
                            bool *result);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IDEAL_COXETER_H */
