#ifndef COXCONE_H
#define COXCONE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum CoxconeStatus {
  COXCONE_STATUS_OK = 0,
  COXCONE_STATUS_NULL_POINTER = 1,
  COXCONE_STATUS_INVALID_UTF8 = 2,
  COXCONE_STATUS_PARSE = 3,
  COXCONE_STATUS_VALIDATION = 4,
  COXCONE_STATUS_PRECONDITION = 5,
  COXCONE_STATUS_BOUND_EXCEEDED = 6,
  COXCONE_STATUS_NOT_FOUND = 7,
  COXCONE_STATUS_BUFFER_TOO_SMALL = 8,
  COXCONE_STATUS_INTERNAL = 9,
} CoxconeStatus;

/**
 * A validated root base with its Coxeter group and facial sets.
 */
typedef struct CoxconeSystem CoxconeSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *coxcone_status_message(enum CoxconeStatus status);

/**
 * Loads a system from its JSON document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer. On success
 * `*out` must later be released with [`coxcone_system_free`].
 */
enum CoxconeStatus coxcone_system_from_json(const char *json, struct CoxconeSystem **out);

/**
 * # Safety
 * `sys` must come from [`coxcone_system_from_json`] and not be used afterwards.
 */
void coxcone_system_free(struct CoxconeSystem *sys);

/**
 * Number of simple reflections.
 *
 * # Safety
 * `sys` must be a live handle.
 */
size_t coxcone_system_rank(const struct CoxconeSystem *sys);

/**
 * Dimension of the realization space.
 *
 * # Safety
 * `sys` must be a live handle.
 */
size_t coxcone_system_dim(const struct CoxconeSystem *sys);

/**
 * Writes all facial sets (`special == 0`) or the special ones as masks.
 *
 * `*len` receives the number of sets; when it exceeds `cap` nothing is written
 * and `BufferTooSmall` is returned, so callers may probe with `cap = 0`.
 *
 * # Safety
 * `sys` must be a live handle, `buf` valid for `cap` writes and `len` valid.
 */
enum CoxconeStatus coxcone_facial_sets(const struct CoxconeSystem *sys,
                                       int32_t special,
                                       uint64_t *buf,
                                       size_t cap,
                                       size_t *len);

/**
 * Whether the subset `j` is facial.
 *
 * # Safety
 * `sys` must be a live handle and `out` valid.
 */
enum CoxconeStatus coxcone_is_facial(const struct CoxconeSystem *sys, uint64_t j, bool *out);

/**
 * Whether `σ_a R(Θ_a) ⊆ σ_b R(Θ_b)` in the Tits cone.
 *
 * # Safety
 * `sys` must be a live handle, the words valid for their lengths and `out` valid.
 */
enum CoxconeStatus coxcone_tits_leq(const struct CoxconeSystem *sys,
                                    uint64_t theta_a,
                                    const uint32_t *word_a,
                                    size_t len_a,
                                    uint64_t theta_b,
                                    const uint32_t *word_b,
                                    size_t len_b,
                                    bool *out);

/**
 * Runs a command line (`argv[0]` is the program name) and returns its exit
 * code; the report is stored in `*out`, to be released with [`coxcone_string_free`].
 *
 * # Safety
 * `argv` must hold `argc` NUL-terminated strings and `out` must be valid.
 */
int32_t coxcone_run(size_t argc, const char *const *argv, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void coxcone_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COXCONE_H */
