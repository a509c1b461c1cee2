/* C bindings for the qupauli exact Pauli-group algebra library. */

#ifndef QUPAULI_H
#define QUPAULI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
enum QupauliStatus
#ifdef __cplusplus
  : int32_t
#endif // __cplusplus
 {
  /**
   * Success.
   */
  QUPAULI_STATUS_OK = 0,
  /**
   * A dimension `d < 2` was supplied.
   */
  QUPAULI_STATUS_INVALID_DIMENSION = 1,
  /**
   * Matrix or vector shapes are incompatible.
   */
  QUPAULI_STATUS_SHAPE_MISMATCH = 2,
  /**
   * Operands live over different rings.
   */
  QUPAULI_STATUS_RING_MISMATCH = 3,
  /**
   * Operands disagree in `d` or `n`.
   */
  QUPAULI_STATUS_DIMENSION_MISMATCH = 4,
  /**
   * Text input failed to parse.
   */
  QUPAULI_STATUS_PARSE_ERROR = 5,
  /**
   * A relation tuple is malformed or unachievable as stated.
   */
  QUPAULI_STATUS_INVALID_RELATION = 6,
  /**
   * An element is outside the relevant span or group.
   */
  QUPAULI_STATUS_NOT_IN_SPAN = 7,
  /**
   * A search cap or size limit was exceeded.
   */
  QUPAULI_STATUS_TOO_LARGE = 8,
  /**
   * A NULL pointer was passed where an object was required.
   */
  QUPAULI_STATUS_NULL_POINTER = 9,
  /**
   * A caller-supplied buffer is too small; retry with the reported size.
   */
  QUPAULI_STATUS_BUFFER_TOO_SMALL = 10,
  /**
   * Input bytes are not valid UTF-8.
   */
  QUPAULI_STATUS_INVALID_UTF8 = 11,
  /**
   * Any other library error.
   */
  QUPAULI_STATUS_DOMAIN = 12,
  /**
   * An internal invariant failed (caught panic).
   */
  QUPAULI_STATUS_INTERNAL = 13,
};
#ifndef __cplusplus
typedef int32_t QupauliStatus;
#endif // __cplusplus

/**
 * Opaque handle to a list of Pauli elements sharing one `(d, n)`.
 */
typedef struct QupauliList QupauliList;

/**
 * Opaque handle to a Pauli element.
 */
typedef struct QupauliPauli QupauliPauli;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * A static, NUL-terminated description of a status code.
 */
const char *qupauli_status_message(QupauliStatus status);

/**
 * Create a Pauli from a phase and a length-`2n` exponent vector
 * (X-exponents first). On success `*out` owns the new handle.
 *
 * # Safety
 * `vec` must point to `2 * n` readable `uint64_t`s and `out` must be a
 * valid writable pointer.
 */
QupauliStatus qupauli_pauli_new(uint64_t d,
                                uintptr_t n,
                                uint64_t phase,
                                const uint64_t *vec,
                                struct QupauliPauli **out);

/**
 * Parse a Pauli from its text form `w<j> X<a>Z<b> ...`.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be writable.
 */
QupauliStatus qupauli_pauli_parse(const char *text,
                                  uint64_t d,
                                  uintptr_t n,
                                  struct QupauliPauli **out);

/**
 * Release a Pauli handle. NULL is ignored.
 *
 * # Safety
 * `p` must be a handle returned by this library, released at most once.
 */
void qupauli_pauli_free(struct QupauliPauli *p);

/**
 * Write the text form of `p` into `buf`; `*needed` receives the required
 * capacity including the NUL terminator.
 *
 * # Safety
 * `p` must be a live handle; `buf` (if non-NULL) must have capacity `cap`.
 */
QupauliStatus qupauli_pauli_format(const struct QupauliPauli *p,
                                   char *buf,
                                   uintptr_t cap,
                                   uintptr_t *needed);

/**
 * Product `a · b`.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
QupauliStatus qupauli_pauli_mul(const struct QupauliPauli *a,
                                const struct QupauliPauli *b,
                                struct QupauliPauli **out);

/**
 * Power `p^t` by the closed form.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
QupauliStatus qupauli_pauli_pow(const struct QupauliPauli *p,
                                uint64_t t,
                                struct QupauliPauli **out);

/**
 * Multiplicative order of `p`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
QupauliStatus qupauli_pauli_order(const struct QupauliPauli *p, uint64_t *out);

/**
 * Commutator phase `⟦a, b⟧` with `[a, b] = ω^c I`.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
QupauliStatus qupauli_comm_phase(const struct QupauliPauli *a,
                                 const struct QupauliPauli *b,
                                 uint64_t *out);

/**
 * Create an empty list of Paulis on `n` qudits of dimension `d`.
 *
 * # Safety
 * `out` must be writable.
 */
QupauliStatus qupauli_list_new(uint64_t d, uintptr_t n, struct QupauliList **out);

/**
 * Append a copy of `p` to the list.
 *
 * # Safety
 * `list` and `p` must be live handles.
 */
QupauliStatus qupauli_list_push(struct QupauliList *list, const struct QupauliPauli *p);

/**
 * Number of elements in the list.
 *
 * # Safety
 * `list` must be a live handle; `out` must be writable.
 */
QupauliStatus qupauli_list_len(const struct QupauliList *list, uintptr_t *out);

/**
 * Copy element `i` out of the list as a fresh handle.
 *
 * # Safety
 * `list` must be a live handle; `out` must be writable.
 */
QupauliStatus qupauli_list_get(const struct QupauliList *list,
                               uintptr_t i,
                               struct QupauliPauli **out);

/**
 * Release a list handle. NULL is ignored.
 *
 * # Safety
 * `list` must be a handle returned by this library, released at most once.
 */
void qupauli_list_free(struct QupauliList *list);

/**
 * The exponent `μ` with `I_S = ⟨ω^μ I⟩` for the group generated by `list`.
 *
 * # Safety
 * `list` must be a live, non-empty handle; `out` must be writable.
 */
QupauliStatus qupauli_identity_generator_mu(const struct QupauliList *list, uint64_t *out);

/**
 * Order of the group generated by `list`, split as
 * `order = hi·2^64 + lo`.
 *
 * # Safety
 * `list` must be a live, non-empty handle; `hi` and `lo` must be writable.
 */
QupauliStatus qupauli_subgroup_order(const struct QupauliList *list, uint64_t *hi, uint64_t *lo);

/**
 * Maximum size of a pairwise non-commuting set of single-qudit Paulis
 * (the Dedekind psi function of `d`).
 *
 * # Safety
 * `out` must be writable.
 */
QupauliStatus qupauli_max_noncomm_set_size(uint64_t d, uint64_t *out);

/**
 * Build CSS pairs with the prescribed commutator phases `f[0..k]` on the
 * minimum number of qudits; `*out_s` and `*out_t` receive the two lists.
 *
 * # Safety
 * `f` must point to `k` readable `uint64_t`s; `out_s` and `out_t` must be
 * writable.
 */
QupauliStatus qupauli_achieve_relation(uint64_t d,
                                       const uint64_t *f,
                                       uintptr_t k,
                                       struct QupauliList **out_s,
                                       struct QupauliList **out_t);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUPAULI_H */
