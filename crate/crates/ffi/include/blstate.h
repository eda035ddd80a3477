#ifndef BLSTATE_H
#define BLSTATE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum BlsStatus {
  BLS_STATUS_OK = 0,
  BLS_STATUS_NULL_POINTER = 1,
  BLS_STATUS_INVALID_UTF8 = 2,
  // Malformed specifier or document text.
  BLS_STATUS_PARSE = 3,
  // Tables or maps that violate an axiom.
  BLS_STATUS_VALIDATION = 4,
  BLS_STATUS_NOT_FOUND = 5,
  BLS_STATUS_OUT_OF_RANGE = 6,
  BLS_STATUS_PANIC = 7,
} BlsStatus;

typedef enum BlsOperation {
  BLS_OPERATION_MEET = 0,
  BLS_OPERATION_JOIN = 1,
  BLS_OPERATION_PROD = 2,
  BLS_OPERATION_IMPL = 3,
} BlsOperation;

// Operator classes, strongest last. `NotState` marks a map that fails the
// state-operator axioms.
typedef enum BlsClass {
  BLS_CLASS_NOT_STATE = 0,
  BLS_CLASS_STATE = 1,
  BLS_CLASS_STRONG = 2,
  BLS_CLASS_MORPHISM = 3,
  BLS_CLASS_ENDOMORPHISM = 4,
} BlsClass;

// A verified algebra with its named operators and extremal states.
typedef struct BlsAlgebra BlsAlgebra;

// A map checked against the operator axioms of one algebra.
typedef struct BlsOperator BlsOperator;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a built-in algebra such as `mv-chain(3)` or `four-element`.
//
// # Safety
// `spec` must be a NUL-terminated string and `out` a valid pointer.
enum BlsStatus bls_algebra_from_spec(const char *spec, struct BlsAlgebra **out);

// Parses and verifies a JSON algebra document.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum BlsStatus bls_algebra_from_document(const char *json, struct BlsAlgebra **out);

// # Safety
// `a` must come from this library and not be freed twice. Null is ignored.
void bls_algebra_free(struct BlsAlgebra *a);

// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum BlsStatus bls_algebra_size(const struct BlsAlgebra *a, size_t *out);

// Looks up an element index by label.
//
// # Safety
// `a` must be a live handle, `label` NUL-terminated, `out` valid.
enum BlsStatus bls_algebra_index_of(const struct BlsAlgebra *a, const char *label, size_t *out);

// The label of element `x`, released with [`bls_string_free`].
//
// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum BlsStatus bls_algebra_label(const struct BlsAlgebra *a, size_t x, char **out);

// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum BlsStatus bls_algebra_apply(const struct BlsAlgebra *a,
                                 enum BlsOperation op,
                                 size_t x,
                                 size_t y,
                                 size_t *out);

// Whether `x = x--` holds for every element.
//
// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum BlsStatus bls_algebra_is_mv(const struct BlsAlgebra *a, bool *out);

// The canonical JSON document, released with [`bls_string_free`].
//
// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum BlsStatus bls_algebra_to_document(const struct BlsAlgebra *a, char **out);

// Number of operators of a class on the algebra.
//
// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum BlsStatus bls_operator_count(const struct BlsAlgebra *a, enum BlsClass class_, size_t *out);

// Checks the map `x -> map[x]` against the operator axioms. The handle is
// returned even when the map is not a state-operator; its class then reads
// `NotState`.
//
// # Safety
// `map` must point to `len` elements; `a` live; `out` valid.
enum BlsStatus bls_operator_new(const struct BlsAlgebra *a,
                                const size_t *map,
                                size_t len,
                                struct BlsOperator **out);

// An operator that came with the algebra, such as `sigma` on `four-element`.
//
// # Safety
// `a` live, `name` NUL-terminated, `out` valid.
enum BlsStatus bls_operator_named(const struct BlsAlgebra *a,
                                  const char *name,
                                  struct BlsOperator **out);

// # Safety
// `op` must come from this library and not be freed twice. Null is ignored.
void bls_operator_free(struct BlsOperator *op);

// # Safety
// `op` must be a live handle and `out` a valid pointer.
enum BlsStatus bls_operator_class(const struct BlsOperator *op, enum BlsClass *out);

// # Safety
// `op` must be a live handle and `out` a valid pointer.
enum BlsStatus bls_operator_apply(const struct BlsOperator *op, size_t x, size_t *out);

// The first violated axiom of a rejected map, as `name (formula) at (x, ...)`
// with element indices; an empty string for a state-operator.
//
// # Safety
// `op` must be a live handle and `out` a valid pointer.
enum BlsStatus bls_operator_violation(const struct BlsOperator *op, char **out);

// Number of extremal states. Computed on first use and cached in the handle.
//
// # Safety
// `a` must be a live handle not shared with another thread; `out` valid.
enum BlsStatus bls_extremal_state_count(struct BlsAlgebra *a, size_t *out);

// Value of extremal state `k` at element `x`, as `p/q` or `p`.
//
// # Safety
// `a` must be a live handle not shared with another thread; `out` valid.
enum BlsStatus bls_extremal_state_value(struct BlsAlgebra *a, size_t k, size_t x, char **out);

// # Safety
// `s` must come from this library and not be freed twice. Null is ignored.
void bls_string_free(char *s);

// Message for the last non-`Ok` status on this thread. The pointer stays
// valid until the next call into the library on the same thread.
const char *bls_last_error(void);

// Static description of a status code.
const char *bls_status_name(enum BlsStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BLSTATE_H */
