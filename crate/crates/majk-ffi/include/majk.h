#pragma once

/* Generated by cbindgen from majk-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum MajkStatus {
  MAJK_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  MAJK_STATUS_NULL_POINTER = 1,
  /**
   * Arguments violate a documented precondition.
   */
  MAJK_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A query set was empty or larger than the oracle's limit.
   */
  MAJK_STATUS_QUERY_REJECTED = 3,
  /**
   * The oracle contradicted itself (or the solver hit its step limit).
   */
  MAJK_STATUS_INCONSISTENT_ORACLE = 4,
  /**
   * Malformed JSON, bitstring, or schema violation.
   */
  MAJK_STATUS_PARSE_ERROR = 5,
  /**
   * The operation does not apply to this handle (e.g. completions of an
   * honest oracle).
   */
  MAJK_STATUS_UNSUPPORTED = 6,
  /**
   * An internal panic was caught at the boundary.
   */
  MAJK_STATUS_PANIC = 7,
} MajkStatus;

/**
 * Opaque depth-two circuit handle.
 */
typedef struct MajkCircuit MajkCircuit;

/**
 * Opaque oracle handle (honest or adversarial).
 */
typedef struct MajkOracle MajkOracle;

/**
 * What a solver run produced. `bound` is meaningful only when `has_bound`
 * is true (the fixed-threshold bound is undefined for k < 5).
 */
typedef struct MajkSolveReport {
  bool answer;
  uint64_t queries;
  bool has_bound;
  double bound;
} MajkSolveReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread, or NULL if no
 * call has failed yet. The pointer stays valid until the next failing call
 * on the same thread; do not free it.
 */
const char *majk_last_error(void);

/**
 * Library version as a static string; do not free.
 */
const char *majk_version(void);

/**
 * Releases a string returned through an out-pointer.
 *
 * # Safety
 * `s` must be a pointer previously returned by this library and not freed
 * since; NULL is a no-op.
 */
void majk_string_free(char *s);

/**
 * Builds the bounded-fan-in majority circuit for n inputs.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum MajkStatus majk_circuit_synthesize(uintptr_t n, struct MajkCircuit **out);

/**
 * Builds the fan-in-n baseline circuit.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum MajkStatus majk_circuit_trivial(uintptr_t n, struct MajkCircuit **out);

/**
 * Parses a circuit from its JSON representation.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum MajkStatus majk_circuit_from_json(const char *text, struct MajkCircuit **out);

/**
 * Serializes a circuit to JSON; release the string with majk_string_free.
 *
 * # Safety
 * `circuit` must be a live handle and `out` a valid pointer.
 */
enum MajkStatus majk_circuit_to_json(const struct MajkCircuit *circuit, char **out);

/**
 * Releases a circuit handle; NULL is a no-op.
 *
 * # Safety
 * `circuit` must be a live handle from this library or NULL.
 */
void majk_circuit_free(struct MajkCircuit *circuit);

/**
 * Number of circuit inputs, or 0 for NULL.
 *
 * # Safety
 * `circuit` must be a live handle or NULL.
 */
uintptr_t majk_circuit_input_len(const struct MajkCircuit *circuit);

/**
 * Number of first-level gates, or 0 for NULL.
 *
 * # Safety
 * `circuit` must be a live handle or NULL.
 */
uintptr_t majk_circuit_gate_count(const struct MajkCircuit *circuit);

/**
 * Largest fan-in anywhere in the circuit, or 0 for NULL.
 *
 * # Safety
 * `circuit` must be a live handle or NULL.
 */
uint64_t majk_circuit_fan_in(const struct MajkCircuit *circuit);

/**
 * Evaluates the circuit on a bitstring like "10110" (x0 leftmost).
 *
 * # Safety
 * `circuit` must be a live handle, `bits` a valid NUL-terminated string,
 * and `out` a valid pointer.
 */
enum MajkStatus majk_circuit_eval(const struct MajkCircuit *circuit, const char *bits, bool *out);

/**
 * Exhaustively compares the circuit against MAJ_n (refusing more than
 * `limit` inputs). On success `*out_equivalent` says whether they agree;
 * when they do not and `out_counterexample` is non-NULL, it receives the
 * lexicographically first differing input as a bitstring.
 *
 * # Safety
 * `circuit` must be a live handle, `out_equivalent` a valid pointer, and
 * `out_counterexample` a valid pointer or NULL.
 */
enum MajkStatus majk_circuit_verify(const struct MajkCircuit *circuit,
                                    uintptr_t limit,
                                    bool *out_equivalent,
                                    char **out_counterexample);

/**
 * Boundary edges of MAJ_n on the hypercube (n <= 20).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum MajkStatus majk_majority_boundary_edges(uintptr_t n, uint64_t *out);

/**
 * Creates an honest oracle over the hidden bitstring, answering queries
 * about sets of at most k indices.
 *
 * # Safety
 * `bits` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum MajkStatus majk_oracle_honest(const char *bits, uintptr_t k, struct MajkOracle **out);

/**
 * Creates the adversarial oracle over n bits with set-size limit k.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum MajkStatus majk_oracle_adversary(uintptr_t n, uintptr_t k, struct MajkOracle **out);

/**
 * Releases an oracle handle; NULL is a no-op.
 *
 * # Safety
 * `oracle` must be a live handle from this library or NULL.
 */
void majk_oracle_free(struct MajkOracle *oracle);

/**
 * Number of oracle input bits, or 0 for NULL.
 *
 * # Safety
 * `oracle` must be a live handle or NULL.
 */
uintptr_t majk_oracle_input_len(const struct MajkOracle *oracle);

/**
 * Largest accepted query set size, or 0 for NULL.
 *
 * # Safety
 * `oracle` must be a live handle or NULL.
 */
uintptr_t majk_oracle_set_limit(const struct MajkOracle *oracle);

/**
 * Number of answered queries so far, or 0 for NULL.
 *
 * # Safety
 * `oracle` must be a live handle or NULL.
 */
uintptr_t majk_oracle_query_count(const struct MajkOracle *oracle);

/**
 * Asks for the majority of the given index set (duplicates rejected).
 *
 * # Safety
 * `oracle` must be a live handle, `indices` must point to `len` readable
 * elements (or be NULL when `len` is 0), and `out` must be a valid pointer.
 */
enum MajkStatus majk_oracle_query_fixed(struct MajkOracle *oracle,
                                        const uintptr_t *indices,
                                        uintptr_t len,
                                        bool *out);

/**
 * Asks whether the index set holds at least `threshold` ones.
 *
 * # Safety
 * Same contract as [`majk_oracle_query_fixed`].
 */
enum MajkStatus majk_oracle_query_adjustable(struct MajkOracle *oracle,
                                             const uintptr_t *indices,
                                             uintptr_t len,
                                             int64_t threshold,
                                             bool *out);

/**
 * For adversarial oracles: the two completions (committed bits extended by
 * all zeros / all ones) as bitstrings. Honest oracles return UNSUPPORTED.
 *
 * # Safety
 * `oracle` must be a live handle; `out_zeros` and `out_ones` must be valid
 * pointers.
 */
enum MajkStatus majk_oracle_completions(const struct MajkOracle *oracle,
                                        char **out_zeros,
                                        char **out_ones);

/**
 * For adversarial oracles: whether the overall majority is still
 * undetermined. Honest oracles return UNSUPPORTED.
 *
 * # Safety
 * `oracle` must be a live handle and `out` a valid pointer.
 */
enum MajkStatus majk_oracle_is_ambiguous(const struct MajkOracle *oracle, bool *out);

/**
 * Runs the fixed-threshold solver over the oracle's full index range,
 * using the oracle's own n and k.
 *
 * # Safety
 * `oracle` must be a live handle and `out` a valid pointer.
 */
enum MajkStatus majk_solve_fixed(struct MajkOracle *oracle, struct MajkSolveReport *out);

/**
 * Runs the adjustable-threshold solver, as [`majk_solve_fixed`].
 *
 * # Safety
 * `oracle` must be a live handle and `out` a valid pointer.
 */
enum MajkStatus majk_solve_adjustable(struct MajkOracle *oracle, struct MajkSolveReport *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus
