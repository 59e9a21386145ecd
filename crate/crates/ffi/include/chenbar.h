/* C interface to the chenbar exact-arithmetic library. */

#ifndef CHENBAR_H
#define CHENBAR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every `chb_*` call.
 */
typedef enum ChbStatus {
  /**
   * Success.
   */
  ChbStatus_Ok = 0,
  /**
   * A required pointer argument was null.
   */
  ChbStatus_NullArgument = 1,
  /**
   * An input string was not valid UTF-8.
   */
  ChbStatus_InvalidUtf8 = 2,
  /**
   * Connection file, path word or parameter failed to parse.
   */
  ChbStatus_ParseError = 3,
  /**
   * The operation requires a flat connection and A∧A ≠ 0.
   */
  ChbStatus_NotFlat = 4,
  /**
   * Parameters were out of range.
   */
  ChbStatus_InvalidArgument = 5,
  /**
   * The verifier found a theorem-equivalence counterexample.
   */
  ChbStatus_Disagreement = 6,
} ChbStatus;

/**
 * Opaque handle to a parsed, validated connection.
 */
typedef struct ChbConnection ChbConnection;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The last error message for this thread, or null when the previous
 * call succeeded. The caller owns the string; free it with
 * [`chb_string_free`].
 */
char *chb_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 */
void chb_string_free(char *s);

/**
 * Parses a connection file (the `torus`/`blocks`/`entry` grammar) into
 * a handle. On success the handle must be freed with
 * [`chb_connection_free`].
 */
enum ChbStatus chb_connection_parse(const char *text, struct ChbConnection **out);

/**
 * Releases a connection handle. Null is ignored.
 */
void chb_connection_free(struct ChbConnection *connection);

/**
 * Renders the canonical connection-file text for a handle.
 */
enum ChbStatus chb_connection_render(const struct ChbConnection *connection, char **out);

/**
 * Writes 1 to `flat` when A∧A = 0, else 0 (with the first offending
 * entry described by [`chb_last_error_message`]).
 */
enum ChbStatus chb_connection_is_flat(const struct ChbConnection *connection, bool *flat);

/**
 * Simpson-side classification of a flat connection: whether the
 * underlying holomorphic bundle is trivial (A^{0,1} = 0) and whether
 * the Higgs field is zero (A^{1,0} = 0).
 */
enum ChbStatus chb_connection_classify(const struct ChbConnection *connection,
                                       bool *bundle_trivial,
                                       bool *higgs_zero);

/**
 * Chen-series monodromy along a path word (`a1 b1 a1^-1 ...`),
 * rendered as one `[a, b, ...]` row per line in the exact scalar
 * grammar.
 */
enum ChbStatus chb_connection_monodromy(const struct ChbConnection *connection,
                                        const char *path,
                                        char **out);

/**
 * Verifies both theorem equivalences on one connection. `agree`
 * receives the verdict; the full report text goes to `out`. A
 * disagreement is reported through the status as well.
 */
enum ChbStatus chb_connection_verify(const struct ChbConnection *connection,
                                     bool *agree,
                                     char **out);

/**
 * The echelon bases of the ideals I and Ī in ℂπ₁/J^{s+1}, as the CLI
 * prints them.
 */
enum ChbStatus chb_ideals_report(uint32_t g, uint32_t s, char **out);

/**
 * One filtration step (`label` is "F", "Fbar" or "W") on the invariant
 * classes and its dual on ℂπ₁/J^{s+1}.
 */
enum ChbStatus chb_filtration_report(uint32_t g,
                                     uint32_t s,
                                     const char *label,
                                     int64_t level,
                                     char **out);

/**
 * Runs the randomized theorem verifier; deterministic for a fixed
 * seed. `agree` receives the verdict and `out` the full report,
 * including a counterexample certificate on disagreement.
 */
enum ChbStatus chb_verify_random(uint64_t trials,
                                 uint64_t seed,
                                 uint32_t g_max,
                                 uint32_t s_max,
                                 uint32_t r_max,
                                 bool *agree,
                                 char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CHENBAR_H */
