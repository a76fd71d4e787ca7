#ifndef TCLOSE_H
#define TCLOSE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TcloseStatus {
  TCLOSE_STATUS_OK = 0,
  TCLOSE_STATUS_NULL_POINTER = 1,
  TCLOSE_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed ring file, expression or unknown name.
   */
  TCLOSE_STATUS_PARSE = 3,
  TCLOSE_STATUS_INVALID_ARGUMENT = 4,
  TCLOSE_STATUS_BUDGET_EXCEEDED = 5,
  /**
   * An audit or axiom check failed.
   */
  TCLOSE_STATUS_ASSERTION_FAILED = 6,
  TCLOSE_STATUS_INTERNAL = 7,
} TcloseStatus;

typedef enum TcloseVerdict {
  TCLOSE_VERDICT_IN = 0,
  TCLOSE_VERDICT_OUT = 1,
  TCLOSE_VERDICT_UNKNOWN = 2,
  TCLOSE_VERDICT_EVIDENCE_IN = 3,
} TcloseVerdict;

/**
 * A parsed ring file with its named ideals.
 */
typedef struct TcloseSession TcloseSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *tclose_version(void);

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *tclose_last_error(void);

/**
 * Parses a ring file held in `source`.
 *
 * # Safety
 * `source` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum TcloseStatus tclose_session_new(const char *source, struct TcloseSession **out);

/**
 * Releases a session. Null is ignored.
 *
 * # Safety
 * `session` must come from [`tclose_session_new`] and not be used again.
 */
void tclose_session_free(struct TcloseSession *session);

/**
 * Membership of `elem` in the closure of `ideal` (a name or an inline
 * list). `closure` is `identity`, `frobenius`, `integral` or `newton`;
 * null means `identity`.
 *
 * # Safety
 * Pointers must be valid; string arguments NUL-terminated.
 */
enum TcloseStatus tclose_member(const struct TcloseSession *session,
                                const char *ideal,
                                const char *elem,
                                const char *closure,
                                enum TcloseVerdict *out);

/**
 * Reduced Gröbner basis of `ideal` as a JSON array of strings.
 *
 * # Safety
 * Pointers must be valid; release `*out` with [`tclose_string_free`].
 */
enum TcloseStatus tclose_groebner_basis(const struct TcloseSession *session,
                                        const char *ideal,
                                        char **out);

/**
 * Runs a command-line invocation in process. `argv` holds `argc`
 * arguments without the program name. The report (stdout, or the error
 * text when stdout is empty) goes to `*out` and the exit code to
 * `*exit_code`.
 *
 * # Safety
 * `argv` must point to `argc` valid NUL-terminated strings; release `*out`
 * with [`tclose_string_free`].
 */
enum TcloseStatus tclose_run(int argc, const char *const *argv, char **out, int *exit_code);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void tclose_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TCLOSE_H */
