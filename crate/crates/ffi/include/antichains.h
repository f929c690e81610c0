/* C interface to the antichains library. */

#ifndef ANTICHAINS_H
#define ANTICHAINS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a C ABI call.
 */
typedef enum AcStatus {
  /**
   * Success.
   */
  AC_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  AC_NULL_POINTER = 1,
  /**
   * Arguments violate a precondition (range, universe mismatch, ...).
   */
  AC_INVALID_ARGUMENT = 2,
  /**
   * The antichain text could not be parsed.
   */
  AC_PARSE_ERROR = 3,
  /**
   * The operation is not supported at the requested size.
   */
  AC_UNSUPPORTED = 4,
} AcStatus;

/**
 * An antichain over a fixed universe. Opaque; create with
 * `ac_antichain_parse`, release with `ac_antichain_free`.
 */
typedef struct AcAntichain AcAntichain;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread. The pointer is
 * valid until the next library call on the same thread; do not free it.
 */
const char *ac_last_error(void);

/**
 * Parses an antichain such as `{{1,2},{3}}` over a universe of `n` elements
 * (0 <= n <= 8). `{}` is the empty antichain, `{{}}` the antichain of the
 * empty set. On success stores a handle in `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum AcStatus ac_antichain_parse(uint32_t n, const char *text, struct AcAntichain **out);

/**
 * Releases a handle returned by this library. NULL is ignored.
 *
 * # Safety
 * `a` must be NULL or a pointer previously returned by this library and not
 * yet freed.
 */
void ac_antichain_free(struct AcAntichain *a);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must be NULL or a string previously returned by this library and not
 * yet freed.
 */
void ac_string_free(char *s);

/**
 * Formats an antichain in the same syntax `ac_antichain_parse` accepts.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum AcStatus ac_antichain_format(const struct AcAntichain *a, char **out);

/**
 * Stores the order-reversing dual of `a` in `*out`.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum AcStatus ac_antichain_dual(const struct AcAntichain *a, struct AcAntichain **out);

/**
 * Sets `*out` to 1 if `a` is dominated by `b`, else 0. Both antichains must
 * share a universe.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` a valid pointer.
 */
enum AcStatus ac_antichain_leq(const struct AcAntichain *a,
                               const struct AcAntichain *b,
                               int32_t *out);

/**
 * Stores the lattice meet of `a` and `b` in `*out`.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` a valid pointer.
 */
enum AcStatus ac_antichain_meet(const struct AcAntichain *a,
                                const struct AcAntichain *b,
                                struct AcAntichain **out);

/**
 * Stores the lattice join of `a` and `b` in `*out`.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` a valid pointer.
 */
enum AcStatus ac_antichain_join(const struct AcAntichain *a,
                                const struct AcAntichain *b,
                                struct AcAntichain **out);

/**
 * Stores the exact size of the interval `[bottom, top]` in `*out` as a
 * decimal string; `"0"` when `bottom` is not dominated by `top`.
 *
 * # Safety
 * `bottom` and `top` must be live handles and `out` a valid pointer.
 */
enum AcStatus ac_interval_size(const struct AcAntichain *bottom,
                               const struct AcAntichain *top,
                               char **out);

/**
 * Stores the Dedekind number |A_n| in `*out` as a decimal string, for
 * 0 <= n <= 8 (enumeration up to n = 5, the symmetry-reduced pair
 * coefficient recursion above). `threads` 0 means one worker. Beware:
 * n = 8 runs for hours.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum AcStatus ac_dedekind(uint32_t n, uint32_t threads, char **out);

/**
 * Stores the P-coefficient for `k` coordinates at the pair
 * `(rho1, rho2)` in `*out` as a decimal string. `k = 2` uses the closed
 * form; other small `k` fall back to the definitional search.
 *
 * # Safety
 * `rho1` and `rho2` must be live handles and `out` a valid pointer.
 */
enum AcStatus ac_pcoeff(const struct AcAntichain *rho1,
                        const struct AcAntichain *rho2,
                        uint32_t k,
                        char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ANTICHAINS_H */
