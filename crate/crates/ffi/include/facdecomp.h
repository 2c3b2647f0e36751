#ifndef FACDECOMP_H
#define FACDECOMP_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum FdStatus {
  FD_STATUS_OK = 0,
  FD_STATUS_NULL_POINTER = 1,
  FD_STATUS_INVALID_UTF8 = 2,
  FD_STATUS_BAD_SPEC = 3,
  FD_STATUS_WINDOW_TOO_SMALL = 4,
  FD_STATUS_OUT_OF_RANGE = 5,
  FD_STATUS_PRECONDITION = 6,
  FD_STATUS_BUFFER_TOO_SMALL = 7,
  FD_STATUS_PANIC = 8,
} FdStatus;

/**
 * Factor index of a word's window.
 */
typedef struct FdIndex FdIndex;

/**
 * A parsed word specification.
 */
typedef struct FdWord FdWord;

/**
 * Coverage summary of a decomposition.
 */
typedef struct FdCover {
  uint64_t covered;
  uint64_t total;
  uint64_t s_max;
  uint64_t t_max;
} FdCover;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to fit) and returns its full length.
 *
 * # Safety
 * `buf` must be null or point to `buf_len` writable bytes.
 */
size_t fd_last_error(char *buf, size_t buf_len);

/**
 * Parses a word specification such as `tm`, `fib` or `sturm:1,(2)`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum FdStatus fd_word_new(const char *spec, struct FdWord **out);

/**
 * # Safety
 * `word` must be null or a handle from [`fd_word_new`] not yet freed.
 */
void fd_word_free(struct FdWord *word);

/**
 * Writes the first `n` letters of the word as characters.
 *
 * # Safety
 * `word` must be a live handle; `buf` must point to `buf_len` writable bytes;
 * `written` may be null.
 */
enum FdStatus fd_word_prefix(const struct FdWord *word,
                             size_t n,
                             char *buf,
                             size_t buf_len,
                             size_t *written);

/**
 * Indexes the first `window` letters for factor lengths up to `n_max`.
 *
 * # Safety
 * `word` must be a live handle; `out` must be a valid pointer.
 */
enum FdStatus fd_index_new(const struct FdWord *word,
                           size_t window,
                           size_t n_max,
                           struct FdIndex **out);

/**
 * # Safety
 * `index` must be null or a handle from [`fd_index_new`] not yet freed.
 */
void fd_index_free(struct FdIndex *index);

/**
 * `p(n)`, the number of distinct factors of length `n`.
 *
 * # Safety
 * `index` must be a live handle; `out` must be a valid pointer.
 */
enum FdStatus fd_index_complexity(const struct FdIndex *index, size_t n, uint64_t *out);

/**
 * `g(n) = p(1) + ... + p(n)`.
 *
 * # Safety
 * `index` must be a live handle; `out` must be a valid pointer.
 */
enum FdStatus fd_index_accumulative(const struct FdIndex *index, size_t n, uint64_t *out);

/**
 * The slopes `C = max ceil(p(n)/n)` and `K = max ceil(g(n)/n)`.
 *
 * # Safety
 * `index` must be a live handle; `c` and `k` must be valid pointers.
 */
enum FdStatus fd_index_slopes(const struct FdIndex *index, uint64_t *c, uint64_t *k);

/**
 * Whether `factor` (written in the word's alphabet) occurs in the window.
 *
 * # Safety
 * `index` must be a live handle; `factor` a NUL-terminated string; `out` valid.
 */
enum FdStatus fd_index_contains(const struct FdIndex *index, const char *factor, bool *out);

/**
 * Builds the marker decomposition of the indexed word and reports its coverage.
 *
 * # Safety
 * `index` must be a live handle; `out` must be a valid pointer.
 */
enum FdStatus fd_marker_cover(const struct FdIndex *index, struct FdCover *out);

/**
 * Coverage of the indexed word by the Thue–Morse suffix/prefix sets.
 *
 * # Safety
 * `index` must be a live handle; `out` must be a valid pointer.
 */
enum FdStatus fd_thue_morse_cover(const struct FdIndex *index, struct FdCover *out);

/**
 * Minimal period of a word given as characters `'0'..'9'`/`'a'..'z'`; the
 * letters are only compared, so any single-byte characters work.
 *
 * # Safety
 * `word` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum FdStatus fd_minimal_period(const char *word, size_t *out);

/**
 * Number of pairs `(k, l)` with `k >= 3`, `l >= sqrt(n)` and `|w_kl| <= n`.
 */
uint64_t fd_count_e(uint64_t n);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FACDECOMP_H */
