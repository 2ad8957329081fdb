#ifndef SGDIM_H
#define SGDIM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SgStatus {
  SG_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  SG_STATUS_NULL_ARGUMENT = 1,
  /**
   * Text was not valid UTF-8 or not a valid game file.
   */
  SG_STATUS_PARSE = 2,
  SG_STATUS_INVALID_INPUT = 3,
  /**
   * Too many players for the requested operation.
   */
  SG_STATUS_TOO_LARGE = 4,
  SG_STATUS_PRECONDITION = 5,
  /**
   * Exact dimension search stopped before proving optimality; bounds are still filled in.
   */
  SG_STATUS_BUDGET_EXCEEDED = 6,
  /**
   * A panic was caught at the boundary.
   */
  SG_STATUS_INTERNAL = 7,
} SgStatus;

/**
 * Opaque handle to a simple game.
 */
typedef struct SgGame SgGame;

/**
 * Dimension bounds. `exact` is meaningful only when `exact_known` is true.
 */
typedef struct SgDimension {
  size_t lower;
  size_t upper;
  size_t exact;
  bool exact_known;
  size_t maximal_losing;
} SgDimension;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a game file (`sg 1` format) into a new game.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SgStatus sg_game_from_text(const char *text, struct SgGame **out);

/**
 * Builds a game on `n` players from `count` minimal winning coalition masks.
 *
 * # Safety
 * `masks` must point to `count` values (it may be null when `count` is 0)
 * and `out` must be a valid pointer.
 */
enum SgStatus sg_game_from_masks(size_t n,
                                 const uint64_t *masks,
                                 size_t count,
                                 struct SgGame **out);

/**
 * Builds a hierarchical game. `conjunctive` selects the conjunctive kind;
 * `sizes` and `thresholds` each hold `classes` entries.
 *
 * # Safety
 * `sizes` and `thresholds` must point to `classes` values and `out` must be
 * a valid pointer.
 */
enum SgStatus sg_game_from_hier(bool conjunctive,
                                const size_t *sizes,
                                const size_t *thresholds,
                                size_t classes,
                                struct SgGame **out);

/**
 * Releases a game. Null is ignored.
 *
 * # Safety
 * `game` must come from this library and not have been freed.
 */
void sg_game_free(struct SgGame *game);

/**
 * Number of players, or 0 for a null handle.
 *
 * # Safety
 * `game` must be null or a live handle.
 */
size_t sg_game_num_players(const struct SgGame *game);

/**
 * Number of minimal winning coalitions, or 0 for a null handle.
 *
 * # Safety
 * `game` must be null or a live handle.
 */
size_t sg_game_num_min_winning(const struct SgGame *game);

/**
 * Writes whether the coalition `mask` wins.
 *
 * # Safety
 * `game` must be a live handle and `out` a valid pointer.
 */
enum SgStatus sg_game_is_winning(const struct SgGame *game, uint64_t mask, bool *out);

/**
 * Decides weightedness. When the game is weighted and `rep` is not null, a
 * representation `[q; w1, ..., wn]` is written there; free it with
 * `sg_string_free`. Otherwise `*rep` is set to null.
 *
 * # Safety
 * `game` must be a live handle, `out` a valid pointer, `rep` null or valid.
 */
enum SgStatus sg_game_is_weighted(const struct SgGame *game, bool *out, char **rep);

/**
 * Dimension bounds and, within budget, the exact dimension. Pass 0 for
 * `max_losing` or `max_steps` to use the library defaults. Returns
 * `SG_STATUS_BUDGET_EXCEEDED` with bounds filled in when the search stops early.
 *
 * # Safety
 * `game` must be a live handle and `out` a valid pointer.
 */
enum SgStatus sg_game_dimension(const struct SgGame *game,
                                size_t max_losing,
                                uint64_t max_steps,
                                struct SgDimension *out);

/**
 * Creates the dual game as a new handle.
 *
 * # Safety
 * `game` must be a live handle and `out` a valid pointer.
 */
enum SgStatus sg_game_dual(const struct SgGame *game, struct SgGame **out);

/**
 * Serializes the game as `sg 1` text listing minimal winning coalitions.
 *
 * # Safety
 * `game` must be a live handle and `out` a valid pointer.
 */
enum SgStatus sg_game_to_text(const struct SgGame *game, char **out);

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *sg_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void sg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SGDIM_H */
