#ifndef BIDGAME_H
#define BIDGAME_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stdint.h>

typedef enum BgStatus {
  BG_STATUS_OK = 0,
  BG_STATUS_NULL_ARGUMENT = 1,
  BG_STATUS_INVALID_UTF8 = 2,
  BG_STATUS_SYNTAX = 3,
  BG_STATUS_BOUND_EXCEEDED = 4,
  BG_STATUS_INVALID_STATE = 5,
  BG_STATUS_UNKNOWN_GAME = 6,
  BG_STATUS_INTERNAL = 7,
  BG_STATUS_PANIC = 8,
} BgStatus;

typedef enum BgPlayer {
  BG_PLAYER_LEFT = 0,
  BG_PLAYER_RIGHT = 1,
} BgPlayer;

/**
 * Opaque engine handle.
 */
typedef struct BgEngine BgEngine;

/**
 * Creates an engine. Never returns null.
 */
struct BgEngine *bg_engine_new(void);

/**
 * Releases an engine. Null is ignored.
 *
 * # Safety
 * `engine` must come from `bg_engine_new` and not be used afterwards.
 */
void bg_engine_free(struct BgEngine *engine);

/**
 * Parses game notation and interns it.
 *
 * # Safety
 * `engine` must be live, `text` a NUL-terminated string and `out` writable.
 */
enum BgStatus bg_parse(const struct BgEngine *engine, const char *text, uint32_t *out);

/**
 * Prints a game, with named shorthands or as a fully literal form.
 *
 * # Safety
 * `engine` must be live and `out` writable.
 */
enum BgStatus bg_print(const struct BgEngine *engine, uint32_t id, bool literal, char **out);

/**
 * Disjunctive sum.
 *
 * # Safety
 * `engine` must be live and `out` writable.
 */
enum BgStatus bg_sum(const struct BgEngine *engine, uint32_t a, uint32_t b, uint32_t *out);

/**
 * Conjugate (negative) form.
 *
 * # Safety
 * `engine` must be live and `out` writable.
 */
enum BgStatus bg_conjugate(const struct BgEngine *engine, uint32_t id, uint32_t *out);

/**
 * Winner of `(id, state)` under optimal play.
 *
 * # Safety
 * `engine` must be live and `out` writable.
 */
enum BgStatus bg_partial_outcome(const struct BgEngine *engine,
                                 uint32_t id,
                                 uint32_t tb,
                                 uint32_t left_budget,
                                 enum BgPlayer marker,
                                 enum BgPlayer *out);

/**
 * Outcome vector as a string of `L`/`R`, ordered `tb^..0^` then `tb..0`.
 *
 * # Safety
 * `engine` must be live and `out` writable.
 */
enum BgStatus bg_outcome_vector(const struct BgEngine *engine,
                                uint32_t id,
                                uint32_t tb,
                                char **out);

/**
 * Classification against 0 as JSON (the `classification` object of the HTTP analysis).
 *
 * # Safety
 * `engine` must be live and `out` writable.
 */
enum BgStatus bg_classify_json(const struct BgEngine *engine, uint32_t id, uint32_t tb, char **out);

/**
 * Whether `player` keeps its optimal result while bidding 0 throughout.
 *
 * # Safety
 * `engine` must be live and `out` writable.
 */
enum BgStatus bg_zero_bid_optimal(const struct BgEngine *engine,
                                  uint32_t id,
                                  uint32_t tb,
                                  uint32_t left_budget,
                                  enum BgPlayer marker,
                                  enum BgPlayer player,
                                  bool *out);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void bg_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null after a success.
 * Valid until the next call on the same thread.
 */
const char *bg_last_error(void);

#endif  /* BIDGAME_H */
