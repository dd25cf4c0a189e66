#ifndef BRAIDCONG_H
#define BRAIDCONG_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes. Zero is success.
typedef enum BcStatus {
  BC_STATUS_OK = 0,
  BC_STATUS_NULL_POINTER = 1,
  BC_STATUS_INVALID_UTF8 = 2,
  BC_STATUS_SYNTAX = 3,
  BC_STATUS_INDEX_OUT_OF_RANGE = 4,
  BC_STATUS_STRAND_MISMATCH = 5,
  BC_STATUS_INVALID_MODULUS = 6,
  BC_STATUS_VIRTUAL_CROSSING = 7,
  BC_STATUS_BUDGET_EXCEEDED = 8,
  BC_STATUS_NOT_IN_KERNEL = 9,
  BC_STATUS_INVALID_ARGUMENT = 10,
  BC_STATUS_INTERNAL = 11,
} BcStatus;

// Generator set for image enumeration.
typedef enum BcImageGens {
  BC_IMAGE_GENS_VIRTUAL_BURAU = 0,
  BC_IMAGE_GENS_BURAU_MINUS = 1,
} BcImageGens;

// Opaque braid word.
typedef struct BcWord BcWord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *bc_version(void);

// Message for the last failed call on this thread, empty after a success.
// Valid until the next call on the same thread.
const char *bc_last_error(void);

// Parses `text` into a word on `strands` strands; `strands == 0` infers the
// count from the largest index.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum BcStatus bc_word_parse(const char *text, uintptr_t strands, struct BcWord **out);

// # Safety
// `word` must come from `bc_word_parse` and not be freed twice. Null is ignored.
void bc_word_free(struct BcWord *word);

// # Safety
// `word` must be a live handle or null (returns 0).
uintptr_t bc_word_strands(const struct BcWord *word);

// # Safety
// `word` must be a live handle or null (returns 0).
uintptr_t bc_word_len(const struct BcWord *word);

// Canonical text of the word, or null if `word` is null.
//
// # Safety
// `word` must be a live handle or null.
char *bc_word_to_string(const struct BcWord *word);

// Whether the word lies in the level-`m` congruence subgroup.
//
// # Safety
// `word` must be a live handle and `out` a valid pointer.
enum BcStatus bc_in_congruence(const struct BcWord *word, uint64_t m, bool *out);

// Integer matrix of the word as JSON (`{"n":..,"mod":null,"rows":[[..]]}`).
//
// # Safety
// `word` must be a live handle and `out` a valid pointer. The string is
// released with `bc_string_free`.
enum BcStatus bc_rho_v_json(const struct BcWord *word, char **out);

// Order of the image of the n-strand generators modulo `m`, enumerating at
// most `budget` elements.
//
// # Safety
// `out` must be a valid pointer.
enum BcStatus bc_image_order(uintptr_t n,
                             uint64_t m,
                             enum BcImageGens gens,
                             uint64_t budget,
                             uint64_t *out);

// Relator certificate for a two-strand word in the kernel of q_m, as JSON.
//
// # Safety
// `word` must be a live handle and `out` a valid pointer. The string is
// released with `bc_string_free`.
enum BcStatus bc_certify(const struct BcWord *word, uint64_t m, char **out);

// Independently checks a certificate given as JSON.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum BcStatus bc_check_cert(const char *json, bool *out);

// # Safety
// `s` must come from this library and not be freed twice. Null is ignored.
void bc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BRAIDCONG_H */
