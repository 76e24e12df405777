#ifndef TOPGRAV_H
#define TOPGRAV_H

/* Generated by cbindgen from the topgrav-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible call.
typedef enum TgStatus {
  // Success.
  TG_STATUS_OK = 0,
  // A verification suite ran and found failures.
  TG_STATUS_VERIFY_FAILED = 1,
  // Invalid arguments (unknown model, bad genus, null pointer).
  TG_STATUS_USAGE = 2,
  // Internal failure; see `tg_last_error`.
  TG_STATUS_INTERNAL = 3,
} TgStatus;

// A computed free energy: model, genus (or 't Hooft order), and the exact
// polynomial. Opaque to C callers.
typedef struct TgFreeEnergy TgFreeEnergy;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Compute the closed free energy of `model` ("1d", "hmm", "2d") at
// `genus >= 2`, or the fat tower ("hmm-fat") at 't Hooft order
// `genus >= 2`. On success `*out` owns a handle to release with
// [`tg_free_energy_free`].
//
// # Safety
// `model` must be a valid NUL-terminated string and `out` a valid pointer.
enum TgStatus tg_free_energy_compute(const char *model, uint32_t genus, struct TgFreeEnergy **out);

// Canonical JSON of the polynomial. Free with [`tg_string_free`].
//
// # Safety
// `handle` must be a live pointer from [`tg_free_energy_compute`].
char *tg_free_energy_json(const struct TgFreeEnergy *handle);

// Plain-text rendering. Free with [`tg_string_free`].
//
// # Safety
// `handle` must be a live pointer from [`tg_free_energy_compute`].
char *tg_free_energy_text(const struct TgFreeEnergy *handle);

// Number of monomials.
//
// # Safety
// `handle` must be a live pointer from [`tg_free_energy_compute`].
uintptr_t tg_free_energy_num_terms(const struct TgFreeEnergy *handle);

// Genus (or 't Hooft order) the handle was computed at.
//
// # Safety
// `handle` must be a live pointer from [`tg_free_energy_compute`].
uint32_t tg_free_energy_genus(const struct TgFreeEnergy *handle);

// Evaluate the matrix order `N` at an integer, in place.
//
// # Safety
// `handle` must be a live pointer from [`tg_free_energy_compute`].
enum TgStatus tg_free_energy_eval_n(struct TgFreeEnergy *handle, int64_t n);

// Release a free-energy handle.
//
// # Safety
// `handle` must come from [`tg_free_energy_compute`] and not be used after.
void tg_free_energy_free(struct TgFreeEnergy *handle);

// Run a verification suite ("tables", "virasoro", "homogeneity", "curves",
// or "all"). Returns `TG_STATUS_OK` when every check passes and
// `TG_STATUS_VERIFY_FAILED` otherwise; the report text is available
// through `report_out` when non-null (free with [`tg_string_free`]).
//
// # Safety
// `suite` must be a valid NUL-terminated string; `report_out` may be null.
enum TgStatus tg_verify(const char *suite, char **report_out);

// Engine revision string (static; do not free).
const char *tg_engine_revision(void);

// Last error message on this thread, or null. Free with [`tg_string_free`].
char *tg_last_error(void);

// Release a string returned by this library.
//
// # Safety
// `s` must originate from this library and not be freed twice.
void tg_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TOPGRAV_H */
