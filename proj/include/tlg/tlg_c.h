/* SPDX-License-Identifier: Apache-2.0
 * Copyright (c) 2026 tlg authors
 *
 * C interface to the tlg library. All state lives behind opaque handles;
 * every call returns a status code (TLG_OK on success). Strings returned
 * through a context stay valid until the next call on that context.
 */
#ifndef TLG_C_H
#define TLG_C_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* keep in sync with tlg::Err */
enum tlg_status {
  TLG_OK = 0,
  TLG_CONFIG_INVALID = 1,
  TLG_SIGNATURE_MISMATCH = 2,
  TLG_POLE_AT_SPECIAL_VALUE = 3,
  TLG_INDEX_OUT_OF_RANGE = 4,
  TLG_INCONSISTENT_CYCLE = 5,
  TLG_STATE_SPACE_TOO_LARGE = 6,
  TLG_COMPONENT_CAP_EXCEEDED = 7,
  TLG_WINDOW_DOES_NOT_FIT = 8,
  TLG_MISMATCH_AT_GRADE = 9,
  TLG_ORACLE_MISMATCH = 10,
  TLG_BACKEND_MISMATCH = 11,
  TLG_INTERNAL = 12
};

typedef struct tlg_context tlg_context;
typedef struct tlg_lattice tlg_lattice;

const char* tlg_version(void);
const char* tlg_status_name(int status);
/* process exit code for a status: 0 ok, 2 config, 3 capacity, 4 invariant, 5 oracle */
int tlg_exit_code(int status);

tlg_context* tlg_context_new(void);
void tlg_context_free(tlg_context* ctx);
/* JSON error report of the last failed call: {"error", "status", "exit_code", "message"} */
const char* tlg_last_error(const tlg_context* ctx);

/* Run a command ("tl.gram", "lattice.kernel", ...) on a JSON request. */
int tlg_run(tlg_context* ctx, const char* command, const char* request_json);
const char* tlg_result_json(const tlg_context* ctx);
const char* tlg_result_csv(const tlg_context* ctx); /* "" when the command has no table */
/* newline-separated command names */
const char* tlg_commands(tlg_context* ctx);

/* lattices: "torus:3x3", "disk:2x3", "tri:3x3" */
int tlg_lattice_new(tlg_context* ctx, const char* spec, tlg_lattice** out);
void tlg_lattice_free(tlg_lattice* lat);
int tlg_lattice_sites(const tlg_lattice* lat);
int tlg_lattice_describe(tlg_context* ctx, const tlg_lattice* lat, const char** out);
/* configuration given as hex, bit i = spin of site i (1 = |+>) */
int tlg_loop_count(tlg_context* ctx, const tlg_lattice* lat, const char* config_hex, int* out);
int tlg_walls(tlg_context* ctx, const tlg_lattice* lat, const char* config_hex, const char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* TLG_C_H */
