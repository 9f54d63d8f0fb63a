// Copyright 2026 The romlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to romlab. Every handle is opaque; functions that can fail
 * return a romlab_status and leave a message for romlab_last_error(). */

#ifndef ROMLAB_ROMLAB_H_
#define ROMLAB_ROMLAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ROMLAB_API __declspec(dllexport)
#else
#define ROMLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum romlab_status {
  ROMLAB_OK = 0,
  ROMLAB_E_INVALID_ARGUMENT = 1,
  ROMLAB_E_MALFORMED = 2,
  ROMLAB_E_STATE = 3,
  ROMLAB_E_CAPACITY = 4,
  ROMLAB_E_BUDGET = 5,
  ROMLAB_E_EVAL_FAILURE = 6,
  ROMLAB_E_CONFIG = 7,
  ROMLAB_E_IO = 8,
  ROMLAB_E_INTERNAL = 9
} romlab_status;

typedef struct romlab_report romlab_report;
typedef struct romlab_demo_result romlab_demo_result;
typedef struct romlab_bytes romlab_bytes;

ROMLAB_API const char* romlab_version(void);
/* Message for the last failure on this thread; empty after a success. */
ROMLAB_API const char* romlab_last_error(void);
ROMLAB_API const char* romlab_status_name(romlab_status s);

/* Pass ensemble < 0 for "not set". scheme may be NULL for the default. */
ROMLAB_API romlab_status romlab_run_game(const char* game, const char* scheme,
                                         const char* adversary, uint64_t k, uint64_t trials,
                                         uint64_t seed, int64_t ensemble, romlab_report** out);
ROMLAB_API romlab_status romlab_estimate_evasive(const char* relation, const char* attacker,
                                                 uint64_t k, uint64_t trials, uint64_t seed,
                                                 romlab_report** out);

ROMLAB_API const char* romlab_report_json(const romlab_report* r);
ROMLAB_API const char* romlab_report_game(const romlab_report* r);
ROMLAB_API uint64_t romlab_report_trials(const romlab_report* r);
ROMLAB_API uint64_t romlab_report_successes(const romlab_report* r);
ROMLAB_API double romlab_report_rate(const romlab_report* r);
/* Returns 0 when the report declares no bound. */
ROMLAB_API int romlab_report_bound(const romlab_report* r, double* bound);
/* Returns 0 and leaves *value alone when the counter is absent. */
ROMLAB_API int romlab_report_query_count(const romlab_report* r, const char* name,
                                         uint64_t* value);
ROMLAB_API romlab_status romlab_report_write(const romlab_report* r, const char* path);
ROMLAB_API void romlab_report_free(romlab_report* r);

/* ensemble < 0 and scheme NULL mean "all". Zero counts take the defaults. */
ROMLAB_API romlab_status romlab_run_demo(const char* name, int64_t ensemble, const char* scheme,
                                         uint64_t k, uint64_t trials, uint64_t rom_trials,
                                         uint64_t impl_trials, uint64_t seed,
                                         romlab_demo_result** out);
ROMLAB_API size_t romlab_demo_report_count(const romlab_demo_result* d);
/* Borrowed; valid until romlab_demo_free. */
ROMLAB_API const romlab_report* romlab_demo_report(const romlab_demo_result* d, size_t i);
/* Outcomes that should have held with probability one but did not. */
ROMLAB_API size_t romlab_demo_failure_count(const romlab_demo_result* d);
ROMLAB_API const char* romlab_demo_failure(const romlab_demo_result* d, size_t i);
/* All reports as one JSON array. */
ROMLAB_API const char* romlab_demo_json(const romlab_demo_result* d);
ROMLAB_API romlab_status romlab_demo_write(const romlab_demo_result* d, const char* path);
ROMLAB_API void romlab_demo_free(romlab_demo_result* d);

ROMLAB_API size_t romlab_demo_list_count(void);
ROMLAB_API const char* romlab_demo_list_name(size_t i);
ROMLAB_API const char* romlab_demo_list_claim(size_t i);
ROMLAB_API const char* romlab_demo_list_command(size_t i);

ROMLAB_API const char* romlab_registry_manifest(void);

ROMLAB_API const uint8_t* romlab_bytes_data(const romlab_bytes* b);
ROMLAB_API size_t romlab_bytes_size(const romlab_bytes* b);
ROMLAB_API void romlab_bytes_free(romlab_bytes* b);

/* Encoded program for "universal" or "ensemble:<i>" in the default
 * registry; anything else is ROMLAB_E_CONFIG. */
ROMLAB_API romlab_status romlab_program_named(const char* name, romlab_bytes** out);

ROMLAB_API romlab_status romlab_csproof_prove(const uint8_t* program, size_t program_len,
                                              const uint8_t* input, size_t input_len,
                                              uint64_t t, uint64_t k, uint64_t oracle_seed,
                                              romlab_bytes** proof);
/* *accept is set to 1 or 0; malformed proofs are rejections, not errors. */
ROMLAB_API romlab_status romlab_csproof_verify(const uint8_t* program, size_t program_len,
                                               const uint8_t* input, size_t input_len,
                                               uint64_t t, uint64_t k, uint64_t oracle_seed,
                                               const uint8_t* proof, size_t proof_len,
                                               int* accept);

#ifdef __cplusplus
}
#endif

#endif /* ROMLAB_ROMLAB_H_ */
