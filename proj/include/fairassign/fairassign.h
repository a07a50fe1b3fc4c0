// Copyright 2026 The fairassign Authors
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

#ifndef FAIRASSIGN_FAIRASSIGN_H_
#define FAIRASSIGN_FAIRASSIGN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FAIRASSIGN_BUILDING)
#    define FA_API __declspec(dllexport)
#  else
#    define FA_API __declspec(dllimport)
#  endif
#else
#  define FA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* All documents cross this boundary as UTF-8 JSON (or CSV) strings. Strings
 * returned through `char** out` are owned by the caller and released with
 * fa_string_free. On failure, fa_last_error() describes the problem for the
 * calling thread. */

typedef enum fa_status {
  FA_OK = 0,
  FA_ERR_INPUT = 1,      /* malformed input, unknown names, type mismatch */
  FA_ERR_SIZE = 2,       /* an enumeration cap was exceeded */
  FA_ERR_INVARIANT = 3,  /* internal consistency check failed */
  FA_ERR_INTERNAL = 4
} fa_status;

typedef struct fa_instance fa_instance;

FA_API const char* fa_version(void);
FA_API const char* fa_last_error(void);
FA_API void fa_string_free(char* s);

FA_API fa_status fa_instance_parse(const char* json, fa_instance** out);
/* Impartial culture: independent uniform strict orders. */
FA_API fa_status fa_instance_generate(size_t agents, size_t items, uint64_t seed,
                                      fa_instance** out);
FA_API fa_status fa_instance_serialize(const fa_instance* inst, char** out);
FA_API size_t fa_instance_agent_count(const fa_instance* inst);
FA_API size_t fa_instance_item_count(const fa_instance* inst);
FA_API void fa_instance_free(fa_instance* inst);

typedef struct fa_run_options {
  const char* mechanism;     /* gebm | gpbm | rsdq */
  const char* mode;          /* NULL or "" for the mechanism default */
  uint64_t seed;
  size_t quota;              /* rsdq only; 0 = ceil(m/n) */
  const char* priority;      /* rsdq only; comma-separated agent names or NULL */
  uint64_t max_branches;
  int trace;                 /* gpbm fractional: include consumption events */
} fa_run_options;

FA_API void fa_run_options_init(fa_run_options* options);
FA_API fa_status fa_run(const fa_instance* inst, const fa_run_options* options, char** out);

/* `properties` is a comma-separated list. */
FA_API fa_status fa_check(const fa_instance* inst, const char* outcome_json,
                          const char* properties, int* all_pass, char** out);
FA_API fa_status fa_decompose(const fa_instance* inst, int has_seed, uint64_t seed, char** out);

typedef struct fa_audit_options {
  const char* mechanism;
  uint64_t max_branches;
  uint64_t max_enum;
  const char* permutation;   /* neutrality: "c:d,d:c"; NULL = all relabelings */
  size_t max_size;           /* remark1: bound on n and m */
  const char* agent;         /* sp: with `misreport`, test one misreport only */
  const char* misreport;     /* comma-separated item names */
} fa_audit_options;

FA_API void fa_audit_options_init(fa_audit_options* options);
FA_API fa_status fa_audit_sp(const fa_instance* inst, const fa_audit_options* options,
                             int* found, int* replayed, char** out);
FA_API fa_status fa_audit_neutrality(const fa_instance* inst, const fa_audit_options* options,
                                     int* equal, char** out);
FA_API fa_status fa_audit_remark1(const fa_audit_options* options, int* found, int* replayed,
                                  char** out);

FA_API fa_status fa_experiment(const char* config_json, char** csv);

#ifdef __cplusplus
}
#endif

#endif  // FAIRASSIGN_FAIRASSIGN_H_
