/* Copyright 2026 The qqa Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the queue automaton toolkit.
 *
 * Machines are opaque handles. Every function returns a qqa_status; on
 * failure qqa_last_error() describes the problem for the calling thread.
 * Strings handed out through char** parameters are owned by the caller and
 * released with qqa_string_free().
 */

#ifndef QQA_QQA_H
#define QQA_QQA_H

#include <stddef.h>

#if defined(_WIN32)
#define QQA_API __declspec(dllexport)
#else
#define QQA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qqa_status {
  QQA_OK = 0,
  QQA_ERR_INVALID_ARGUMENT = 1,
  QQA_ERR_PARSE = 2,
  QQA_ERR_VALIDATION = 3,
  QQA_ERR_INPUT = 4,
  QQA_ERR_RUN_FAULT = 5,
  QQA_ERR_NOT_FOUND = 6,
  QQA_ERR_ALPHABET = 7,
  QQA_ERR_INTERNAL = 8
} qqa_status;

typedef struct qqa_machine qqa_machine;

typedef struct qqa_run_options {
  int trace;              /* non-zero: fill *trace_out */
  int strict_empty_queue; /* accepting terms with a nonempty queue reject */
  size_t max_steps;       /* general machines; 0 picks 16 * (|x| + 2) */
} qqa_run_options;

typedef struct qqa_run_result {
  double p_accept;
  double p_reject;
  double p_nonhalt;
  size_t steps;
} qqa_run_result;

typedef struct qqa_validate_options {
  int completed;    /* sink-complete before the per-key checks */
  double tolerance; /* 0 picks 1e-9 */
  size_t max_len;   /* sample length for the empirical checks */
} qqa_validate_options;

QQA_API const char* qqa_version(void);
QQA_API const char* qqa_last_error(void);
QQA_API const char* qqa_status_name(qqa_status status);
QQA_API void qqa_string_free(char* s);

QQA_API qqa_status qqa_machine_parse(const char* text, qqa_machine** out);
QQA_API qqa_status qqa_machine_from_zoo(const char* name, qqa_machine** out);
QQA_API void qqa_machine_free(qqa_machine* m);

/* 1 for quantum machines, 0 for classical ones. */
QQA_API int qqa_machine_is_quantum(const qqa_machine* m);
QQA_API qqa_status qqa_machine_name(const qqa_machine* m, char** out);
QQA_API qqa_status qqa_machine_serialize(const qqa_machine* m, char** out);
QQA_API qqa_status qqa_machine_complete(const qqa_machine* m, qqa_machine** out);
QQA_API int qqa_machine_equal(const qqa_machine* a, const qqa_machine* b);

/* Quantum machines run real-time when flagged so, otherwise for at most
 * max_steps steps. Classical machines report p_accept 1 or 0. */
QQA_API qqa_status qqa_run(const qqa_machine* m, const char* input, const qqa_run_options* options,
                           qqa_run_result* result, char** trace_out);

/* Writes a human-readable report; *all_pass is 1 iff every counted check
 * passes. Co-isometry is reported but not counted. */
QQA_API qqa_status qqa_validate(const qqa_machine* m, const qqa_validate_options* options, int* all_pass,
                                char** report_out);

/* Exhaustive sweep against a named oracle. tsv_out may be NULL. */
QQA_API qqa_status qqa_corpus(const qqa_machine* m, const char* oracle, size_t max_len, double tolerance,
                              int* bound_ok, char** tsv_out, char** summary_out);

/* Newline-separated "name<TAB>description" lines. */
QQA_API qqa_status qqa_zoo_list(char** out);
QQA_API qqa_status qqa_oracle_list(char** out);
QQA_API qqa_status qqa_oracle_contains(const char* oracle, const char* input, int* member);

#ifdef __cplusplus
}
#endif

#endif /* QQA_QQA_H */
