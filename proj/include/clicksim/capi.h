/*
 * Copyright 2026 the clicksim authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the clicksim library: neural click models for slate-based
 * recommender systems. All functions return CLICKSIM_OK (0) on success; on
 * failure they return a status code and the message is retrievable via
 * clicksim_last_error() on the same thread. Strings returned through char**
 * out-parameters are heap-allocated and must be released with
 * clicksim_string_free(). */

#ifndef CLICKSIM_CAPI_H
#define CLICKSIM_CAPI_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum clicksim_status {
  CLICKSIM_OK = 0,
  CLICKSIM_ERR_CONFIG = 2,  /* invalid configuration */
  CLICKSIM_ERR_DATA = 3,    /* malformed or inconsistent data */
  CLICKSIM_ERR_NUMERIC = 4, /* numeric failure (non-finite values, ...) */
  CLICKSIM_ERR_USAGE = 5    /* invalid API usage (null handle, ...) */
} clicksim_status;

const char* clicksim_version(void);

/* Message for the most recent failure on this thread; never NULL. */
const char* clicksim_last_error(void);

void clicksim_string_free(char* s);

/* ---- experiment pipeline -------------------------------------------- */
/* Each command takes a JSON experiment config file plus an optional JSON
 * object of overrides (may be NULL) that is merged on top. On success an
 * optional summary_json out-parameter (may be NULL) receives a JSON object
 * describing the produced artifacts. */

clicksim_status clicksim_ingest(const char* config_path,
                                const char* overrides_json,
                                char** summary_json);
clicksim_status clicksim_train(const char* config_path,
                               const char* overrides_json,
                               char** summary_json);
clicksim_status clicksim_evaluate(const char* config_path,
                                  const char* overrides_json,
                                  char** summary_json);

/* Comparison table across finished runs, in the layout
 * model x embedding rows, dataset x {AUC, F1, Acc.} columns.
 * format is "text" or "csv". */
clicksim_status clicksim_report(const char* const* run_dirs, size_t n_dirs,
                                const char* format, char** table_out);

/* ---- simulator ------------------------------------------------------- */
/* A simulator serves a trained checkpoint as a user response function with
 * one active session at a time; reset starts a new session. */

typedef struct clicksim_sim clicksim_sim;

clicksim_status clicksim_sim_open(const char* checkpoint_path, uint64_t seed,
                                  clicksim_sim** out);
clicksim_status clicksim_sim_reset(clicksim_sim* sim, const char* user_id,
                                   uint64_t seed);

/* Responds to one slate. clicks_out and probs_out must hold n_items entries.
 * click_order_out (may be NULL) must hold n_items entries; it receives the
 * click order when the model defines one and *click_order_len is set to its
 * length (0 otherwise). mode is "sample" or "greedy". */
clicksim_status clicksim_sim_respond(clicksim_sim* sim, const int64_t* items,
                                     size_t n_items, const char* mode,
                                     uint8_t* clicks_out, double* probs_out,
                                     int64_t* click_order_out,
                                     size_t* click_order_len);

/* One step of the line-delimited wire protocol: a request JSON line in, a
 * response JSON line out (allocated; free with clicksim_string_free). Always
 * produces a response line; protocol-level failures yield {"error": ...} and
 * a non-OK status. */
clicksim_status clicksim_sim_handle_json(clicksim_sim* sim,
                                         const char* request_line,
                                         char** response_line);

void clicksim_sim_close(clicksim_sim* sim);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CLICKSIM_CAPI_H */
