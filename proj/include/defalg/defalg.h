/*
 * Copyright 2026 The defalg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#ifndef DEFALG_DEFALG_H
#define DEFALG_DEFALG_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(DEFALG_BUILDING_LIBRARY)
#define DEFALG_API __declspec(dllexport)
#else
#define DEFALG_API __declspec(dllimport)
#endif
#else
#define DEFALG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum defalg_status {
    DEFALG_OK = 0,
    DEFALG_ERR_INVALID_PARAMETER = 1,
    DEFALG_ERR_RESOURCE_LIMIT = 2,
    DEFALG_ERR_CONSTRAINT = 3,
    DEFALG_ERR_NUMERICAL = 4,
    DEFALG_ERR_UNSUPPORTED = 5,
    DEFALG_ERR_PRECONDITION = 6,
    DEFALG_ERR_REPRESENTATION = 7,
    DEFALG_ERR_IO = 8,
    DEFALG_ERR_NULL_ARGUMENT = 9,
    DEFALG_ERR_INTERNAL = 10
} defalg_status;

/* Library version, e.g. "0.1.0". */
DEFALG_API const char* defalg_version(void);

/* Message of the last failed call on this thread; "" if none. */
DEFALG_API const char* defalg_last_error(void);

/* Short name of a status code. */
DEFALG_API const char* defalg_status_name(defalg_status status);

/* Strings returned through char** out-parameters are released here. */
DEFALG_API void defalg_string_free(char* s);

/* ---- spin-j representation ------------------------------------------- */

typedef struct defalg_spin_rep defalg_spin_rep;

/* j must be a positive half-integer no larger than 5000. */
DEFALG_API defalg_status defalg_spin_rep_create(double j, defalg_spin_rep** out);
DEFALG_API void defalg_spin_rep_destroy(defalg_spin_rep* rep);
DEFALG_API size_t defalg_spin_rep_dim(const defalg_spin_rep* rep);

/* Copies Jx, Jy or Jz (axis 'x', 'y', 'z') row-major into re/im, each with
   room for dim*dim doubles. Rows follow descending m. */
DEFALG_API defalg_status defalg_spin_rep_component(const defalg_spin_rep* rep, char axis,
                                                   double* re, double* im, size_t capacity);

/* {"j":..,"dim":..,"jx":[[[re,im],..],..],"jy":..,"jz":..} */
DEFALG_API defalg_status defalg_spin_rep_to_json(const defalg_spin_rep* rep, char** out);

/* ---- closed forms ------------------------------------------------------ */

/* (j(j+1) - (j-n)^2) / (2 sqrt(j(j+1))). */
DEFALG_API defalg_status defalg_oscillator_level(double j, double n, double* out);

/* Minimal length (pi/2) / int_0^a dp/f for family "trig" (parameter lambda),
   "hyper" (parameter beta) or "flat" (parameter ignored). */
DEFALG_API defalg_status defalg_minimal_length(const char* family, double parameter, double c,
                                               double* out);

/* ---- harness commands ------------------------------------------------- */

typedef struct defalg_report defalg_report;

/* Runs a command. params_json is a JSON object (or array of objects) of
   parameter keys; comma-separated strings and arrays are sweep axes.
   tolerance may be NULL; otherwise it replaces the command's primary
   tolerance. A report is produced whenever the parameters are valid, even
   if checks fail; see defalg_report_passed. */
DEFALG_API defalg_status defalg_run(const char* command, const char* params_json,
                                    const double* tolerance, defalg_report** out);
DEFALG_API int defalg_report_passed(const defalg_report* report);

/* format: "json" or "csv". */
DEFALG_API defalg_status defalg_report_serialize(const defalg_report* report, const char* format,
                                                 char** out);
DEFALG_API void defalg_report_destroy(defalg_report* report);

/* Number of commands and the name of command i (NULL when out of range). */
DEFALG_API size_t defalg_command_count(void);
DEFALG_API const char* defalg_command_name(size_t i);
/* Parameter key i accepted by a command (NULL when out of range or unknown). */
DEFALG_API const char* defalg_command_key(const char* command, size_t i);

#ifdef __cplusplus
}
#endif

#endif
