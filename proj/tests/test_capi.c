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


#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include <defalg/defalg.h>

static int failures = 0;

#define EXPECT(cond)                                                        \
    do {                                                                    \
        if (!(cond)) {                                                      \
            fprintf(stderr, "%s:%d: expectation failed: %s\n", __FILE__,    \
                    __LINE__, #cond);                                       \
            ++failures;                                                     \
        }                                                                   \
    } while (0)

static void spin_handles(void) {
    defalg_spin_rep* rep = NULL;
    EXPECT(defalg_spin_rep_create(1.5, &rep) == DEFALG_OK);
    EXPECT(rep != NULL);
    EXPECT(defalg_spin_rep_dim(rep) == 4);

    double re[16], im[16];
    EXPECT(defalg_spin_rep_component(rep, 'z', re, im, 16) == DEFALG_OK);
    EXPECT(re[0] == 1.5 && re[5] == 0.5 && re[10] == -0.5 && re[15] == -1.5);
    EXPECT(re[1] == 0.0 && im[0] == 0.0);

    /* (Jy)_{01} = -i sqrt(3)/2 in the descending-m basis. */
    EXPECT(defalg_spin_rep_component(rep, 'y', re, im, 16) == DEFALG_OK);
    EXPECT(fabs(im[1] + sqrt(3.0) / 2.0) < 1e-15);
    EXPECT(fabs(re[1]) < 1e-15);

    EXPECT(defalg_spin_rep_component(rep, 'w', re, im, 16) == DEFALG_ERR_INVALID_PARAMETER);
    EXPECT(defalg_spin_rep_component(rep, 'x', re, im, 15) == DEFALG_ERR_INVALID_PARAMETER);
    EXPECT(strlen(defalg_last_error()) > 0);

    char* text = NULL;
    EXPECT(defalg_spin_rep_to_json(rep, &text) == DEFALG_OK);
    EXPECT(text != NULL && strstr(text, "\"jz\"") != NULL);
    defalg_string_free(text);
    defalg_spin_rep_destroy(rep);

    rep = NULL;
    EXPECT(defalg_spin_rep_create(0.3, &rep) == DEFALG_ERR_INVALID_PARAMETER);
    EXPECT(rep == NULL);
    EXPECT(strstr(defalg_last_error(), "0.3") != NULL || strlen(defalg_last_error()) > 0);
    EXPECT(defalg_spin_rep_create(6000.0, &rep) == DEFALG_ERR_RESOURCE_LIMIT);
    EXPECT(defalg_spin_rep_create(1.0, NULL) == DEFALG_ERR_NULL_ARGUMENT);
    defalg_spin_rep_destroy(NULL);
}

static void closed_forms(void) {
    double v = 0.0;
    EXPECT(defalg_oscillator_level(1.0, 0.0, &v) == DEFALG_OK);
    EXPECT(fabs(v - 1.0 / (2.0 * sqrt(2.0))) < 1e-15);
    EXPECT(defalg_oscillator_level(1.0, 1.0, &v) == DEFALG_OK);
    EXPECT(fabs(v - 1.0 / sqrt(2.0)) < 1e-15);

    EXPECT(defalg_minimal_length("trig", 0.25, 1.0, &v) == DEFALG_OK);
    EXPECT(fabs(v - 0.25) < 1e-10);
    EXPECT(defalg_minimal_length("hyper", 0.3, 1.0, &v) == DEFALG_OK);
    EXPECT(v == 0.0);
    EXPECT(defalg_minimal_length("cubic", 1.0, 1.0, &v) == DEFALG_ERR_INVALID_PARAMETER);
    EXPECT(defalg_minimal_length(NULL, 1.0, 1.0, &v) == DEFALG_ERR_NULL_ARGUMENT);
}

static void harness_runs(void) {
    EXPECT(defalg_command_count() == 7);
    int found = 0;
    for (size_t i = 0; i < defalg_command_count(); ++i)
        if (strcmp(defalg_command_name(i), "verify-algebra") == 0) found = 1;
    EXPECT(found);
    EXPECT(defalg_command_name(99) == NULL);
    EXPECT(strcmp(defalg_command_key("spectrum-oscillator", 0), "j") == 0);
    EXPECT(defalg_command_key("spectrum-oscillator", 1) == NULL);
    EXPECT(defalg_command_key("nope", 0) == NULL);

    defalg_report* rep = NULL;
    EXPECT(defalg_run("spectrum-oscillator", "{\"j\": \"1,2\"}", NULL, &rep) == DEFALG_OK);
    EXPECT(defalg_report_passed(rep) == 1);
    char* csv = NULL;
    EXPECT(defalg_report_serialize(rep, "csv", &csv) == DEFALG_OK);
    EXPECT(csv != NULL && strncmp(csv, "point,index,computed,reference,deviation\n", 41) == 0);
    defalg_string_free(csv);
    char* js = NULL;
    EXPECT(defalg_report_serialize(rep, "json", &js) == DEFALG_OK);
    EXPECT(js != NULL && strstr(js, "\"command\": \"spectrum-oscillator\"") != NULL);
    defalg_string_free(js);
    EXPECT(defalg_report_serialize(rep, "xml", &js) == DEFALG_ERR_INVALID_PARAMETER);
    defalg_report_destroy(rep);

    const double tight = 1e-20;
    rep = NULL;
    EXPECT(defalg_run("spectrum-position", "{\"lambda\": 0.5, \"N\": 32}", &tight, &rep) == DEFALG_OK);
    EXPECT(rep != NULL && defalg_report_passed(rep) == 0);
    defalg_report_destroy(rep);

    rep = NULL;
    EXPECT(defalg_run("spectrum-oscillator", "{\"bogus\": 1}", NULL, &rep) == DEFALG_ERR_INVALID_PARAMETER);
    EXPECT(rep == NULL);
    EXPECT(strstr(defalg_last_error(), "bogus") != NULL);
    EXPECT(defalg_run("spectrum-oscillator", "{not json", NULL, &rep) == DEFALG_ERR_INVALID_PARAMETER);
    EXPECT(defalg_run("no-such-command", "{}", NULL, &rep) == DEFALG_ERR_INVALID_PARAMETER);
    EXPECT(defalg_run("closure-fit", "{\"file\": \"/nonexistent\"}", NULL, &rep) == DEFALG_ERR_IO);
    EXPECT(defalg_report_passed(NULL) == 0);
}

int main(void) {
    EXPECT(strcmp(defalg_version(), "0.1.0") == 0);
    EXPECT(strcmp(defalg_status_name(DEFALG_ERR_CONSTRAINT), "") != 0);
    spin_handles();
    closed_forms();
    harness_runs();
    if (failures) {
        fprintf(stderr, "%d expectation(s) failed\n", failures);
        return 1;
    }
    printf("C API checks passed\n");
    return 0;
}
