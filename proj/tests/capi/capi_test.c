// Copyright 2026 The revlab Authors
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

/* Exercises the C API from plain C. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "revlab/revlab.h"

static int failures = 0;

#define EXPECT(cond)                                                  \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

#define EXPECT_OK(call) EXPECT((call) == REVLAB_OK)

static void test_errors(void) {
  revlab_field_tuning t;
  EXPECT(revlab_tune_field(24, 1, 8, &t) == REVLAB_RATIO_EXCEEDS_BOUND);
  EXPECT(strstr(revlab_last_error(), "1/8") != NULL);
  EXPECT(revlab_status_class(REVLAB_RATIO_EXCEEDS_BOUND) == REVLAB_CLASS_CONFIG);
  EXPECT(revlab_status_class(REVLAB_GRID_TOO_COARSE) == REVLAB_CLASS_RESOLUTION);
  EXPECT(revlab_status_class(REVLAB_NO_ROOT_IN_BRACKET) == REVLAB_CLASS_NUMERIC);
  EXPECT(revlab_status_class(REVLAB_OK) == REVLAB_CLASS_OK);
  EXPECT(strcmp(revlab_status_name(REVLAB_PARITY_VIOLATION), "parity-violation") == 0);
  EXPECT(revlab_spectrum_hydrogen(NULL) == REVLAB_INVALID_ARGUMENT);
}

static void test_spectra(void) {
  revlab_spectrum* h = NULL;
  EXPECT_OK(revlab_spectrum_hydrogen(&h));
  double e = 0.0;
  EXPECT_OK(revlab_energy(h, 1, 0, 0, &e));
  EXPECT(e == -0.5);

  revlab_time_scales ts;
  EXPECT_OK(revlab_time_scales_compute(h, 45.0, &ts));
  EXPECT(ts.has_t_sr && !ts.two_index);
  EXPECT(fabs(ts.t_rev_n / ts.t_cl_n - 30.0) < 1e-12);

  char* json = NULL;
  EXPECT_OK(revlab_spectrum_to_json(h, &json));
  revlab_spectrum* copy = NULL;
  EXPECT_OK(revlab_spectrum_from_json(json, &copy));
  revlab_string_free(json);
  revlab_spectrum_free(copy);

  revlab_spectrum* stark = NULL;
  EXPECT_OK(revlab_spectrum_stark(1.2559e-7, &stark));
  EXPECT(revlab_energy(stark, 24, 2, 0, &e) == REVLAB_INVALID_INDEX);
  revlab_spectrum_free(stark);

  const int ls[] = {0, 1};
  const double ds[] = {3.13, 2.65};
  revlab_spectrum* qd = NULL;
  EXPECT_OK(revlab_spectrum_quantum_defect(ls, ds, 2, 0.0, 1, &qd));
  EXPECT_OK(revlab_energy(qd, 30, 0, 1, &e));
  EXPECT(fabs(e + 0.5 / ((30 - 2.65) * (30 - 2.65))) < 1e-15);
  revlab_spectrum_free(qd);

  revlab_spectrum* table = NULL;
  EXPECT_OK(revlab_spectrum_from_csv("n,E\n1,-0.5\n2,-0.125\n3,-0.0555\n4,-0.03125\n5,-0.02\n", &table));
  EXPECT(revlab_energy(table, 6, 0, 0, &e) == REVLAB_OUT_OF_TABLE);
  revlab_spectrum_free(table);

  json = NULL;
  EXPECT_OK(revlab_classify_json(h, 45.0, &json));
  EXPECT(json && strstr(json, "superrevivals") != NULL);
  revlab_string_free(json);
  revlab_spectrum_free(h);
}

static void test_traces(void) {
  revlab_spectrum* h = NULL;
  EXPECT_OK(revlab_spectrum_hydrogen(&h));
  revlab_packet* p = NULL;
  EXPECT_OK(revlab_packet_gaussian(h, 45.0, 2.5, 13, &p));
  EXPECT(revlab_packet_size(p) == 27);
  revlab_time_scales ts;
  EXPECT_OK(revlab_time_scales_compute(h, 45.0, &ts));
  revlab_trace* trace = NULL;
  EXPECT_OK(revlab_autocorrelation_uniform(h, p, REVLAB_PHASE_TRUNCATED, 2, 0.0, ts.t_rev_n, 3,
                                           &trace));
  EXPECT(revlab_trace_size(trace) == 3);
  double t, re, im;
  EXPECT_OK(revlab_trace_sample(trace, 2, &t, &re, &im));
  EXPECT(fabs(re * re + im * im - 1.0) < 1e-12);
  EXPECT(revlab_trace_sample(trace, 3, &t, &re, &im) == REVLAB_INVALID_ARGUMENT);
  char* csv = NULL;
  EXPECT_OK(revlab_trace_to_csv(trace, &csv));
  EXPECT(strncmp(csv, "t_atomic,t_si,re_A,im_A,abs2_A\n", 31) == 0);
  revlab_string_free(csv);
  revlab_trace_free(trace);
  revlab_packet_free(p);
  revlab_spectrum_free(h);
}

static void test_stark(void) {
  revlab_field_tuning t;
  EXPECT_OK(revlab_tune_field(24, 1, 12, &t));
  EXPECT(fabs(t.field_v_per_cm / 645.8 - 1.0) < 5e-4);
  EXPECT(t.below_critical);

  revlab_stark_request req = {24, 1, 12, 1, 2, 2.0, 2.0, 6};
  char* json = NULL;
  EXPECT_OK(revlab_stark_decompose(&req, &json));
  EXPECT(json && strstr(json, "reconstruction_max_error") != NULL);
  revlab_string_free(json);
  req.ratio_s = 0;
  EXPECT(revlab_stark_decompose(&req, &json) == REVLAB_INVALID_ARGUMENT);
}

static void test_squeezed(void) {
  revlab_squeezed s;
  EXPECT_OK(revlab_squeezed_fit(45.0, 0.0, 1, &s));
  EXPECT(fabs(s.alpha - 86.252837) < 1e-5);
  double m = 0.0;
  EXPECT_OK(revlab_squeezed_moment(&s, 1, &m));
  EXPECT(fabs(m / 4050.0 - 1.0) < 1e-9);
  EXPECT(revlab_squeezed_moment(&s, -300, &m) == REVLAB_DIVERGENT_MOMENT);
}

int main(void) {
  EXPECT(strlen(revlab_version()) > 0);
  EXPECT(revlab_seconds_per_atomic_time() > 2.4e-17);
  test_errors();
  test_spectra();
  test_traces();
  test_stark();
  test_squeezed();
  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  puts("capi: all checks passed");
  return 0;
}
