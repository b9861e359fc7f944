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

/* C interface to the revlab core. Every function returns a revlab_status;
 * on failure revlab_last_error() holds a module-qualified message for the
 * calling thread. Strings returned through char** are owned by the caller
 * and released with revlab_string_free. */
#ifndef REVLAB_REVLAB_H_
#define REVLAB_REVLAB_H_

#include <stddef.h>

#if defined(REVLAB_BUILDING_LIBRARY)
#define REVLAB_API __attribute__((visibility("default")))
#else
#define REVLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum revlab_status {
  REVLAB_OK = 0,
  REVLAB_INVALID_ARGUMENT = 1,
  REVLAB_INVALID_INDEX = 2,
  REVLAB_OUT_OF_TABLE = 3,
  REVLAB_INVALID_CENTER = 4,
  REVLAB_DEGENERATE_SPECTRUM = 5,
  REVLAB_RATIO_EXCEEDS_BOUND = 6,
  REVLAB_EMPTY_WINDOW = 7,
  REVLAB_UNDEFINED_SCALE = 8,
  REVLAB_GRID_TOO_COARSE = 9,
  REVLAB_TRACE_TOO_SHORT = 10,
  REVLAB_INSUFFICIENT_RESOLUTION = 11,
  REVLAB_PARITY_VIOLATION = 12,
  REVLAB_TIME_MISMATCH = 13,
  REVLAB_DIVERGENT_MOMENT = 14,
  REVLAB_NO_ROOT_IN_BRACKET = 15,
  REVLAB_WINDOW_TOO_NARROW = 16,
  REVLAB_IO = 17,
  REVLAB_INTERNAL = 18
} revlab_status;

/* Exit-code classes: 0 ok, 2 configuration, 3 numeric, 4 resolution. */
enum {
  REVLAB_CLASS_OK = 0,
  REVLAB_CLASS_CONFIG = 2,
  REVLAB_CLASS_NUMERIC = 3,
  REVLAB_CLASS_RESOLUTION = 4
};

REVLAB_API const char* revlab_version(void);
REVLAB_API const char* revlab_last_error(void);
REVLAB_API const char* revlab_status_name(revlab_status status);
REVLAB_API int revlab_status_class(revlab_status status);
REVLAB_API void revlab_string_free(char* s);

/* Unit conversion, atomic units <-> SI. */
REVLAB_API double revlab_seconds_per_atomic_time(void);
REVLAB_API double revlab_volts_per_cm_per_atomic_field(void);

/* ---- spectra ---------------------------------------------------------- */

typedef struct revlab_spectrum revlab_spectrum;

REVLAB_API revlab_status revlab_spectrum_hydrogen(revlab_spectrum** out);
REVLAB_API revlab_status revlab_spectrum_quantum_defect(const int* l_values,
                                                        const double* defects, size_t count,
                                                        double detuning, int l,
                                                        revlab_spectrum** out);
REVLAB_API revlab_status revlab_spectrum_stark(double field, revlab_spectrum** out);
REVLAB_API revlab_status revlab_spectrum_tabulated(int first_n, const double* energies,
                                                   size_t count, revlab_spectrum** out);
REVLAB_API revlab_status revlab_spectrum_from_json(const char* json, revlab_spectrum** out);
REVLAB_API revlab_status revlab_spectrum_from_csv(const char* text, revlab_spectrum** out);
REVLAB_API revlab_status revlab_spectrum_to_json(const revlab_spectrum* spectrum, char** out);
REVLAB_API void revlab_spectrum_free(revlab_spectrum* spectrum);

REVLAB_API revlab_status revlab_energy(const revlab_spectrum* spectrum, int n, int k, int l,
                                       double* out);

/* Undefined scales are reported as 0 with the matching has_* flag cleared. */
typedef struct revlab_time_scales {
  double center;
  int two_index;
  double t_cl_n, t_cl_k, t_rev_n, t_rev_nk, t_rev_k, t_sr;
  int has_t_cl_n, has_t_cl_k, has_t_rev_n, has_t_rev_nk, has_t_rev_k, has_t_sr;
} revlab_time_scales;

REVLAB_API revlab_status revlab_time_scales_compute(const revlab_spectrum* spectrum,
                                                    double center, revlab_time_scales* out);
REVLAB_API revlab_status revlab_time_scales_json(const revlab_spectrum* spectrum, double center,
                                                 char** out);

typedef struct revlab_field_tuning {
  double field;
  double field_v_per_cm;
  double critical_field;
  double critical_v_per_cm;
  int below_critical;
} revlab_field_tuning;

/* Field giving t_rev^(n) / t_rev^(nk) = r/s; r/s must be below 1/8. */
REVLAB_API revlab_status revlab_tune_field(long long nbar, long long r, long long s,
                                           revlab_field_tuning* out);

/* Best p/q ~ t_a / t_b with q <= max_denominator; *found is 0 when no
 * fraction lies within the relative tolerance. */
REVLAB_API revlab_status revlab_commensurability(double t_a, double t_b, double tolerance,
                                                 long long max_denominator, long long* p,
                                                 long long* q, int* found);

REVLAB_API revlab_status revlab_classify_json(const revlab_spectrum* spectrum, double center,
                                              char** out);

/* ---- packets and traces ----------------------------------------------- */

typedef struct revlab_packet revlab_packet;

REVLAB_API revlab_status revlab_packet_gaussian(const revlab_spectrum* spectrum, double nbar,
                                                double sigma, int window, revlab_packet** out);
REVLAB_API revlab_status revlab_packet_stark(const revlab_spectrum* spectrum, double nbar,
                                             double sigma_n, double sigma_k, int window,
                                             revlab_packet** out);
REVLAB_API size_t revlab_packet_size(const revlab_packet* packet);
REVLAB_API revlab_status revlab_packet_entry(const revlab_packet* packet, size_t i, int* n,
                                             int* k, int* l, double* re, double* im);
REVLAB_API revlab_status revlab_packet_to_json(const revlab_packet* packet, char** out);
REVLAB_API void revlab_packet_free(revlab_packet* packet);

typedef enum revlab_phase_mode {
  REVLAB_PHASE_EXACT = 0,
  REVLAB_PHASE_TRUNCATED = 1
} revlab_phase_mode;

typedef struct revlab_trace revlab_trace;

/* Autocorrelation on an explicit grid. Truncated phases are expanded about
 * the packet center with `order` in {1, 2, 3}. */
REVLAB_API revlab_status revlab_autocorrelation(const revlab_spectrum* spectrum,
                                                const revlab_packet* packet,
                                                revlab_phase_mode mode, int order,
                                                const double* times, size_t count,
                                                revlab_trace** out);
/* Same on `count` uniform samples of [t0, t1]. */
REVLAB_API revlab_status revlab_autocorrelation_uniform(const revlab_spectrum* spectrum,
                                                        const revlab_packet* packet,
                                                        revlab_phase_mode mode, int order,
                                                        double t0, double t1, size_t count,
                                                        revlab_trace** out);
REVLAB_API size_t revlab_trace_size(const revlab_trace* trace);
REVLAB_API revlab_status revlab_trace_sample(const revlab_trace* trace, size_t i, double* t,
                                             double* re, double* im);
REVLAB_API revlab_status revlab_trace_to_csv(const revlab_trace* trace, char** out);
REVLAB_API void revlab_trace_free(revlab_trace* trace);

/* ---- revival analysis ------------------------------------------------- */

/* Predictions as JSON and, when table is non-null, as a plain-text table. */
REVLAB_API revlab_status revlab_predict(const revlab_spectrum* spectrum, double center,
                                        int max_q_rev, int max_q_sr, char** json, char** table);
REVLAB_API revlab_status revlab_detect(const revlab_spectrum* spectrum, double center,
                                       const revlab_trace* trace, char** json, char** table);

/* ---- Stark decomposition ---------------------------------------------- */

typedef struct revlab_stark_request {
  int nbar;
  long long ratio_r, ratio_s;       /* t_rev^(n) / t_rev^(nk) */
  long long fraction_p, fraction_q; /* t_frac as a fraction of the full revival */
  double sigma_n, sigma_k;
  int window;
} revlab_stark_request;

REVLAB_API revlab_status revlab_stark_decompose(const revlab_stark_request* request,
                                                char** json);
/* Node analysis around the fractional time over +-half_width classical
 * periods; csv receives t, |A|^2 of the full packet and of each sector. */
REVLAB_API revlab_status revlab_stark_nodes(const revlab_stark_request* request,
                                            double half_width, int samples_per_half_period,
                                            char** json, char** csv);

/* ---- squeezed states -------------------------------------------------- */

typedef struct revlab_squeezed {
  double alpha;
  double gamma0;
  double gamma1;
  int l;
} revlab_squeezed;

/* r_out <= 0 selects 2 nbar^2. */
REVLAB_API revlab_status revlab_squeezed_fit(double nbar, double r_out, int l,
                                             revlab_squeezed* out);
REVLAB_API revlab_status revlab_squeezed_to_json(const revlab_squeezed* params, char** out);
REVLAB_API revlab_status revlab_squeezed_moment(const revlab_squeezed* params, int m,
                                                double* out);
REVLAB_API revlab_status revlab_squeezed_project(const revlab_squeezed* params, int n_min,
                                                 int n_max, double min_captured,
                                                 revlab_packet** out, double* captured);

typedef struct revlab_series revlab_series;

typedef struct revlab_uncertainty {
  double t, mean_r, delta_r, mean_p, delta_p, product;
} revlab_uncertainty;

/* r_max <= 0 and points == 0 select the defaults. */
REVLAB_API revlab_status revlab_squeezed_evolve(const revlab_packet* packet,
                                                const double* times, size_t count,
                                                double r_max, size_t points,
                                                revlab_series** out);
REVLAB_API size_t revlab_series_size(const revlab_series* series);
REVLAB_API revlab_status revlab_series_sample(const revlab_series* series, size_t i,
                                              revlab_uncertainty* out);
REVLAB_API revlab_status revlab_series_to_csv(const revlab_series* series, char** out);
/* Period of the dominant oscillation of the uncertainty product. */
REVLAB_API revlab_status revlab_series_period(const revlab_series* series, double* period,
                                              int* found);
REVLAB_API void revlab_series_free(revlab_series* series);

#ifdef __cplusplus
}
#endif

#endif /* REVLAB_REVLAB_H_ */
