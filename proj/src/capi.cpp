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

#include "revlab/revlab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "revlab/analysis.hpp"
#include "revlab/error.hpp"
#include "revlab/packet.hpp"
#include "revlab/serialize.hpp"
#include "revlab/spectrum.hpp"
#include "revlab/squeezed.hpp"
#include "revlab/stark.hpp"
#include "revlab/units.hpp"

struct revlab_spectrum {
  revlab::SpectrumModel model;
};

struct revlab_packet {
  revlab::PacketCoefficients packet;
};

struct revlab_trace {
  revlab::AutocorrelationTrace trace;
};

struct revlab_series {
  std::vector<revlab::UncertaintySample> samples;
};

namespace {

thread_local std::string g_last_error;

revlab_status to_status(revlab::ErrorCode code) {
  using revlab::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return REVLAB_INVALID_ARGUMENT;
    case ErrorCode::kInvalidIndex: return REVLAB_INVALID_INDEX;
    case ErrorCode::kOutOfTable: return REVLAB_OUT_OF_TABLE;
    case ErrorCode::kInvalidCenter: return REVLAB_INVALID_CENTER;
    case ErrorCode::kDegenerateSpectrum: return REVLAB_DEGENERATE_SPECTRUM;
    case ErrorCode::kRatioExceedsBound: return REVLAB_RATIO_EXCEEDS_BOUND;
    case ErrorCode::kEmptyWindow: return REVLAB_EMPTY_WINDOW;
    case ErrorCode::kUndefinedScale: return REVLAB_UNDEFINED_SCALE;
    case ErrorCode::kGridTooCoarse: return REVLAB_GRID_TOO_COARSE;
    case ErrorCode::kTraceTooShort: return REVLAB_TRACE_TOO_SHORT;
    case ErrorCode::kInsufficientResolution: return REVLAB_INSUFFICIENT_RESOLUTION;
    case ErrorCode::kParityViolation: return REVLAB_PARITY_VIOLATION;
    case ErrorCode::kTimeMismatch: return REVLAB_TIME_MISMATCH;
    case ErrorCode::kDivergentMoment: return REVLAB_DIVERGENT_MOMENT;
    case ErrorCode::kNoRootInBracket: return REVLAB_NO_ROOT_IN_BRACKET;
    case ErrorCode::kWindowTooNarrow: return REVLAB_WINDOW_TOO_NARROW;
    case ErrorCode::kIo: return REVLAB_IO;
  }
  return REVLAB_INTERNAL;
}

template <class F>
revlab_status guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return REVLAB_OK;
  } catch (const revlab::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return REVLAB_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = std::string("internal: ") + e.what();
    return REVLAB_INTERNAL;
  }
}

void require(bool condition, const char* what) {
  if (!condition) revlab::fail(revlab::ErrorCode::kInvalidArgument, "capi", what);
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

revlab::PhaseModel make_phase(const revlab::SpectrumModel& model,
                              const revlab::PacketCoefficients& packet, revlab_phase_mode mode,
                              int order) {
  const revlab::TimeScaleSet scales = revlab::time_scales(model, packet.center);
  if (mode == REVLAB_PHASE_EXACT) return revlab::PhaseModel::exact(scales);
  require(mode == REVLAB_PHASE_TRUNCATED, "unknown phase mode");
  return revlab::PhaseModel::truncated(scales, order);
}

revlab_status wrap_spectrum(revlab::SpectrumModel model, revlab_spectrum** out) {
  return guard([&] {
    require(out != nullptr, "output pointer is null");
    *out = new revlab_spectrum{std::move(model)};
  });
}

}  // namespace

extern "C" {

const char* revlab_version(void) { return REVLAB_VERSION_STRING; }

const char* revlab_last_error(void) { return g_last_error.c_str(); }

const char* revlab_status_name(revlab_status status) {
  switch (status) {
    case REVLAB_OK: return "ok";
    case REVLAB_INVALID_ARGUMENT: return "invalid-argument";
    case REVLAB_INVALID_INDEX: return "invalid-index";
    case REVLAB_OUT_OF_TABLE: return "out-of-table";
    case REVLAB_INVALID_CENTER: return "invalid-center";
    case REVLAB_DEGENERATE_SPECTRUM: return "degenerate-spectrum";
    case REVLAB_RATIO_EXCEEDS_BOUND: return "ratio-exceeds-bound";
    case REVLAB_EMPTY_WINDOW: return "empty-window";
    case REVLAB_UNDEFINED_SCALE: return "undefined-scale";
    case REVLAB_GRID_TOO_COARSE: return "grid-too-coarse";
    case REVLAB_TRACE_TOO_SHORT: return "trace-too-short";
    case REVLAB_INSUFFICIENT_RESOLUTION: return "insufficient-resolution";
    case REVLAB_PARITY_VIOLATION: return "parity-violation";
    case REVLAB_TIME_MISMATCH: return "time-mismatch";
    case REVLAB_DIVERGENT_MOMENT: return "divergent-moment";
    case REVLAB_NO_ROOT_IN_BRACKET: return "no-root-in-bracket";
    case REVLAB_WINDOW_TOO_NARROW: return "window-too-narrow";
    case REVLAB_IO: return "io";
    case REVLAB_INTERNAL: return "internal";
  }
  return "unknown";
}

int revlab_status_class(revlab_status status) {
  switch (status) {
    case REVLAB_OK:
      return REVLAB_CLASS_OK;
    case REVLAB_GRID_TOO_COARSE:
    case REVLAB_TRACE_TOO_SHORT:
    case REVLAB_INSUFFICIENT_RESOLUTION:
    case REVLAB_WINDOW_TOO_NARROW:
      return REVLAB_CLASS_RESOLUTION;
    case REVLAB_DEGENERATE_SPECTRUM:
    case REVLAB_UNDEFINED_SCALE:
    case REVLAB_DIVERGENT_MOMENT:
    case REVLAB_NO_ROOT_IN_BRACKET:
    case REVLAB_INTERNAL:
      return REVLAB_CLASS_NUMERIC;
    default:
      return REVLAB_CLASS_CONFIG;
  }
}

void revlab_string_free(char* s) { std::free(s); }

double revlab_seconds_per_atomic_time(void) { return revlab::units::kSecondsPerAtomicTime; }

double revlab_volts_per_cm_per_atomic_field(void) {
  return revlab::units::kVoltsPerCmPerAtomicField;
}

revlab_status revlab_spectrum_hydrogen(revlab_spectrum** out) {
  return wrap_spectrum(revlab::HydrogenSpectrum{}, out);
}

revlab_status revlab_spectrum_quantum_defect(const int* l_values, const double* defects,
                                             size_t count, double detuning, int l,
                                             revlab_spectrum** out) {
  revlab::QuantumDefectSpectrum qd;
  const revlab_status st = guard([&] {
    require(count == 0 || (l_values && defects), "defect arrays are null");
    for (size_t i = 0; i < count; ++i) qd.defects[l_values[i]] = defects[i];
    qd.detuning = detuning;
    qd.l = l;
  });
  if (st != REVLAB_OK) return st;
  return wrap_spectrum(qd, out);
}

revlab_status revlab_spectrum_stark(double field, revlab_spectrum** out) {
  if (!(field >= 0.0)) {
    return guard([] { require(false, "field must be >= 0"); });
  }
  return wrap_spectrum(revlab::StarkSpectrum{field}, out);
}

revlab_status revlab_spectrum_tabulated(int first_n, const double* energies, size_t count,
                                        revlab_spectrum** out) {
  return guard([&] {
    require(out && (energies || count == 0), "null pointer");
    *out = new revlab_spectrum{
        revlab::TabulatedSpectrum(first_n, std::vector<double>(energies, energies + count))};
  });
}

revlab_status revlab_spectrum_from_json(const char* json, revlab_spectrum** out) {
  return guard([&] {
    require(json && out, "null pointer");
    revlab::Json parsed;
    try {
      parsed = revlab::Json::parse(json);
    } catch (const nlohmann::json::exception& e) {
      revlab::fail(revlab::ErrorCode::kInvalidArgument, "capi",
                   std::string("malformed JSON: ") + e.what());
    }
    *out = new revlab_spectrum{revlab::spectrum_from_json(parsed)};
  });
}

revlab_status revlab_spectrum_from_csv(const char* text, revlab_spectrum** out) {
  return guard([&] {
    require(text && out, "null pointer");
    *out = new revlab_spectrum{revlab::tabulated_from_csv(text)};
  });
}

revlab_status revlab_spectrum_to_json(const revlab_spectrum* spectrum, char** out) {
  return guard([&] {
    require(spectrum && out, "null pointer");
    *out = duplicate(revlab::to_json(spectrum->model).dump(2));
  });
}

void revlab_spectrum_free(revlab_spectrum* spectrum) { delete spectrum; }

revlab_status revlab_energy(const revlab_spectrum* spectrum, int n, int k, int l, double* out) {
  return guard([&] {
    require(spectrum && out, "null pointer");
    *out = revlab::energy(spectrum->model, revlab::StateIndex{n, k, l});
  });
}

revlab_status revlab_time_scales_compute(const revlab_spectrum* spectrum, double center,
                                         revlab_time_scales* out) {
  return guard([&] {
    require(spectrum && out, "null pointer");
    const auto s = revlab::time_scales(spectrum->model, center);
    *out = revlab_time_scales{};
    out->center = s.center;
    out->two_index = s.two_index ? 1 : 0;
    auto put = [](const std::optional<double>& v, double& dst, int& flag) {
      dst = v.value_or(0.0);
      flag = v.has_value() ? 1 : 0;
    };
    put(s.t_cl_n, out->t_cl_n, out->has_t_cl_n);
    put(s.t_cl_k, out->t_cl_k, out->has_t_cl_k);
    put(s.t_rev_n, out->t_rev_n, out->has_t_rev_n);
    put(s.t_rev_nk, out->t_rev_nk, out->has_t_rev_nk);
    put(s.t_rev_k, out->t_rev_k, out->has_t_rev_k);
    put(s.t_sr, out->t_sr, out->has_t_sr);
  });
}

revlab_status revlab_time_scales_json(const revlab_spectrum* spectrum, double center,
                                      char** out) {
  return guard([&] {
    require(spectrum && out, "null pointer");
    *out = duplicate(revlab::to_json(revlab::time_scales(spectrum->model, center)).dump(2));
  });
}

revlab_status revlab_tune_field(long long nbar, long long r, long long s,
                                revlab_field_tuning* out) {
  return guard([&] {
    require(out != nullptr, "null pointer");
    require(s != 0, "ratio denominator is zero");
    const auto t = revlab::tune_field(nbar, revlab::Rational(r, s));
    *out = {t.field, t.field_v_per_cm, t.critical_field, t.critical_v_per_cm,
            t.below_critical ? 1 : 0};
  });
}

revlab_status revlab_commensurability(double t_a, double t_b, double tolerance,
                                      long long max_denominator, long long* p, long long* q,
                                      int* found) {
  return guard([&] {
    require(p && q && found, "null pointer");
    const auto r = revlab::commensurability(t_a, t_b, tolerance, max_denominator);
    *found = r ? 1 : 0;
    *p = r ? r->numerator() : 0;
    *q = r ? r->denominator() : 0;
  });
}

revlab_status revlab_classify_json(const revlab_spectrum* spectrum, double center, char** out) {
  return guard([&] {
    require(spectrum && out, "null pointer");
    *out = duplicate(revlab::to_json(revlab::classify_spectrum(spectrum->model, center)).dump(2));
  });
}

revlab_status revlab_packet_gaussian(const revlab_spectrum* spectrum, double nbar, double sigma,
                                     int window, revlab_packet** out) {
  return guard([&] {
    require(spectrum && out, "null pointer");
    *out = new revlab_packet{revlab::build_packet(spectrum->model, nbar, sigma, window)};
  });
}

revlab_status revlab_packet_stark(const revlab_spectrum* spectrum, double nbar, double sigma_n,
                                  double sigma_k, int window, revlab_packet** out) {
  return guard([&] {
    require(spectrum && out, "null pointer");
    *out = new revlab_packet{
        revlab::build_stark_packet(spectrum->model, nbar, sigma_n, sigma_k, window)};
  });
}

size_t revlab_packet_size(const revlab_packet* packet) {
  return packet ? packet->packet.entries.size() : 0;
}

revlab_status revlab_packet_entry(const revlab_packet* packet, size_t i, int* n, int* k, int* l,
                                  double* re, double* im) {
  return guard([&] {
    require(packet != nullptr, "null pointer");
    require(i < packet->packet.entries.size(), "entry index out of range");
    const auto& e = packet->packet.entries[i];
    if (n) *n = e.index.n;
    if (k) *k = e.index.k;
    if (l) *l = e.index.l;
    if (re) *re = e.amplitude.real();
    if (im) *im = e.amplitude.imag();
  });
}

revlab_status revlab_packet_to_json(const revlab_packet* packet, char** out) {
  return guard([&] {
    require(packet && out, "null pointer");
    *out = duplicate(revlab::to_json(packet->packet).dump(2));
  });
}

void revlab_packet_free(revlab_packet* packet) { delete packet; }

revlab_status revlab_autocorrelation(const revlab_spectrum* spectrum, const revlab_packet* packet,
                                     revlab_phase_mode mode, int order, const double* times,
                                     size_t count, revlab_trace** out) {
  return guard([&] {
    require(spectrum && packet && out && (times || count == 0), "null pointer");
    const auto phase = make_phase(spectrum->model, packet->packet, mode, order);
    *out = new revlab_trace{revlab::autocorrelation(spectrum->model, packet->packet, phase,
                                                    std::span<const double>(times, count))};
  });
}

revlab_status revlab_autocorrelation_uniform(const revlab_spectrum* spectrum,
                                             const revlab_packet* packet, revlab_phase_mode mode,
                                             int order, double t0, double t1, size_t count,
                                             revlab_trace** out) {
  return guard([&] {
    require(spectrum && packet && out, "null pointer");
    require(count >= 2 && t1 > t0, "uniform grid needs count >= 2 and t1 > t0");
    const auto grid = revlab::linear_grid(t0, t1, count);
    const auto phase = make_phase(spectrum->model, packet->packet, mode, order);
    *out = new revlab_trace{revlab::autocorrelation(spectrum->model, packet->packet, phase, grid)};
  });
}

size_t revlab_trace_size(const revlab_trace* trace) { return trace ? trace->trace.size() : 0; }

revlab_status revlab_trace_sample(const revlab_trace* trace, size_t i, double* t, double* re,
                                  double* im) {
  return guard([&] {
    require(trace != nullptr, "null pointer");
    require(i < trace->trace.size(), "sample index out of range");
    if (t) *t = trace->trace.times[i];
    if (re) *re = trace->trace.amplitude[i].real();
    if (im) *im = trace->trace.amplitude[i].imag();
  });
}

revlab_status revlab_trace_to_csv(const revlab_trace* trace, char** out) {
  return guard([&] {
    require(trace && out, "null pointer");
    *out = duplicate(revlab::trace_csv(trace->trace));
  });
}

void revlab_trace_free(revlab_trace* trace) { delete trace; }

revlab_status revlab_predict(const revlab_spectrum* spectrum, double center, int max_q_rev,
                             int max_q_sr, char** json, char** table) {
  return guard([&] {
    require(spectrum && json, "null pointer");
    const auto report =
        revlab::predict_revivals(revlab::time_scales(spectrum->model, center), max_q_rev, max_q_sr);
    *json = duplicate(revlab::to_json(report).dump(2));
    if (table) *table = duplicate(revlab::revival_table(report));
  });
}

revlab_status revlab_detect(const revlab_spectrum* spectrum, double center,
                            const revlab_trace* trace, char** json, char** table) {
  return guard([&] {
    require(spectrum && trace && json, "null pointer");
    const auto report =
        revlab::detect_structure(trace->trace, revlab::time_scales(spectrum->model, center));
    *json = duplicate(revlab::to_json(report).dump(2));
    if (table) *table = duplicate(revlab::revival_table(report));
  });
}

revlab_status revlab_stark_decompose(const revlab_stark_request* request, char** json) {
  return guard([&] {
    require(request && json, "null pointer");
    require(request->ratio_s != 0 && request->fraction_q != 0, "zero denominator");
    const revlab::Rational ratio(request->ratio_r, request->ratio_s);
    const revlab::Rational fraction(request->fraction_p, request->fraction_q);
    const auto d = revlab::stark_decompose(request->nbar, ratio, fraction, request->sigma_n,
                                           request->sigma_k, request->window);
    revlab::Json j;
    j["field"] = revlab::to_json(d.setup.tuning);
    j["time_scales"] = revlab::to_json(d.setup.scales);
    j["full_revival"] = d.setup.full_revival();
    j["expansion"] = revlab::to_json(d.expansion, d.setup.scales);
    j["reconstruction_max_error"] = d.reconstruction_error;
    j["antiperiodicity"] = {{"samples", d.antiperiodicity.samples},
                            {"odd_deviation", d.antiperiodicity.odd_deviation},
                            {"even_deviation", d.antiperiodicity.even_deviation},
                            {"mixed_antiperiodic_deviation",
                             d.antiperiodicity.mixed_antiperiodic_deviation},
                            {"mixed_periodic_deviation", d.antiperiodicity.mixed_periodic_deviation}};
    j["sector_norms"] = {{"odd", d.split.odd.norm_squared()}, {"even", d.split.even.norm_squared()}};
    *json = duplicate(j.dump(2));
  });
}

revlab_status revlab_stark_nodes(const revlab_stark_request* request, double half_width,
                                 int samples_per_half_period, char** json, char** csv) {
  return guard([&] {
    require(request && json, "null pointer");
    require(request->ratio_s != 0 && request->fraction_q != 0, "zero denominator");
    const auto setup =
        revlab::stark_setup(request->nbar, revlab::Rational(request->ratio_r, request->ratio_s));
    const auto packet = revlab::build_stark_packet(setup.model, request->nbar, request->sigma_n,
                                                   request->sigma_k, request->window);
    const auto a = revlab::stark_node_analysis(
        setup, packet, revlab::Rational(request->fraction_p, request->fraction_q), half_width,
        samples_per_half_period);
    revlab::Json j;
    j["center"] = a.center;
    j["half_period"] = a.half_period;
    j["full"] = revlab::to_json(a.full_nodes);
    j["odd"] = revlab::to_json(a.odd_nodes);
    j["even"] = revlab::to_json(a.even_nodes);
    *json = duplicate(j.dump(2));
    if (csv) {
      std::string text = "t_atomic,t_si,abs2_full,abs2_odd,abs2_even\n";
      for (std::size_t i = 0; i < a.full.size(); ++i) {
        const double t = a.full.times[i];
        text += revlab::format_number(t) + ',' +
                revlab::format_number(revlab::units::to_seconds(t)) + ',' +
                revlab::format_number(std::norm(a.full.amplitude[i])) + ',' +
                revlab::format_number(std::norm(a.odd.amplitude[i])) + ',' +
                revlab::format_number(std::norm(a.even.amplitude[i])) + '\n';
      }
      *csv = duplicate(text);
    }
  });
}

revlab_status revlab_squeezed_fit(double nbar, double r_out, int l, revlab_squeezed* out) {
  return guard([&] {
    require(out != nullptr, "null pointer");
    revlab::FitTarget target;
    target.nbar = nbar;
    target.r_out = r_out > 0.0 ? r_out : 0.0;
    target.l = l;
    const auto p = revlab::fit(target);
    *out = {p.alpha, p.gamma0, p.gamma1, p.l};
  });
}

revlab_status revlab_squeezed_to_json(const revlab_squeezed* params, char** out) {
  return guard([&] {
    require(params && out, "null pointer");
    const auto p = revlab::SqueezedStateParams::make(params->alpha, params->gamma0,
                                                     params->gamma1, params->l);
    *out = duplicate(revlab::to_json(p).dump(2));
  });
}

revlab_status revlab_squeezed_moment(const revlab_squeezed* params, int m, double* out) {
  return guard([&] {
    require(params && out, "null pointer");
    *out = revlab::SqueezedStateParams::make(params->alpha, params->gamma0, params->gamma1,
                                             params->l)
               .moment(m);
  });
}

revlab_status revlab_squeezed_project(const revlab_squeezed* params, int n_min, int n_max,
                                      double min_captured, revlab_packet** out, double* captured) {
  return guard([&] {
    require(params && out, "null pointer");
    const auto p = revlab::SqueezedStateParams::make(params->alpha, params->gamma0,
                                                     params->gamma1, params->l);
    auto proj = revlab::project(p, n_min, n_max, min_captured);
    if (captured) *captured = proj.captured_norm;
    *out = new revlab_packet{std::move(proj.packet)};
  });
}

revlab_status revlab_squeezed_evolve(const revlab_packet* packet, const double* times,
                                     size_t count, double r_max, size_t points,
                                     revlab_series** out) {
  return guard([&] {
    require(packet && out && (times || count == 0), "null pointer");
    revlab::RadialGrid grid;
    if (r_max > 0.0) grid.r_max = r_max;
    if (points > 0) grid.points = points;
    *out = new revlab_series{revlab::evolve_uncertainty(
        packet->packet, std::span<const double>(times, count), grid)};
  });
}

size_t revlab_series_size(const revlab_series* series) {
  return series ? series->samples.size() : 0;
}

revlab_status revlab_series_sample(const revlab_series* series, size_t i,
                                   revlab_uncertainty* out) {
  return guard([&] {
    require(series && out, "null pointer");
    require(i < series->samples.size(), "sample index out of range");
    const auto& s = series->samples[i];
    *out = {s.t, s.mean_r, s.delta_r, s.mean_p, s.delta_p, s.product};
  });
}

revlab_status revlab_series_to_csv(const revlab_series* series, char** out) {
  return guard([&] {
    require(series && out, "null pointer");
    *out = duplicate(revlab::uncertainty_csv(series->samples));
  });
}

revlab_status revlab_series_period(const revlab_series* series, double* period, int* found) {
  return guard([&] {
    require(series && period && found, "null pointer");
    std::vector<double> t, v;
    for (const auto& s : series->samples) {
      t.push_back(s.t);
      v.push_back(s.product);
    }
    const auto p = revlab::oscillation_period(t, v);
    *found = p ? 1 : 0;
    *period = p.value_or(0.0);
  });
}

void revlab_series_free(revlab_series* series) { delete series; }

}  // extern "C"
