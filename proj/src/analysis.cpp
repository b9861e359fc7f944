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

#include "revlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "revlab/error.hpp"

namespace revlab {

namespace {

constexpr const char* kModule = "analysis";

bool is_revival_level(RevivalKind kind) {
  return kind == RevivalKind::kFractionalRevival || kind == RevivalKind::kFullRevival;
}

bool is_superrevival_level(RevivalKind kind) {
  return kind == RevivalKind::kFractionalSuperrevival ||
         kind == RevivalKind::kFullSuperrevival;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

std::string_view revival_kind_name(RevivalKind kind) {
  switch (kind) {
    case RevivalKind::kClassicalPeriod: return "classical_period";
    case RevivalKind::kFractionalRevival: return "fractional_revival";
    case RevivalKind::kFullRevival: return "full_revival";
    case RevivalKind::kFractionalSuperrevival: return "fractional_superrevival";
    case RevivalKind::kFullSuperrevival: return "full_superrevival";
  }
  return "unknown";
}

RevivalReport predict_revivals(const TimeScaleSet& scales, int max_q_rev, int max_q_sr) {
  if (!scales.t_cl_n) {
    fail(ErrorCode::kUndefinedScale, kModule, "predictions need a classical period");
  }
  const double t_cl = *scales.t_cl_n;
  RevivalReport report;
  report.predicted.push_back({RevivalKind::kClassicalPeriod, t_cl, 1, 1, t_cl});

  if (scales.t_rev_n) {
    const double t_rev = *scales.t_rev_n;
    for (int q = 2; q <= max_q_rev; ++q) {
      // q copies for odd q; for even q the copies pair up, leaving q/2.
      const double copies = q % 2 == 1 ? q : q / 2.0;
      for (int p = 1; p < q; ++p) {
        if (std::gcd(p, q) != 1) continue;
        report.predicted.push_back({RevivalKind::kFractionalRevival,
                                    t_rev * p / q, p, q, t_cl / copies});
      }
    }
    report.predicted.push_back({RevivalKind::kFullRevival, t_rev, 1, 1, t_cl});

    if (scales.t_sr) {
      const double t_sr = *scales.t_sr;
      for (int q = 3; q <= max_q_sr; q += 3) {
        const RevivalKind kind =
            q == 6 ? RevivalKind::kFullSuperrevival : RevivalKind::kFractionalSuperrevival;
        report.predicted.push_back({kind, t_sr / q, 1, q, 3.0 * t_rev / q});
      }
    }
  }
  std::stable_sort(report.predicted.begin(), report.predicted.end(),
                   [](const auto& a, const auto& b) { return a.time < b.time; });
  return report;
}

std::vector<DetectedPeak> find_peaks(std::span<const double> times,
                                     std::span<const double> values,
                                     const PeakOptions& options) {
  if (times.size() != values.size()) {
    fail(ErrorCode::kInvalidArgument, kModule, "times and values differ in length");
  }
  const std::size_t n = values.size();
  std::vector<DetectedPeak> raw;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double v = values[i];
    if (v < options.min_height || !(v > values[i - 1]) || v < values[i + 1]) continue;
    double left_min = v;
    for (std::size_t j = i; j-- > 0;) {
      if (values[j] > v) break;
      left_min = std::min(left_min, values[j]);
    }
    double right_min = v;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (values[j] > v) break;
      right_min = std::min(right_min, values[j]);
    }
    const double prominence = v - std::max(left_min, right_min);
    if (prominence < options.min_prominence) continue;

    DetectedPeak peak;
    peak.sample = i;
    peak.time = times[i];
    peak.height = v;
    peak.prominence = prominence;
    const double y0 = values[i - 1], y1 = v, y2 = values[i + 1];
    const double curvature = y0 - 2.0 * y1 + y2;
    if (curvature < 0.0) {
      const double delta = 0.5 * (y0 - y2) / curvature;
      if (std::abs(delta) <= 1.0) {
        const double h = 0.5 * (times[i + 1] - times[i - 1]);
        peak.time = times[i] + delta * h;
        peak.height = y1 - 0.25 * (y0 - y2) * delta;
      }
    }
    raw.push_back(peak);
  }

  std::vector<DetectedPeak> merged;
  for (const auto& peak : raw) {
    if (!merged.empty() && peak.time - merged.back().time < options.merge_distance) {
      if (peak.height > merged.back().height) merged.back() = peak;
      continue;
    }
    merged.push_back(peak);
  }
  return merged;
}

std::optional<double> median_peak_spacing(std::span<const DetectedPeak> peaks,
                                          double start, double end) {
  std::vector<double> inside;
  for (const auto& p : peaks) {
    if (p.time >= start && p.time <= end) inside.push_back(p.time);
  }
  if (inside.size() < 2) return std::nullopt;
  std::sort(inside.begin(), inside.end());
  std::vector<double> gaps;
  for (std::size_t i = 1; i < inside.size(); ++i) gaps.push_back(inside[i] - inside[i - 1]);
  return median(gaps);
}

std::optional<double> envelope_period(const AutocorrelationTrace& trace, double start,
                                      double end, double bin, int* recurrences) {
  if (recurrences) *recurrences = 0;
  if (!(bin > 0.0) || !(end > start)) {
    fail(ErrorCode::kInvalidArgument, kModule, "envelope needs a positive bin and window");
  }
  const auto& t = trace.times;
  const auto bins = static_cast<std::size_t>(std::floor((end - start) / bin));
  if (bins < 3) return std::nullopt;

  std::vector<double> env_time, env_value;
  std::size_t i = static_cast<std::size_t>(
      std::lower_bound(t.begin(), t.end(), start) - t.begin());
  for (std::size_t b = 0; b < bins; ++b) {
    const double hi = start + bin * static_cast<double>(b + 1);
    double best = -1.0, best_t = 0.0;
    for (; i < t.size() && t[i] < hi; ++i) {
      const double v = std::norm(trace.amplitude[i]);
      if (v > best) {
        best = v;
        best_t = t[i];
      }
    }
    if (best < 0.0) {
      fail(ErrorCode::kInsufficientResolution, kModule,
           "trace has empty bins inside the envelope window");
    }
    env_time.push_back(best_t);
    env_value.push_back(best);
  }

  const double top = *std::max_element(env_value.begin(), env_value.end());
  const double threshold = 0.5 * (median(env_value) + top);
  std::vector<double> events;
  for (std::size_t b = 0; b < bins;) {
    if (env_value[b] < threshold) {
      ++b;
      continue;
    }
    std::size_t best = b;
    for (; b < bins && env_value[b] >= threshold; ++b) {
      if (env_value[b] > env_value[best]) best = b;
    }
    events.push_back(env_time[best]);
  }
  if (recurrences) *recurrences = static_cast<int>(events.size());
  if (events.size() < 2) return std::nullopt;
  return (events.back() - events.front()) / static_cast<double>(events.size() - 1);
}

RevivalReport detect_structure(const AutocorrelationTrace& trace,
                               const TimeScaleSet& scales, const DetectOptions& options) {
  RevivalReport report = predict_revivals(scales);
  const double t_cl = *scales.t_cl_n;
  if (trace.size() < 3 || trace.times.back() - trace.times.front() < t_cl) {
    fail(ErrorCode::kTraceTooShort, kModule,
         "trace must span at least one classical period");
  }
  const double t0 = trace.times.front();
  const double t1 = trace.times.back();
  const std::vector<double> values = trace.abs2();
  report.peaks = find_peaks(trace.times, values,
                            {options.min_height, options.min_prominence,
                             options.merge_fraction * t_cl});

  const double window = scales.t_rev_n ? options.revival_window * *scales.t_rev_n : 10.0 * t_cl;
  for (auto& peak : report.peaks) {
    peak.local_period =
        median_peak_spacing(report.peaks, peak.time - 0.5 * window, peak.time + 0.5 * window);
  }

  const double tolerance =
      scales.t_rev_n ? options.match_fraction * *scales.t_rev_n : 0.25 * t_cl;
  for (std::size_t d = 0; d < report.peaks.size(); ++d) {
    std::size_t best = 0;
    double best_offset = 0.0;
    bool found = false;
    for (std::size_t p = 0; p < report.predicted.size(); ++p) {
      const double offset = report.peaks[d].time - report.predicted[p].time;
      if (!found || std::abs(offset) < std::abs(best_offset)) {
        best = p;
        best_offset = offset;
        found = true;
      }
    }
    if (found && std::abs(best_offset) <= tolerance) {
      report.matches.push_back({best, d, best_offset});
    }
  }

  for (std::size_t p = 0; p < report.predicted.size(); ++p) {
    const PredictedRevival& pred = report.predicted[p];
    PeriodEstimate est;
    est.predicted = p;
    if (is_revival_level(pred.kind)) {
      est.window_start = pred.time - 0.5 * window;
      est.window_end = pred.time + 0.5 * window;
      if (est.window_start < t0 || est.window_end > t1) continue;
      const auto spacing =
          median_peak_spacing(report.peaks, est.window_start, est.window_end);
      if (!spacing) continue;
      est.period = *spacing;
      est.peaks_used = static_cast<int>(std::count_if(
          report.peaks.begin(), report.peaks.end(), [&](const DetectedPeak& pk) {
            return pk.time >= est.window_start && pk.time <= est.window_end;
          }));
    } else if (is_superrevival_level(pred.kind)) {
      const double half = options.superrevival_window * pred.local_period;
      est.window_start = pred.time - half;
      est.window_end = pred.time + half;
      if (est.window_start < t0 || est.window_end > t1) continue;
      int used = 0;
      const auto period = envelope_period(trace, est.window_start, est.window_end, t_cl, &used);
      if (!period) continue;
      est.period = *period;
      est.peaks_used = used;
    } else {
      continue;
    }
    report.periods.push_back(est);
  }
  return report;
}

std::string spectrum_verdict(bool classical, bool revival, bool superrevival) {
  if (!classical) return "degenerate: no classical period";
  if (revival && superrevival) {
    return "classical period, full and fractional revivals, full and fractional "
           "superrevivals";
  }
  if (revival) return "perfect full and fractional revivals and no superrevivals";
  if (superrevival) return "classical period and superrevival-scale dispersion, no revivals";
  return "classical period only; the packet never disperses";
}

SpectrumClass classify_spectrum(const SpectrumModel& model, double center) {
  SpectrumClass out;
  out.scales = time_scales(model, center);
  out.classical = out.scales.t_cl_n.has_value();
  out.revival = out.scales.t_rev_n.has_value();
  out.superrevival = out.scales.t_sr.has_value();
  out.verdict = spectrum_verdict(out.classical, out.revival, out.superrevival);
  return out;
}

}  // namespace revlab
