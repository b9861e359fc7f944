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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "revlab/packet.hpp"
#include "revlab/spectrum.hpp"

namespace revlab {

enum class RevivalKind {
  kClassicalPeriod,
  kFractionalRevival,
  kFullRevival,
  kFractionalSuperrevival,
  kFullSuperrevival,
};

std::string_view revival_kind_name(RevivalKind kind);

struct PredictedRevival {
  RevivalKind kind = RevivalKind::kClassicalPeriod;
  double time = 0.0;
  std::int64_t p = 1;
  std::int64_t q = 1;
  double local_period = 0.0;  // expected periodicity of |A|^2 near `time`
};

struct DetectedPeak {
  double time = 0.0;
  double height = 0.0;  // |A|^2 at the refined maximum
  double prominence = 0.0;
  std::size_t sample = 0;
  std::optional<double> local_period;
};

/// Detected peak paired with the nearest prediction.
struct RevivalMatch {
  std::size_t predicted = 0;
  std::size_t detected = 0;
  double offset = 0.0;  // detected - predicted time
};

/// Local periodicity measured around one prediction.
struct PeriodEstimate {
  std::size_t predicted = 0;
  double window_start = 0.0;
  double window_end = 0.0;
  double period = 0.0;
  int peaks_used = 0;
};

struct RevivalReport {
  std::vector<PredictedRevival> predicted;
  std::vector<DetectedPeak> peaks;
  std::vector<RevivalMatch> matches;
  std::vector<PeriodEstimate> periods;
};

/// Classical period, fractional revivals p/q t_rev (q <= max_q_rev), the full
/// revival, and superrevivals t_sr/q for q a multiple of 3 up to max_q_sr.
/// Levels whose time scale is undefined are left out.
RevivalReport predict_revivals(const TimeScaleSet& scales, int max_q_rev = 8,
                               int max_q_sr = 12);

struct PeakOptions {
  double min_height = 0.1;
  double min_prominence = 0.05;
  double merge_distance = 0.0;  // peaks closer than this collapse to the highest
};

/// Local maxima of `values` passing the height and prominence thresholds,
/// refined by a parabola through the three samples around each maximum.
std::vector<DetectedPeak> find_peaks(std::span<const double> times,
                                     std::span<const double> values,
                                     const PeakOptions& options);

struct DetectOptions {
  double min_height = 0.1;
  double min_prominence = 0.05;
  double merge_fraction = 0.25;      // of T_cl
  double match_fraction = 0.02;      // of t_rev
  double revival_window = 0.1;       // of t_rev, for revival-level periods
  double superrevival_window = 2.5;  // half-width in predicted periods
};

/// Peaks, their local periodicity, and matches against predict_revivals.
/// Throws kTraceTooShort when the trace spans less than one classical period.
RevivalReport detect_structure(const AutocorrelationTrace& trace,
                               const TimeScaleSet& scales,
                               const DetectOptions& options = {});

/// Median gap between detected peaks inside [start, end]. Needs two peaks.
std::optional<double> median_peak_spacing(std::span<const DetectedPeak> peaks,
                                          double start, double end);

/// Long-time periodicity estimate for slowly modulated traces. |A|^2 is
/// reduced to its maximum over consecutive bins of width `bin`; runs of bins
/// above the midpoint between the median and the largest bin value are the
/// major recurrences, and their mean spacing is returned.
std::optional<double> envelope_period(const AutocorrelationTrace& trace, double start,
                                      double end, double bin, int* recurrences = nullptr);

struct SpectrumClass {
  bool classical = false;
  bool revival = false;
  bool superrevival = false;
  std::string verdict;
  TimeScaleSet scales;
};

std::string spectrum_verdict(bool classical, bool revival, bool superrevival);

SpectrumClass classify_spectrum(const SpectrumModel& model, double center);

}  // namespace revlab
