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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "revlab/analysis.hpp"
#include "support.hpp"

using namespace revlab;
using doctest::Approx;

namespace {

const PredictedRevival* find_prediction(const RevivalReport& r, RevivalKind kind, std::int64_t p,
                                        std::int64_t q) {
  for (const auto& e : r.predicted) {
    if (e.kind == kind && e.p == p && e.q == q) return &e;
  }
  return nullptr;
}

TabulatedSpectrum polynomial(double a, double b) {
  std::vector<double> e;
  for (int n = 1; n <= 80; ++n) e.push_back(a * n * n + b * n);
  return TabulatedSpectrum(1, e);
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("hydrogen predictions") {
    const auto ts = time_scales(HydrogenSpectrum{}, 45.0);
    const auto r = predict_revivals(ts);
    REQUIRE(std::is_sorted(r.predicted.begin(), r.predicted.end(),
                           [](const auto& a, const auto& b) { return a.time < b.time; }));
    const double t_cl = *ts.t_cl_n, t_rev = *ts.t_rev_n, t_sr = *ts.t_sr;

    const auto* full = find_prediction(r, RevivalKind::kFullRevival, 1, 1);
    REQUIRE(full);
    CHECK(full->time == Approx(t_rev));
    CHECK(full->local_period == Approx(t_cl));

    const auto* half = find_prediction(r, RevivalKind::kFractionalRevival, 1, 2);
    REQUIRE(half);
    CHECK(half->time == Approx(0.5 * t_rev));
    CHECK(half->local_period == Approx(t_cl));

    const auto* third = find_prediction(r, RevivalKind::kFractionalRevival, 1, 3);
    REQUIRE(third);
    CHECK(third->local_period == Approx(t_cl / 3.0));

    const auto* super = find_prediction(r, RevivalKind::kFullSuperrevival, 1, 6);
    REQUIRE(super);
    CHECK(super->time == Approx(t_sr / 6.0));
    CHECK(super->local_period == Approx(0.5 * t_rev));
    for (int q : {3, 9, 12}) {
      const auto* f = find_prediction(r, RevivalKind::kFractionalSuperrevival, 1, q);
      REQUIRE(f);
      CHECK(f->local_period == Approx(3.0 * t_rev / q));
    }
  }

  TEST_CASE("peak finding refines to the true maximum") {
    std::vector<double> t, v;
    for (int i = 0; i <= 2000; ++i) {
      const double x = 0.01 * i;
      t.push_back(x);
      v.push_back(std::exp(-(x - 5.003) * (x - 5.003)) + 0.5 * std::exp(-4.0 * (x - 12.0) * (x - 12.0)));
    }
    const auto peaks = find_peaks(t, v, {});
    REQUIRE(peaks.size() == 2);
    CHECK(peaks[0].time == Approx(5.003).epsilon(1e-4));
    CHECK(peaks[0].height == Approx(1.0).epsilon(1e-4));
    CHECK(peaks[1].time == Approx(12.0).epsilon(1e-4));
    PeakOptions strict;
    strict.min_height = 0.8;
    CHECK(find_peaks(t, v, strict).size() == 1);
  }

  TEST_CASE("median spacing") {
    std::vector<DetectedPeak> peaks(5);
    const double times[] = {0.0, 1.0, 2.1, 3.0, 10.0};
    for (int i = 0; i < 5; ++i) peaks[i].time = times[i];
    CHECK(*median_peak_spacing(peaks, -1.0, 3.5) == Approx(1.0));
    CHECK_FALSE(median_peak_spacing(peaks, 5.0, 9.0));
  }

  TEST_CASE("envelope period of a pulse train") {
    AutocorrelationTrace trace;
    for (int i = 0; i < 20000; ++i) {
      const double t = 0.01 * i;
      const double phase = std::fmod(t, 7.0) - 3.5;
      trace.times.push_back(t);
      trace.amplitude.push_back(Complex(std::exp(-phase * phase), 0.0));
    }
    int recurrences = 0;
    const auto p = envelope_period(trace, 0.0, 199.0, 1.0, &recurrences);
    REQUIRE(p);
    CHECK(*p == Approx(7.0).epsilon(0.02));
    CHECK(recurrences >= 20);
  }

  TEST_CASE("detection near the revivals of a hydrogen packet") {
    const SpectrumModel h = HydrogenSpectrum{};
    const auto ts = time_scales(h, 45.0);
    const auto p = build_packet(h, 45.0, 2.5, default_window(2.5));
    const auto grid = linear_grid(0.0, 1.1 * *ts.t_rev_n,
                                  static_cast<std::size_t>(1.1 * 30 * 64) + 1);
    const auto trace = autocorrelation(h, p, PhaseModel::truncated(ts, 2), grid);
    const auto r = detect_structure(trace, ts);
    bool full = false;
    for (const auto& m : r.matches) {
      if (r.predicted[m.predicted].kind == RevivalKind::kFullRevival) {
        full = true;
        CHECK(std::abs(m.offset) < 0.02 * *ts.t_rev_n);
        CHECK(r.peaks[m.detected].height > 0.99);
      }
    }
    CHECK(full);
    bool half = false;
    for (const auto& e : r.periods) {
      const auto& pred = r.predicted[e.predicted];
      if (pred.kind == RevivalKind::kFractionalRevival && pred.q == 2) {
        half = true;
        CHECK(e.period == Approx(*ts.t_cl_n).epsilon(0.05));
      }
    }
    CHECK(half);
  }

  TEST_CASE("short traces are rejected") {
    const auto ts = time_scales(HydrogenSpectrum{}, 45.0);
    AutocorrelationTrace trace;
    trace.times = linear_grid(0.0, 0.5 * *ts.t_cl_n, 100);
    trace.amplitude.assign(100, Complex(1.0, 0.0));
    CHECK(error_of([&] { detect_structure(trace, ts); }) == ErrorCode::kTraceTooShort);
  }

  TEST_CASE("classification verdicts") {
    const auto linear = classify_spectrum(polynomial(0.0, 1e-3), 40.0);
    CHECK(linear.classical);
    CHECK_FALSE(linear.revival);
    CHECK(linear.verdict == "classical period only; the packet never disperses");

    const auto quadratic = classify_spectrum(polynomial(1e-4, 0.0), 40.0);
    CHECK(quadratic.revival);
    CHECK_FALSE(quadratic.superrevival);
    CHECK(quadratic.verdict == "perfect full and fractional revivals and no superrevivals");

    const auto hydrogen = classify_spectrum(HydrogenSpectrum{}, 45.0);
    CHECK(hydrogen.superrevival);
    CHECK(hydrogen.verdict ==
          "classical period, full and fractional revivals, full and fractional superrevivals");
  }
}
