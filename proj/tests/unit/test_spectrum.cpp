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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "revlab/spectrum.hpp"
#include "support.hpp"

using namespace revlab;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

TabulatedSpectrum table_of(int first, int last, double (*f)(int)) {
  std::vector<double> e;
  for (int n = first; n <= last; ++n) e.push_back(f(n));
  return TabulatedSpectrum(first, e);
}

}  // namespace

TEST_SUITE("spectrum") {
  TEST_CASE("closed-form energies") {
    CHECK(energy(HydrogenSpectrum{}, {1, 0, 0}) == -0.5);
    // Oracle values from arbitrary-precision evaluation.
    CHECK(energy(StarkSpectrum{1.2559e-7}, {24, 1, 0}) ==
          Approx(-8.635343155555556e-4).epsilon(1e-13));
    QuantumDefectSpectrum qd;
    qd.defects = {{1, 1.35}};
    CHECK(energy(qd, {30, 0, 1}) == Approx(-6.091450953159788e-4).epsilon(1e-13));
    CHECK(energy(table_of(3, 9, [](int n) { return 0.1 * n; }), {5, 0, 0}) ==
          Approx(0.5));
  }

  TEST_CASE("index validation") {
    const SpectrumModel stark = StarkSpectrum{1e-7};
    CHECK_NOTHROW(validate_index(stark, {24, 1, 0}));
    CHECK(error_of([&] { validate_index(stark, {24, 2, 0}); }) == ErrorCode::kInvalidIndex);
    CHECK(error_of([&] { validate_index(stark, {24, 25, 0}); }) == ErrorCode::kInvalidIndex);
    QuantumDefectSpectrum qd;
    qd.defects = {{0, 3.2}};
    qd.l = 0;
    CHECK(error_of([&] { energy(qd, {3, 0, 0}); }) == ErrorCode::kInvalidIndex);
    const SpectrumModel table = table_of(1, 10, [](int n) { return 1.0 * n; });
    CHECK(error_of([&] { energy(table, {11, 0, 0}); }) == ErrorCode::kOutOfTable);
  }

  TEST_CASE("hydrogen time scales at nbar = 45") {
    const auto ts = time_scales(HydrogenSpectrum{}, 45.0);
    CHECK(*ts.t_cl_n == Approx(2.0 * kPi * 45 * 45 * 45).epsilon(1e-14));
    CHECK(*ts.t_cl_n == Approx(5.7256e5).epsilon(1e-4));
    CHECK(*ts.t_rev_n / *ts.t_cl_n == Approx(30.0).epsilon(1e-13));
    CHECK(*ts.t_sr / *ts.t_rev_n == Approx(33.75).epsilon(1e-13));
    CHECK_FALSE(ts.two_index);
  }

  TEST_CASE("quantum-defect scales use the effective center") {
    QuantumDefectSpectrum qd;
    qd.defects = {{1, 0.4}};
    const auto ts = time_scales(qd, 45.0);
    REQUIRE(ts.effective_center);
    const double x = 45.0 - 0.4;
    CHECK(*ts.t_cl_n == Approx(2.0 * kPi * x * x * x).epsilon(1e-13));
  }

  TEST_CASE("quadratic tables have no superrevival scale") {
    const auto ts = time_scales(table_of(1, 60, [](int n) { return 1e-4 * n * n; }), 30.0);
    CHECK(ts.t_cl_n);
    CHECK(ts.t_rev_n);
    CHECK_FALSE(ts.t_sr);
  }

  TEST_CASE("flat tables are degenerate") {
    const SpectrumModel flat = table_of(1, 20, [](int) { return -1.0; });
    CHECK(error_of([&] { time_scales(flat, 10.0); }) == ErrorCode::kDegenerateSpectrum);
  }

  TEST_CASE("tabulated center must leave room for the stencil") {
    const SpectrumModel t = table_of(1, 20, [](int n) { return -0.5 / (n * n); });
    CHECK_THROWS_AS(time_scales(t, 2.0), Error);
  }

  TEST_CASE("analytic hydrogen scales match a tabulation") {
    const SpectrumModel table = table_of(1, 400, [](int n) { return -0.5 / (1.0 * n * n); });
    for (double center : {45.0, 80.0, 120.0, 250.0}) {
      CAPTURE(center);
      const auto a = time_scales(HydrogenSpectrum{}, center);
      const auto t = time_scales(table, center);
      CHECK(std::abs(*t.t_cl_n / *a.t_cl_n - 1.0) < 1e-6);
      CHECK(std::abs(*t.t_rev_n / *a.t_rev_n - 1.0) < 1e-6);
      // The third-difference stencil error falls off as nbar^-4.
      if (center >= 100.0) CHECK(std::abs(*t.t_sr / *a.t_sr - 1.0) < 1e-6);
    }
  }

  TEST_CASE("Stark scales for the tuned nbar = 24 field") {
    const auto tuning = tune_field(24, Rational(1, 12));
    const auto ts = time_scales(StarkSpectrum{tuning.field}, 24.0);
    CHECK(ts.two_index);
    CHECK(*ts.t_rev_n == Approx(4.0 * kPi / 3.0 * std::pow(24.0, 4)).epsilon(1e-13));
    CHECK(*ts.t_rev_nk == Approx(2.0 * kPi / (3.0 * tuning.field)).epsilon(1e-13));
    CHECK(*ts.t_rev_n / *ts.t_rev_nk == Approx(1.0 / 12.0).epsilon(1e-13));
    CHECK_FALSE(ts.t_rev_k);
    const auto ratio = commensurability(*ts.t_cl_n, *ts.t_cl_k);
    REQUIRE(ratio);
    CHECK(*ratio == Rational(1, 8));
    CHECK(*ratio < Rational(3, 16));
  }

  TEST_CASE("field tuning") {
    const auto t24 = tune_field(24, Rational(1, 12));
    CHECK(t24.field_exact == Rational(1, 24LL * 24 * 24 * 24 * 24));
    CHECK(t24.field == Approx(1.2559e-7).epsilon(1e-4));
    CHECK(t24.field_v_per_cm == Approx(645.8).epsilon(5e-4));
    CHECK(t24.below_critical);
    CHECK(t24.critical_field == Approx(1.0 / (16.0 * std::pow(24.0, 4))));
    const auto t30 = tune_field(30, Rational(1, 16));
    CHECK(t30.field_exact == Rational(1, 32LL * 30 * 30 * 30 * 30));
    const auto ts = time_scales(StarkSpectrum{t30.field}, 30.0);
    CHECK(*ts.t_rev_n / *ts.t_rev_nk == Approx(1.0 / 16.0).epsilon(1e-13));
    CHECK(error_of([] { tune_field(24, Rational(1, 8)); }) == ErrorCode::kRatioExceedsBound);
    CHECK(error_of([] { tune_field(24, Rational(1, 4)); }) == ErrorCode::kRatioExceedsBound);
  }

  TEST_CASE("tuning reproduces the ratio exactly") {
    for (std::int64_t n : {10, 24, 37}) {
      for (const Rational r : {Rational(1, 12), Rational(1, 9), Rational(2, 17)}) {
        const auto t = tune_field(n, r);
        const auto e = exact_stark_scales(n, t.field_exact);
        CHECK(e.t_rev_n / e.t_rev_nk == r);
      }
    }
  }

  TEST_CASE("commensurability") {
    CHECK(commensurability(3.0, 12.0) == Rational(1, 4));
    CHECK_FALSE(commensurability(kPi, 1.0, 1e-12, 10));
    CHECK(commensurability(22.0, 7.0, 1e-12, 10) == Rational(22, 7));
  }

  TEST_CASE("scaling multiplies every time scale") {
    const auto ts = time_scales(HydrogenSpectrum{}, 30.0);
    const auto s = ts.scaled(2.5);
    CHECK(*s.t_cl_n == Approx(2.5 * *ts.t_cl_n));
    CHECK(*s.t_rev_n == Approx(2.5 * *ts.t_rev_n));
    CHECK(*s.t_sr == Approx(2.5 * *ts.t_sr));
  }

  TEST_CASE("exact hydrogen ratios over 100 centers") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> pick(2, 5000);
    for (int i = 0; i < 100; ++i) {
      const auto n = pick(rng);
      const auto s = exact_hydrogen_scales(n);
      CHECK(s.t_rev / s.t_cl == Rational(2 * n, 3));
      CHECK(s.t_sr / s.t_rev == Rational(3 * n, 4));
    }
  }

  TEST_CASE("random quadratic spectra never define t_sr") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> coef(-1e-3, 1e-3);
    for (int i = 0; i < 100; ++i) {
      const double a = coef(rng), b = coef(rng), c = coef(rng);
      if (std::abs(a) < 1e-6) continue;
      std::vector<double> e;
      for (int n = 1; n <= 40; ++n) e.push_back(a * n * n + b * n + c);
      const double center = 20.0;
      if (std::abs(2.0 * a * center + b) < 1e-6) continue;
      const auto ts = time_scales(TabulatedSpectrum(1, e), center);
      CHECK_FALSE(ts.t_sr);
    }
  }
}
