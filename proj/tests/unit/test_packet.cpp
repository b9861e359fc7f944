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
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "revlab/packet.hpp"
#include "support.hpp"

using namespace revlab;
using doctest::Approx;

TEST_SUITE("packet") {
  TEST_CASE("Gaussian weights") {
    const SpectrumModel h = HydrogenSpectrum{};
    const auto p = build_packet(h, 45.0, 2.5, default_window(2.5));
    CHECK(default_window(2.5) == 13);
    CHECK(p.entries.size() == 27);
    CHECK(p.norm_squared() == Approx(1.0).epsilon(1e-14));
    const double w45 = std::norm(p.entries[13].amplitude);
    for (const auto& e : p.entries) {
      const double dn = e.index.n - 45.0;
      CHECK(std::norm(e.amplitude) / w45 == Approx(std::exp(-dn * dn / (2 * 2.5 * 2.5))));
      CHECK(e.amplitude.imag() == 0.0);
      CHECK(e.amplitude.real() > 0.0);
    }
  }

  TEST_CASE("argument checks") {
    const SpectrumModel h = HydrogenSpectrum{};
    CHECK(error_of([&] { build_packet(h, 45.0, 0.0, 5); }) == ErrorCode::kInvalidArgument);
    CHECK(error_of([&] { build_packet(h, 0.5, 1.0, 5); }) == ErrorCode::kInvalidCenter);
    CHECK(error_of([&] { build_packet(StarkSpectrum{1e-7}, 20.0, 1.0, 5); }) ==
          ErrorCode::kInvalidArgument);
  }

  TEST_CASE("Stark packets respect the parity rule") {
    const SpectrumModel s = StarkSpectrum{1.2559e-7};
    const auto p = build_stark_packet(s, 24.0, 2.0, 2.0, 6);
    CHECK(p.two_index);
    CHECK(p.norm_squared() == Approx(1.0).epsilon(1e-14));
    for (const auto& e : p.entries) {
      CHECK((std::abs(e.index.k) % 2 == 0) == (e.index.n % 2 == 1));
      CHECK(std::abs(e.index.k) <= e.index.n - 1);
      CHECK_NOTHROW(validate_index(s, e.index));
    }
  }

  TEST_CASE("autocorrelation basics") {
    const SpectrumModel h = HydrogenSpectrum{};
    const auto p = build_packet(h, 45.0, 2.5, default_window(2.5));
    const auto ts = time_scales(h, 45.0);
    const std::vector<double> t0 = {0.0};
    CHECK(std::abs(autocorrelation(h, p, PhaseModel::exact(ts), t0).amplitude[0]) ==
          Approx(1.0));

    // First order is strictly periodic in T_cl; second order revives fully at t_rev.
    const std::vector<double> tcl = {*ts.t_cl_n, 7.0 * *ts.t_cl_n};
    const auto a1 = autocorrelation(h, p, PhaseModel::truncated(ts, 1), tcl);
    CHECK(std::abs(a1.amplitude[0]) == Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(a1.amplitude[1]) == Approx(1.0).epsilon(1e-12));
    const std::vector<double> trev = {*ts.t_rev_n};
    const auto a2 = autocorrelation(h, p, PhaseModel::truncated(ts, 2), trev);
    CHECK(std::abs(a2.amplitude[0]) == Approx(1.0).epsilon(1e-12));

  }

  TEST_CASE("third order improves on second order up to t_rev") {
    const SpectrumModel h = HydrogenSpectrum{};
    const auto ts = time_scales(h, 100.0);
    const auto p = build_packet(h, 100.0, 1.5, default_window(1.5));
    const auto grid = linear_grid(0.0, *ts.t_rev_n, 2001);
    const auto exact = autocorrelation(h, p, PhaseModel::exact(ts), grid).abs2();
    const auto second = autocorrelation(h, p, PhaseModel::truncated(ts, 2), grid).abs2();
    const auto third = autocorrelation(h, p, PhaseModel::truncated(ts, 3), grid).abs2();
    double err2 = 0.0, err3 = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      err2 = std::max(err2, std::abs(second[i] - exact[i]));
      err3 = std::max(err3, std::abs(third[i] - exact[i]));
    }
    CHECK(err3 < err2);
    CHECK(err3 < 0.02);
  }

  TEST_CASE("narrow and explicit windows") {
    const SpectrumModel h = HydrogenSpectrum{};
    const auto delta = build_packet(h, 24.0, 1e-6, 3);
    REQUIRE(delta.entries.size() == 1);
    CHECK(delta.entries[0].index.n == 24);
    CHECK(delta.entries[0].amplitude.real() == Approx(1.0));
    const auto p = build_packet(h, 45.0, 2.5, 10);
    CHECK(p.entries.size() == 21);
    CHECK(p.norm_squared() == Approx(1.0).epsilon(1e-14));
  }

  TEST_CASE("windows must stay inside the spectrum") {
    const SpectrumModel h = HydrogenSpectrum{};
    CHECK(error_of([&] { build_packet(h, 5.0, 2.0, 10); }) == ErrorCode::kInvalidIndex);
  }

  TEST_CASE("grids must increase") {
    const SpectrumModel h = HydrogenSpectrum{};
    const auto p = build_packet(h, 30.0, 1.0, 5);
    const auto ts = time_scales(h, 30.0);
    const std::vector<double> bad = {0.0, 2.0, 1.0};
    CHECK_THROWS_AS(autocorrelation(h, p, PhaseModel::exact(ts), bad), Error);
  }

  TEST_CASE("third order needs t_sr") {
    std::vector<double> e;
    for (int n = 1; n <= 60; ++n) e.push_back(1e-4 * n * n);
    const auto ts = time_scales(TabulatedSpectrum(1, e), 30.0);
    CHECK(error_of([&] { PhaseModel::truncated(ts, 3); }) == ErrorCode::kUndefinedScale);
  }

  TEST_CASE("Parseval bound over 100 random packets") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const SpectrumModel h = HydrogenSpectrum{};
    for (int i = 0; i < 100; ++i) {
      const double nbar = 10.0 + 60.0 * u(rng), sigma = 0.3 + 3.0 * u(rng);
      const int window = std::min(default_window(sigma), static_cast<int>(nbar) - 2);
      const auto p = build_packet(h, nbar, sigma, window);
      CHECK(p.norm_squared() == Approx(1.0).epsilon(1e-12));
      const auto ts = time_scales(h, p.center);
      const std::vector<double> t = {u(rng) * *ts.t_sr};
      CHECK(std::abs(autocorrelation(h, p, PhaseModel::exact(ts), t).amplitude[0]) <=
            1.0 + 1e-12);
    }
  }

  TEST_CASE("radial density integrates to one") {
    const SpectrumModel h = HydrogenSpectrum{};
    const auto p = build_packet(h, 20.0, 1.5, 6);
    const auto ts = time_scales(h, 20.0);
    const auto r = linear_grid(0.0, 2.0 * 26 * 26 + 60.0 * 26, 20001);
    const auto rho = radial_density(h, p, PhaseModel::exact(ts), r, 0.3 * *ts.t_cl_n);
    CHECK(integrate_samples(r, rho) == Approx(1.0).epsilon(1e-6));
    const auto coarse = linear_grid(0.0, 200.0, 101);
    CHECK(error_of([&] { radial_density(h, p, PhaseModel::exact(ts), coarse, 0.0); }) ==
          ErrorCode::kGridTooCoarse);
  }

  TEST_CASE("integration rules") {
    const auto x = linear_grid(0.0, 2.0, 11);
    std::vector<double> y;
    for (double v : x) y.push_back(v * v * v);
    CHECK(integrate_samples(x, y) == Approx(4.0).epsilon(1e-14));
    const std::vector<double> x2 = {0.0, 1.0}, y2 = {0.0, 2.0};
    CHECK(integrate_samples(x2, y2) == Approx(1.0));
  }

  TEST_CASE("parallel_for covers every index and propagates errors") {
    std::vector<std::atomic<int>> hits(5000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, 1);
    for (auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS_AS(parallel_for(
                        100, [](std::size_t i) { if (i == 42) throw std::runtime_error("x"); }, 1),
                    std::runtime_error);
  }
}
