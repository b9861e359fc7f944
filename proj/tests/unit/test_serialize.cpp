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

#include <string>

#include "revlab/serialize.hpp"
#include "support.hpp"

using namespace revlab;

TEST_SUITE("serialize") {
  TEST_CASE("spectrum round-trip") {
    QuantumDefectSpectrum qd;
    qd.defects = {{0, 3.13}, {1, 2.65}};
    qd.detuning = 0.25;
    qd.l = 1;
    for (const SpectrumModel& m :
         {SpectrumModel(HydrogenSpectrum{}), SpectrumModel(qd), SpectrumModel(StarkSpectrum{1e-7}),
          SpectrumModel(TabulatedSpectrum(3, {-0.1, -0.05, -0.02, -0.01, -0.005}))}) {
      const Json j = to_json(m);
      CHECK(to_json(spectrum_from_json(j)) == j);
    }
  }

  TEST_CASE("malformed spectra") {
    CHECK_THROWS_AS(spectrum_from_json(Json{{"kind", "square"}}), Error);
    CHECK_THROWS_AS(spectrum_from_json(Json{{"kind", "stark"}}), Error);
  }

  TEST_CASE("CSV tables") {
    const auto t = tabulated_from_csv("# level table\nn,E\n5,-0.02\n\n6,-0.0138\n7,-0.0102\n8,-0.0078\n9,-0.0062\n");
    CHECK(t.first_n() == 5);
    CHECK(t.last_n() == 9);
    CHECK(t.at(6) == -0.0138);
    CHECK_THROWS_AS(tabulated_from_csv("1,0.1\n2,0.2\n3,0.3\n5,0.4\n6,0.5\n7,0.6\n"), Error);
  }

  TEST_CASE("numbers keep full precision") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
  }

  TEST_CASE("time scales mark undefined entries") {
    const auto j = to_json(time_scales(StarkSpectrum{1e-7}, 24.0));
    CHECK(j["t_rev_k"].is_null());
    CHECK(j["t_rev_nk"].is_number());
  }

  TEST_CASE("trace CSV layout") {
    AutocorrelationTrace trace;
    trace.times = {0.0, 1.0};
    trace.amplitude = {Complex(1.0, 0.0), Complex(0.0, 0.5)};
    const auto csv = trace_csv(trace);
    CHECK(csv.rfind("t_atomic,t_si,re_A,im_A,abs2_A\n", 0) == 0);
    CHECK(csv.find("0.25\n") != std::string::npos);
  }
}
