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
#include <vector>

#include "revlab/stark.hpp"
#include "support.hpp"

using namespace revlab;
using doctest::Approx;

namespace {

struct Example {
  StarkSetup setup = stark_setup(24, Rational(1, 12));
  PacketCoefficients packet = build_stark_packet(setup.model, 24.0, 2.0, 2.0, 6);
  ParitySplit split = split_parity(packet);
};

}  // namespace

TEST_SUITE("stark") {
  TEST_CASE("setup for nbar = 24, r/s = 1/12") {
    const Example ex;
    CHECK(ex.setup.tuning.field == Approx(1.0 / (24.0 * std::pow(24.0, 4))));
    CHECK(ex.setup.full_revival() == Approx(12.0 * *ex.setup.scales.t_rev_n));
    CHECK(ex.setup.full_revival() == Approx(*ex.setup.scales.t_rev_nk));
    CHECK(*ex.setup.scales.t_cl_n / *ex.setup.scales.t_cl_k == Approx(0.125));
  }

  TEST_CASE("parity split") {
    const Example ex;
    CHECK(sector_kappa0(Sector::kOdd, 24) == 0);
    CHECK(sector_kappa0(Sector::kEven, 24) == 1);
    CHECK(sector_kappa0(Sector::kOdd, 25) == 1);
    CHECK(ex.split.parent_size == ex.packet.entries.size());
    CHECK(ex.split.odd.entries.size() + ex.split.even.entries.size() == ex.packet.entries.size());
    CHECK(ex.split.odd.norm_squared() + ex.split.even.norm_squared() == Approx(1.0));
    for (const auto& e : ex.split.odd.entries) CHECK(std::abs(e.dn) % 2 == 1);
    for (const auto& e : ex.split.even.entries) CHECK(e.dn % 2 == 0);
    auto shifted = ex.packet;
    shifted.center = 24.5;
    CHECK(error_of([&] { split_parity(shifted); }) == ErrorCode::kInvalidCenter);
  }

  TEST_CASE("fractional times") {
    const Example ex;
    const auto half = fractional_time(ex.setup, Rational(1, 2));
    CHECK(half.p1q1 == Rational(6));
    CHECK(half.p12q12 == Rational(1, 2));
    CHECK(half.time == Approx(0.5 * ex.setup.full_revival()));
  }

  TEST_CASE("minimal periods") {
    const Example ex;
    const auto full = minimal_periods(fractional_time(ex.setup, Rational(1)), 24);
    CHECK(full.odd.l1 == 1);
    CHECK(full.odd.l2 == 1);
    CHECK(full.even.l1 == 1);
    CHECK(full.even.l2 == 1);
    const auto half_t = fractional_time(ex.setup, Rational(1, 2));
    const auto half = minimal_periods(half_t, 24);
    CHECK(half.odd.l1 == 1);
    CHECK(half.odd.l2 == 2);
    CHECK(half.even.l1 == 2);
    CHECK(half.even.l2 == 1);
    CHECK(verify_periods(Sector::kOdd, 24, half_t, half.odd, 8));
    CHECK_FALSE(verify_periods(Sector::kOdd, 24, half_t, {1, 1}, 8));
    const auto third = minimal_periods(fractional_time(ex.setup, Rational(1, 3)), 24);
    CHECK(third.odd.l1 == 3);
    CHECK(third.odd.l2 == 3);
    CHECK(third.even.l1 == 3);
    CHECK(third.even.l2 == 3);
  }

  TEST_CASE("theta phase is a reduced fraction in [0, 1)") {
    for (int dn = -5; dn <= 5; ++dn) {
      for (int k = -4; k <= 4; ++k) {
        const auto th = theta_phase(dn, k, 1, Rational(7, 3), Rational(1, 12));
        CHECK(th >= Rational(0));
        CHECK(th < Rational(1));
      }
    }
    CHECK(theta_phase(0, 3, 0, Rational(5), Rational(1, 12)) == Rational(0));
  }

  TEST_CASE("expansions and reconstruction") {
    for (const Rational f : {Rational(1), Rational(1, 2), Rational(1, 3), Rational(1, 4)}) {
      CAPTURE(to_string(f));
      const auto d = stark_decompose(24, Rational(1, 12), f, 2.0, 2.0, 6);
      CHECK(d.expansion.odd.norm_squared() == Approx(1.0).epsilon(1e-13));
      CHECK(d.expansion.even.norm_squared() == Approx(1.0).epsilon(1e-13));
      CHECK(d.reconstruction_error < 1e-10);
    }
    const auto full = stark_decompose(24, Rational(1, 12), Rational(1), 2.0, 2.0, 6);
    CHECK(full.expansion.odd.significant().size() == 1);
    CHECK(full.expansion.even.significant().size() == 1);
    const auto half = stark_decompose(24, Rational(1, 12), Rational(1, 2), 2.0, 2.0, 6);
    REQUIRE(half.expansion.odd.significant().size() == 1);
    REQUIRE(half.expansion.even.significant().size() == 1);
    CHECK(half.expansion.odd.significant()[0] == std::pair{0, 1});
    CHECK(half.expansion.even.significant()[0] == std::pair{1, 0});
  }

  TEST_CASE("reconstruction only at the expansion time") {
    const Example ex;
    const auto tf = fractional_time(ex.setup, Rational(1, 2));
    const auto x = expansion_coefficients(tf, 24);
    CHECK(error_of([&] { reconstruct(ex.setup, ex.split, x, 1.01 * tf.time); }) ==
          ErrorCode::kTimeMismatch);
  }

  TEST_CASE("classical coefficients") {
    const Example ex;
    const auto c = psi_cl(ex.split.odd, ex.setup.scales, 0.0L, 0.0L);
    REQUIRE(c.size() == ex.split.odd.entries.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      CHECK(std::abs(c[i] - ex.split.odd.entries[i].amplitude) < 1e-15);
    }
  }

  TEST_CASE("antiperiodicity") {
    const Example ex;
    const auto grid = linear_grid(0.0, ex.setup.full_revival(), 100);
    const auto r = antiperiodicity_check(ex.split, ex.setup.scales, grid);
    CHECK(r.samples == 100);
    CHECK(r.odd_deviation < 1e-12);
    CHECK(r.even_deviation < 1e-12);
    CHECK(r.mixed_antiperiodic_deviation > 0.1);
    CHECK(r.mixed_periodic_deviation > 0.1);
  }

  TEST_CASE("nodes near the half revival") {
    const Example ex;
    const auto a = stark_node_analysis(ex.setup, ex.packet, Rational(1, 2));
    REQUIRE(a.odd_nodes.spacing);
    CHECK(*a.odd_nodes.spacing / a.half_period == Approx(1.0).epsilon(0.05));
    if (a.even_nodes.spacing) CHECK(std::abs(*a.even_nodes.spacing / a.half_period - 1.0) > 0.05);
  }

  TEST_CASE("node detection needs resolution") {
    const Example ex;
    CHECK(error_of([&] { stark_node_analysis(ex.setup, ex.packet, Rational(1, 2), 2.0, 16); }) ==
          ErrorCode::kInsufficientResolution);
  }
}
