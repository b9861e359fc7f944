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

#include <optional>
#include <span>
#include <vector>

#include "revlab/packet.hpp"

namespace revlab {

/// psi(r) = N r^alpha exp(-gamma0 r) exp(-i gamma1 r), normalized under r^2 dr
/// with N = sqrt((2 gamma0)^(2 alpha + 3) / Gamma(2 alpha + 3)).
struct SqueezedStateParams {
  double alpha = 0.0;
  double gamma0 = 1.0;
  double gamma1 = 0.0;
  int l = 1;

  static SqueezedStateParams make(double alpha, double gamma0, double gamma1 = 0.0, int l = 1);

  double log_normalization() const;
  double normalization() const;
  Complex value(double r) const;

  /// <r^m>; throws kDivergentMoment unless 2 alpha + 3 + m > 0.
  double moment(int m) const;
  double mean_r() const { return moment(1); }
  double delta_r() const;
  /// <p_r> = -gamma1 with p_r = -i (d/dr + 1/r).
  double mean_p() const { return -gamma1; }
  double mean_p2() const;
  double delta_p() const;
  double energy() const;
};

/// <r^m> by adaptive Gauss-Kronrod quadrature, for cross-checking moment().
double moment_by_quadrature(const SqueezedStateParams& params, int m);

enum class OuterApsis { kRadial, kKepler };

/// r_out = 2 nbar^2 (radial orbit), or nbar^2 (1 + sqrt(1 - l(l+1)/nbar^2)).
double outer_apsis(double nbar, int l, OuterApsis rule);

struct FitTarget {
  double nbar = 45.0;
  double r_out = 0.0;  // 0 selects the radial rule
  int l = 1;

  double energy() const;
};

/// Solves <p_r> = 0, <r> = r_out and <H> = -1/(2 nbar^2). The alpha equation
/// has a second root below zero; the one with alpha > 0 is returned.
SqueezedStateParams fit(const FitTarget& target);

struct Projection {
  PacketCoefficients packet;  // renormalized
  double captured_norm = 0.0;
  std::vector<double> raw_weights;  // |c_n|^2 before renormalization
};

/// c_n = int R_nl(r) psi(r) r^2 dr for n in [n_min, n_max]. Throws
/// kWindowTooNarrow when sum |c_n|^2 < min_captured.
Projection project(const SqueezedStateParams& params, int n_min, int n_max,
                   double min_captured = 0.999);

struct UncertaintySample {
  double t = 0.0;
  double mean_r = 0.0;
  double delta_r = 0.0;
  double mean_p = 0.0;
  double delta_p = 0.0;
  double product = 0.0;
};

struct RadialGrid {
  double r_max = 0.0;       // 0 picks 2 n_max^2 + 60 n_max
  std::size_t points = 40001;
};

/// Radial expectation values of the hydrogen evolution of `packet` at each
/// time, by Simpson quadrature of u = r Psi on a uniform grid. Throws
/// kGridTooCoarse if the norm on the grid misses 1 by more than 1e-6.
std::vector<UncertaintySample> evolve_uncertainty(const PacketCoefficients& packet,
                                                  std::span<const double> times,
                                                  const RadialGrid& grid = {});

/// Sum_n c_n R_nl(r), the projected packet at t = 0.
Complex packet_value(const PacketCoefficients& packet, double r);

/// Period of the dominant Fourier component of the linearly detrended
/// series, searched from two cycles per span up to a quarter of the sampling
/// rate.
std::optional<double> oscillation_period(std::span<const double> times,
                                         std::span<const double> values);

}  // namespace revlab
