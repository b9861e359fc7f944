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

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "revlab/spectrum.hpp"

namespace revlab {

using Complex = std::complex<double>;

struct PacketEntry {
  StateIndex index;
  Complex amplitude;
};

struct PacketProfile {
  std::string shape = "gaussian";
  double sigma_n = 2.5;
  double sigma_k = 0.0;
  int window = 0;
};

/// Normalized superposition sum_j c_j |j> over a finite index window.
struct PacketCoefficients {
  double center = 0.0;
  double center_k = 0.0;
  bool two_index = false;
  std::vector<PacketEntry> entries;
  PacketProfile profile;
  // Norm lost before renormalization (projected packets only).
  double norm_deficit = 0.0;

  double norm_squared() const;
};

/// Default window half-width for a Gaussian of width sigma.
int default_window(double sigma);

/// Real Gaussian amplitudes, |c_n|^2 ~ exp(-(n - nbar)^2 / (2 sigma^2)), over
/// n in [nbar - window, nbar + window]. Single-index models only.
PacketCoefficients build_packet(const SpectrumModel& model, double nbar, double sigma,
                                int window);

/// Separable Gaussian in (n - nbar) and k around kbar = 0, restricted to
/// parity-valid pairs with |k| <= window.
PacketCoefficients build_stark_packet(const SpectrumModel& model, double nbar,
                                      double sigma_n, double sigma_k, int window);

enum class PhaseMode { kExact, kTruncated };

/// Exact phases exp(-i E t), or the Taylor expansion of E about the packet
/// center kept through `order`.
struct PhaseModel {
  PhaseMode mode = PhaseMode::kExact;
  int order = 2;
  TimeScaleSet scales;

  static PhaseModel exact(const TimeScaleSet& scales);
  static PhaseModel truncated(const TimeScaleSet& scales, int order);
};

/// Angular frequency of one level under the phase model: phase_at = exp(-i w t).
/// Truncated frequencies drop the common E(center) term.
long double angular_frequency(const SpectrumModel& model, const PhaseModel& phase,
                              const StateIndex& index);

Complex phase_at(const SpectrumModel& model, const PhaseModel& phase,
                 const StateIndex& index, double t);

struct AutocorrelationTrace {
  std::vector<double> times;
  std::vector<Complex> amplitude;

  std::vector<double> abs2() const;
  std::size_t size() const { return times.size(); }
};

/// A(t) = <Psi(0)|Psi(t)> = sum_j |c_j|^2 exp(-i w_j t). Samples are evaluated
/// in parallel; output order follows the grid.
AutocorrelationTrace autocorrelation(const SpectrumModel& model,
                                     const PacketCoefficients& packet,
                                     const PhaseModel& phase, std::span<const double> times);

/// Uniform grid of `count` samples over [t0, t1].
std::vector<double> linear_grid(double t0, double t1, std::size_t count);

/// |Psi(r,t)|^2 r^2 on the grid for a hydrogen l = 1 packet. Throws
/// kGridTooCoarse if the sampled density does not integrate to 1 within 1e-6.
std::vector<double> radial_density(const SpectrumModel& model,
                                   const PacketCoefficients& packet,
                                   const PhaseModel& phase, std::span<const double> r,
                                   double t);

/// Simpson's rule on uniform grids with an odd sample count, trapezoid
/// otherwise.
double integrate_samples(std::span<const double> x, std::span<const double> y);

/// Runs body(i) for i in [0, count) across hardware threads; counts below
/// `min_parallel` run on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t min_parallel = 2048);

}  // namespace revlab
