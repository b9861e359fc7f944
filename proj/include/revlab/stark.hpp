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

#include <span>
#include <utility>
#include <vector>

#include "revlab/packet.hpp"
#include "revlab/rational.hpp"
#include "revlab/spectrum.hpp"

namespace revlab {

/// Tuned Stark configuration: integer center and field making
/// t_rev^(n) / t_rev^(nk) = ratio.
struct StarkSetup {
  int nbar = 0;
  Rational ratio;
  FieldTuning tuning;
  StarkSpectrum model;
  TimeScaleSet scales;
  ExactStarkScales exact;

  /// Common full revival s t_rev^(n) = r t_rev^(nk).
  double full_revival() const;
};

StarkSetup stark_setup(int nbar, const Rational& ratio);

/// Parity of dn = n - nbar.
enum class Sector { kOdd, kEven };

/// Offset kappa0 in the relabeling k = 2k' + kappa0: 1 for sectors whose
/// original n is even (k odd), 0 otherwise.
int sector_kappa0(Sector sector, int nbar);

struct SectorEntry {
  std::size_t source = 0;  // position in the parent packet
  StateIndex index;
  int dn = 0;
  int kprime = 0;
  Complex amplitude;
};

struct SectorPacket {
  Sector sector = Sector::kOdd;
  int kappa0 = 0;
  std::vector<SectorEntry> entries;

  double norm_squared() const;
  /// The sector alone as a packet, amplitudes untouched (not renormalized).
  PacketCoefficients as_packet(const PacketCoefficients& parent) const;
};

struct ParitySplit {
  int nbar = 0;
  std::size_t parent_size = 0;
  SectorPacket odd;
  SectorPacket even;
};

/// Splits a Stark packet into odd and even dn sectors and relabels k.
/// Throws kParityViolation for pairs breaking the parity rule.
ParitySplit split_parity(const PacketCoefficients& packet);

/// t_frac = p1q1 t_rev^(n) = p12q12 t_rev^(nk).
struct FractionalTime {
  double time = 0.0;
  Rational p1q1;
  Rational p12q12;
  Rational ratio;  // r/s
};

/// Fractional time given as a fraction of the full revival s t_rev^(n).
FractionalTime fractional_time(const StarkSetup& setup, const Rational& fraction);

/// theta = P dn^2 - P R dn k' - kappa0 P R dn / 2 (mod 1), P = p1/q1, R = r/s.
Rational theta_phase(int dn, int kprime, int kappa0, const Rational& p1q1,
                     const Rational& ratio);

/// Periods are counted in the sector's own lattice: l1 steps dn by 2, l2
/// steps k' by 1.
struct SectorPeriods {
  int l1 = 1;
  int l2 = 1;
};

struct MinimalPeriods {
  SectorPeriods odd;
  SectorPeriods even;
};

/// Smallest theta-invariance periods per sector, by divisor search under the
/// bound 2 q1 s with exhaustive verification.
MinimalPeriods minimal_periods(const FractionalTime& t_frac, int nbar);

/// True when theta is invariant under (dn -> dn + 2 l1) and (k' -> k' + l2)
/// on a full block of the lattice.
bool verify_periods(Sector sector, int nbar, const FractionalTime& t_frac,
                    const SectorPeriods& periods, int block);

struct SectorExpansion {
  Sector sector = Sector::kOdd;
  int kappa0 = 0;
  SectorPeriods periods;
  std::vector<Complex> coefficients;  // row-major, index s1 * l2 + s2
  Rational phase_turns;               // global phase exp(-2 pi i phase_turns)

  Complex at(int s1, int s2) const;
  double norm_squared() const;
  std::vector<std::pair<int, int>> significant(double threshold = 1e-8) const;
};

struct SubsidiaryExpansion {
  FractionalTime time;
  int nbar = 0;
  SectorExpansion odd;
  SectorExpansion even;
};

SubsidiaryExpansion expansion_coefficients(const FractionalTime& t_frac, int nbar,
                                           const MinimalPeriods& periods);
SubsidiaryExpansion expansion_coefficients(const FractionalTime& t_frac, int nbar);

/// Time shifts applied to (t1, t2) by subsidiary term (s1, s2).
std::pair<double, double> subsidiary_shift(const SectorExpansion& sector, int s1, int s2,
                                           const TimeScaleSet& scales);

/// psi_cl(t1, t2) coefficients for one sector:
/// c exp(-2 pi i (dn t1 / T_n + k' t2 / T_k)), aligned with sector.entries.
std::vector<Complex> psi_cl(const SectorPacket& sector, const TimeScaleSet& scales,
                            long double t1, long double t2);

/// Second-order evolution of every coefficient, aligned with packet.entries.
std::vector<Complex> evolve_direct(const StarkSetup& setup, const PacketCoefficients& packet,
                                   double t);

/// Coefficients rebuilt from the subsidiary expansion. Throws kTimeMismatch
/// unless t equals the expansion time.
std::vector<Complex> reconstruct(const StarkSetup& setup, const ParitySplit& split,
                                 const SubsidiaryExpansion& expansion, double t);

double max_abs_difference(std::span<const Complex> a, std::span<const Complex> b);

/// Largest coefficient-vector deviations (2-norm) from
/// psi_odd(t + T_n/2, t) = -psi_odd(t, t) and psi_even(t + T_n/2, t) = psi_even(t, t)
/// over the grid. The mixed entries apply both relations to the whole packet.
struct AntiperiodicityReport {
  double odd_deviation = 0.0;
  double even_deviation = 0.0;
  double mixed_antiperiodic_deviation = 0.0;
  double mixed_periodic_deviation = 0.0;
  std::size_t samples = 0;
};

AntiperiodicityReport antiperiodicity_check(const ParitySplit& split,
                                            const TimeScaleSet& scales,
                                            std::span<const double> times);

struct NodeReport {
  std::vector<double> nodes;
  std::optional<double> spacing;  // median gap between nodes
  double samples_per_half_period = 0.0;
  double depth_threshold = 0.0;   // |A|^2 below this counts as a node
};

/// Deep minima of |A|^2, at most `relative_depth` times the largest sample.
/// Needs 64 samples per half_period, else kInsufficientResolution.
NodeReport node_structure(const AutocorrelationTrace& trace, double half_period,
                          double relative_depth = 1e-3);

/// End-to-end decomposition at one fractional time for a Gaussian packet.
struct StarkDecomposition {
  StarkSetup setup;
  PacketCoefficients packet;
  ParitySplit split;
  FractionalTime time;
  SubsidiaryExpansion expansion;
  double reconstruction_error = 0.0;  // max |reconstructed - direct|
  AntiperiodicityReport antiperiodicity;
};

StarkDecomposition stark_decompose(int nbar, const Rational& ratio, const Rational& fraction,
                                   double sigma_n, double sigma_k, int window,
                                   std::size_t antiperiodicity_samples = 100);

/// Traces of the whole packet and of each sector around a fractional time,
/// with their node structure.
struct StarkNodeAnalysis {
  double center = 0.0;
  double half_period = 0.0;  // T_cl^(n) / 2
  AutocorrelationTrace full;
  AutocorrelationTrace odd;
  AutocorrelationTrace even;
  NodeReport full_nodes;
  NodeReport odd_nodes;
  NodeReport even_nodes;
};

/// Samples [t_frac - w T_n, t_frac + w T_n] with `samples_per_half_period`
/// points per T_n / 2, w = half_width.
StarkNodeAnalysis stark_node_analysis(const StarkSetup& setup, const PacketCoefficients& packet,
                                      const Rational& fraction, double half_width = 2.0,
                                      int samples_per_half_period = 256);

}  // namespace revlab
