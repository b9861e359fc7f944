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

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "revlab/rational.hpp"

namespace revlab {

/// Quantum numbers of a single level. Single-index models read only `n` (and
/// `l` for quantum-defect spectra); Stark levels use the parabolic difference
/// `k = n1 - n2`.
struct StateIndex {
  int n = 1;
  int k = 0;
  int l = 1;

  friend bool operator==(const StateIndex&, const StateIndex&) = default;
};

/// E_n = -1/(2 n^2).
struct HydrogenSpectrum {};

/// E_n = -1/(2 n*^2) with n* = n - delta(l). Angular momenta absent from the
/// defect table carry no defect.
struct QuantumDefectSpectrum {
  std::map<int, double> defects;
  double detuning = 0.0;
  int l = 1;

  double defect(int l_value) const;
};

/// First-order Stark levels E_nk = -1/(2 n^2) + 3 n k F / 2, m = 0.
struct StarkSpectrum {
  double field = 0.0;
};

/// Finite contiguous table n -> E_n, used for generic discrete spectra.
class TabulatedSpectrum {
 public:
  TabulatedSpectrum(int first_n, std::vector<double> energies);

  int first_n() const { return first_n_; }
  int last_n() const { return first_n_ + static_cast<int>(energies_.size()) - 1; }
  const std::vector<double>& energies() const { return energies_; }
  bool contains(int n) const { return n >= first_n_ && n <= last_n(); }
  double at(int n) const;

 private:
  int first_n_;
  std::vector<double> energies_;
};

using SpectrumModel = std::variant<HydrogenSpectrum, QuantumDefectSpectrum,
                                   StarkSpectrum, TabulatedSpectrum>;

std::string model_name(const SpectrumModel& model);
bool is_two_index(const SpectrumModel& model);

/// Checks the index against the model's domain; throws kInvalidIndex or
/// kOutOfTable.
void validate_index(const SpectrumModel& model, const StateIndex& index);

/// Level energy in atomic units.
double energy(const SpectrumModel& model, const StateIndex& index);

/// Noninteger expansion center of a quantum-defect packet, split so that the
/// defect and laser-detuning contributions stay distinguishable.
struct EffectiveCenter {
  double value = 0.0;          // N* = nbar - delta + detuning
  long integer_part = 0;       // floor(N*)
  double fractional_part = 0;  // N* - floor(N*)
  double defect = 0.0;
  double detuning = 0.0;
};

/// Derivative-defined time scales at a packet center. Times are magnitudes
/// (always positive when present); the signed energy derivatives are kept so
/// truncated phases keep the right orientation for any spectrum.
struct TimeScaleSet {
  double center = 0.0;
  double center_k = 0.0;
  bool two_index = false;

  double d1 = 0.0;   // dE/dn
  double d2 = 0.0;   // d2E/dn2
  double d3 = 0.0;   // d3E/dn3
  double dk = 0.0;   // dE/dk
  double dnk = 0.0;  // d2E/dn dk

  std::optional<double> t_cl_n;
  std::optional<double> t_cl_k;
  std::optional<double> t_rev_n;
  std::optional<double> t_rev_nk;
  std::optional<double> t_rev_k;  // never defined for first-order Stark levels
  std::optional<double> t_sr;

  std::optional<EffectiveCenter> effective_center;
  std::vector<std::string> warnings;

  /// Same spectrum seen on a clock running 1/lambda times as fast: every time
  /// scale is multiplied by lambda.
  TimeScaleSet scaled(double lambda) const;
};

TimeScaleSet time_scales(const SpectrumModel& model, double center);

/// Time scales in units of 2*pi, exact for integer centers.
struct ExactHydrogenScales {
  Rational t_cl;
  Rational t_rev;
  Rational t_sr;
};
ExactHydrogenScales exact_hydrogen_scales(std::int64_t nbar);

struct ExactStarkScales {
  Rational t_cl_n;
  Rational t_cl_k;
  Rational t_rev_n;
  Rational t_rev_nk;
};
ExactStarkScales exact_stark_scales(std::int64_t nbar, const Rational& field);

struct FieldTuning {
  Rational field_exact;     // atomic units
  double field = 0.0;       // atomic units
  double critical_field = 0.0;
  bool below_critical = true;
  double field_v_per_cm = 0.0;
  double critical_v_per_cm = 0.0;
};

/// Field strength making t_rev^(n) / t_rev^(nk) equal `ratio`. The ratio must
/// be below 1/8, otherwise the field would exceed the classical ionization
/// threshold 1/(16 nbar^4).
FieldTuning tune_field(std::int64_t nbar, const Rational& ratio);

/// Best rational approximation of t_a / t_b with denominator at most
/// `max_denominator`, accepted only within `tolerance` relative error.
std::optional<Rational> commensurability(double t_a, double t_b,
                                         double tolerance = 1e-9,
                                         std::int64_t max_denominator = 64);

}  // namespace revlab
