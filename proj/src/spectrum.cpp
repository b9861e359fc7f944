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

#include "revlab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "revlab/error.hpp"
#include "revlab/units.hpp"

namespace revlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr const char* kModule = "spectrum";

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string describe(const StateIndex& index) {
  std::ostringstream os;
  os << "(n=" << index.n << ", k=" << index.k << ", l=" << index.l << ")";
  return os.str();
}

std::optional<double> period_from(double derivative_term) {
  if (derivative_term == 0.0) return std::nullopt;
  return kTwoPi / std::abs(derivative_term);
}

// Central-difference derivatives of a table at index `center`, using the
// widest symmetric stencil the table allows (5 or 7 points).
struct Derivatives {
  double d1, d2, d3;
  double scale;  // largest |E| in the stencil
};

Derivatives table_derivatives(const TabulatedSpectrum& table, int center) {
  const int reach = std::min({3, center - table.first_n(), table.last_n() - center});
  if (reach < 2) {
    fail(ErrorCode::kInvalidCenter, kModule,
         "tabulated center " + std::to_string(center) +
             " must sit at least 2 indices inside the table [" +
             std::to_string(table.first_n()) + ", " +
             std::to_string(table.last_n()) + "]");
  }
  auto f = [&](int offset) { return table.at(center + offset); };
  double scale = 0.0;
  for (int j = -reach; j <= reach; ++j) scale = std::max(scale, std::abs(f(j)));

  Derivatives d{};
  d.scale = scale;
  if (reach == 2) {
    d.d1 = (f(-2) - 8.0 * f(-1) + 8.0 * f(1) - f(2)) / 12.0;
    d.d2 = (-f(-2) + 16.0 * f(-1) - 30.0 * f(0) + 16.0 * f(1) - f(2)) / 12.0;
    d.d3 = (f(2) - 2.0 * f(1) + 2.0 * f(-1) - f(-2)) / 2.0;
  } else {
    d.d1 = (-f(-3) + 9.0 * f(-2) - 45.0 * f(-1) + 45.0 * f(1) - 9.0 * f(2) +
            f(3)) / 60.0;
    d.d2 = (2.0 * f(-3) - 27.0 * f(-2) + 270.0 * f(-1) - 490.0 * f(0) +
            270.0 * f(1) - 27.0 * f(2) + 2.0 * f(3)) / 180.0;
    d.d3 = (-f(3) + 8.0 * f(2) - 13.0 * f(1) + 13.0 * f(-1) - 8.0 * f(-2) +
            f(-3)) / 8.0;
  }
  // Differences that cancel to rounding level count as vanishing.
  const double floor_level = 1e-10 * (scale > 0.0 ? scale : 1.0);
  if (std::abs(d.d1) <= floor_level) d.d1 = 0.0;
  if (std::abs(d.d2) <= floor_level) d.d2 = 0.0;
  if (std::abs(d.d3) <= floor_level) d.d3 = 0.0;
  return d;
}

void fill_single_index(TimeScaleSet& ts, double d1, double d2, double d3) {
  ts.d1 = d1;
  ts.d2 = d2;
  ts.d3 = d3;
  if (d1 == 0.0) {
    fail(ErrorCode::kDegenerateSpectrum, kModule,
         "dE/dn vanishes at the center; no classical period");
  }
  ts.t_cl_n = period_from(d1);
  ts.t_rev_n = period_from(0.5 * d2);
  ts.t_sr = period_from(d3 / 6.0);
}

// Derivatives of -1/(2 x^2).
void coulomb_derivatives(double x, double& d1, double& d2, double& d3) {
  d1 = 1.0 / (x * x * x);
  d2 = -3.0 / (x * x * x * x);
  d3 = 12.0 / (x * x * x * x * x);
}

}  // namespace

double QuantumDefectSpectrum::defect(int l_value) const {
  const auto it = defects.find(l_value);
  return it == defects.end() ? 0.0 : it->second;
}

TabulatedSpectrum::TabulatedSpectrum(int first_n, std::vector<double> energies)
    : first_n_(first_n), energies_(std::move(energies)) {
  if (energies_.size() < 5) {
    fail(ErrorCode::kInvalidArgument, kModule,
         "tabulated spectrum needs at least 5 levels, got " +
             std::to_string(energies_.size()));
  }
  for (double e : energies_) {
    if (!std::isfinite(e)) {
      fail(ErrorCode::kInvalidArgument, kModule,
           "tabulated spectrum contains a non-finite energy");
    }
  }
}

double TabulatedSpectrum::at(int n) const {
  if (!contains(n)) {
    fail(ErrorCode::kOutOfTable, kModule,
         "n=" + std::to_string(n) + " outside table [" +
             std::to_string(first_n_) + ", " + std::to_string(last_n()) + "]");
  }
  return energies_[static_cast<std::size_t>(n - first_n_)];
}

std::string model_name(const SpectrumModel& model) {
  return std::visit(Overloaded{
                        [](const HydrogenSpectrum&) { return "hydrogen"; },
                        [](const QuantumDefectSpectrum&) { return "quantum_defect"; },
                        [](const StarkSpectrum&) { return "stark"; },
                        [](const TabulatedSpectrum&) { return "tabulated"; },
                    },
                    model);
}

bool is_two_index(const SpectrumModel& model) {
  return std::holds_alternative<StarkSpectrum>(model);
}

void validate_index(const SpectrumModel& model, const StateIndex& index) {
  std::visit(
      Overloaded{
          [&](const HydrogenSpectrum&) {
            if (index.n < 1) {
              fail(ErrorCode::kInvalidIndex, kModule,
                   "hydrogen level needs n >= 1, got " + describe(index));
            }
          },
          [&](const QuantumDefectSpectrum& qd) {
            if (index.n < 1 || index.n - qd.defect(index.l) <= 0.0) {
              fail(ErrorCode::kInvalidIndex, kModule,
                   "effective quantum number n - delta(l) must be positive at " +
                       describe(index));
            }
          },
          [&](const StarkSpectrum&) {
            if (index.n < 1 || std::abs(index.k) > index.n - 1) {
              fail(ErrorCode::kInvalidIndex, kModule,
                   "Stark level needs |k| <= n-1, got " + describe(index));
            }
            const bool k_even = index.k % 2 == 0;
            const bool n_odd = index.n % 2 != 0;
            if (k_even != n_odd) {
              fail(ErrorCode::kInvalidIndex, kModule,
                   "Stark parity rule (k even iff n odd) violated at " +
                       describe(index));
            }
          },
          [&](const TabulatedSpectrum& table) { (void)table.at(index.n); },
      },
      model);
}

double energy(const SpectrumModel& model, const StateIndex& index) {
  validate_index(model, index);
  return std::visit(
      Overloaded{
          [&](const HydrogenSpectrum&) {
            const double n = index.n;
            return -0.5 / (n * n);
          },
          [&](const QuantumDefectSpectrum& qd) {
            const double ns = index.n - qd.defect(index.l);
            return -0.5 / (ns * ns);
          },
          [&](const StarkSpectrum& stark) {
            const double n = index.n;
            return -0.5 / (n * n) + 1.5 * n * index.k * stark.field;
          },
          [&](const TabulatedSpectrum& table) { return table.at(index.n); },
      },
      model);
}

TimeScaleSet TimeScaleSet::scaled(double lambda) const {
  TimeScaleSet out = *this;
  auto scale = [lambda](std::optional<double>& t) {
    if (t) *t *= lambda;
  };
  scale(out.t_cl_n);
  scale(out.t_cl_k);
  scale(out.t_rev_n);
  scale(out.t_rev_nk);
  scale(out.t_rev_k);
  scale(out.t_sr);
  out.d1 /= lambda;
  out.d2 /= lambda;
  out.d3 /= lambda;
  out.dk /= lambda;
  out.dnk /= lambda;
  return out;
}

TimeScaleSet time_scales(const SpectrumModel& model, double center) {
  if (!std::isfinite(center)) {
    fail(ErrorCode::kInvalidCenter, kModule, "center must be finite");
  }
  TimeScaleSet ts;
  ts.center = center;
  ts.two_index = is_two_index(model);

  std::visit(
      Overloaded{
          [&](const HydrogenSpectrum&) {
            if (center <= 0.0) {
              fail(ErrorCode::kInvalidCenter, kModule, "hydrogen center must be positive");
            }
            double d1, d2, d3;
            coulomb_derivatives(center, d1, d2, d3);
            fill_single_index(ts, d1, d2, d3);
          },
          [&](const QuantumDefectSpectrum& qd) {
            EffectiveCenter ec;
            ec.defect = qd.defect(qd.l);
            ec.detuning = qd.detuning;
            ec.value = center - ec.defect + qd.detuning;
            if (ec.value <= 0.0) {
              fail(ErrorCode::kInvalidCenter, kModule,
                   "effective center N* must be positive");
            }
            ec.integer_part = static_cast<long>(std::floor(ec.value));
            ec.fractional_part = ec.value - static_cast<double>(ec.integer_part);
            ts.effective_center = ec;
            double d1, d2, d3;
            coulomb_derivatives(ec.value, d1, d2, d3);
            fill_single_index(ts, d1, d2, d3);
          },
          [&](const StarkSpectrum& stark) {
            if (center <= 1.0) {
              fail(ErrorCode::kInvalidCenter, kModule, "Stark center must exceed 1");
            }
            if (stark.field < 0.0) {
              fail(ErrorCode::kInvalidArgument, kModule, "field strength must be >= 0");
            }
            double d1, d2, d3;
            coulomb_derivatives(center, d1, d2, d3);
            fill_single_index(ts, d1, d2, d3);
            ts.dk = 1.5 * center * stark.field;
            ts.dnk = 1.5 * stark.field;
            ts.t_cl_k = period_from(2.0 * ts.dk);
            ts.t_rev_nk = period_from(2.0 * ts.dnk);
            const double critical = 1.0 / (16.0 * std::pow(center, 4));
            if (stark.field > critical) {
              std::ostringstream os;
              os << "field " << stark.field << " a.u. exceeds the classical ionization "
                 << "threshold " << critical << " a.u. for nbar=" << center;
              ts.warnings.push_back(os.str());
            }
          },
          [&](const TabulatedSpectrum& table) {
            const double rounded = std::round(center);
            if (std::abs(center - rounded) > 1e-9) {
              fail(ErrorCode::kInvalidCenter, kModule,
                   "tabulated spectra need an integer center");
            }
            const Derivatives d = table_derivatives(table, static_cast<int>(rounded));
            fill_single_index(ts, d.d1, d.d2, d.d3);
          },
      },
      model);
  return ts;
}

ExactHydrogenScales exact_hydrogen_scales(std::int64_t nbar) {
  if (nbar < 1) fail(ErrorCode::kInvalidCenter, kModule, "nbar must be >= 1");
  const std::int64_t n3 = nbar * nbar * nbar;
  const std::int64_t n4 = n3 * nbar;
  const std::int64_t n5 = n4 * nbar;
  // 2 pi / E', 2 pi / (E''/2), 2 pi / (E'''/6), each divided by 2 pi.
  return {Rational(n3), Rational(2 * n4, 3), Rational(n5, 2)};
}

ExactStarkScales exact_stark_scales(std::int64_t nbar, const Rational& field) {
  if (nbar < 2) fail(ErrorCode::kInvalidCenter, kModule, "nbar must be >= 2");
  if (field <= 0) fail(ErrorCode::kInvalidArgument, kModule, "field must be positive");
  const std::int64_t n3 = nbar * nbar * nbar;
  ExactStarkScales s;
  s.t_cl_n = Rational(n3);
  s.t_cl_k = Rational(1) / (Rational(3 * nbar) * field);
  s.t_rev_n = Rational(2 * n3 * nbar, 3);
  s.t_rev_nk = Rational(1) / (Rational(3) * field);
  return s;
}

FieldTuning tune_field(std::int64_t nbar, const Rational& ratio) {
  if (nbar < 2) fail(ErrorCode::kInvalidCenter, kModule, "nbar must be >= 2");
  if (ratio <= 0) {
    fail(ErrorCode::kInvalidArgument, kModule, "ratio must be positive");
  }
  if (ratio >= Rational(1, 8)) {
    fail(ErrorCode::kRatioExceedsBound, kModule,
         "ratio " + to_string(ratio) +
             " must be below 1/8 to keep the field under the ionization threshold");
  }
  const std::int64_t n4 = nbar * nbar * nbar * nbar;
  FieldTuning out;
  out.field_exact = ratio / Rational(2 * n4);
  out.field = to_double(out.field_exact);
  out.critical_field = 1.0 / (16.0 * static_cast<double>(n4));
  out.below_critical = out.field < out.critical_field;
  out.field_v_per_cm = units::to_volts_per_cm(out.field);
  out.critical_v_per_cm = units::to_volts_per_cm(out.critical_field);
  return out;
}

std::optional<Rational> commensurability(double t_a, double t_b, double tolerance,
                                         std::int64_t max_denominator) {
  if (!(t_a > 0.0) || !(t_b > 0.0)) {
    fail(ErrorCode::kInvalidArgument, kModule, "times must be positive");
  }
  if (max_denominator < 1) {
    fail(ErrorCode::kInvalidArgument, kModule, "max_denominator must be >= 1");
  }
  const long double x = static_cast<long double>(t_a) / t_b;

  // Convergents h/k of the continued fraction of x.
  std::int64_t h_prev = 1, k_prev = 0;
  std::int64_t h = static_cast<std::int64_t>(std::floor(x)), k = 1;
  long double rem = x - std::floor(x);
  while (rem > 1e-18L) {
    const long double inv = 1.0L / rem;
    const auto a = static_cast<std::int64_t>(std::floor(inv));
    const std::int64_t k_next = a * k + k_prev;
    if (k_next > max_denominator) {
      // Best semiconvergent that still fits the denominator bound.
      const std::int64_t a_max = (max_denominator - k_prev) / k;
      if (a_max > 0) {
        const std::int64_t hs = a_max * h + h_prev;
        const std::int64_t ks = a_max * k + k_prev;
        const long double err_semi = std::abs(x - static_cast<long double>(hs) / ks);
        const long double err_conv = std::abs(x - static_cast<long double>(h) / k);
        if (err_semi < err_conv) {
          h = hs;
          k = ks;
        }
      }
      break;
    }
    const std::int64_t h_next = a * h + h_prev;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
    rem = inv - static_cast<long double>(a);
  }
  const long double approx = static_cast<long double>(h) / k;
  if (std::abs(approx - x) > tolerance * x) return std::nullopt;
  return Rational(h, k);
}

}  // namespace revlab
