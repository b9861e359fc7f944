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

#include "revlab/stark.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "revlab/error.hpp"

namespace revlab {

namespace {

constexpr const char* kModule = "stark";
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex turns_to_unit(const Rational& turns) {
  const double angle = kTwoPi * to_double(mod1(turns));
  return {std::cos(angle), std::sin(angle)};
}

Complex unit_from_cycles(long double cycles) {
  const long double frac = cycles - std::floor(cycles);
  const double angle = kTwoPi * static_cast<double>(frac);
  return {std::cos(angle), -std::sin(angle)};
}

int sector_rho(Sector sector) { return sector == Sector::kOdd ? 1 : 0; }

std::vector<std::int64_t> divisors(std::int64_t b) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d <= b; ++d) {
    if (b % d == 0) out.push_back(d);
  }
  return out;
}

// theta(2 (mu + shift_mu) + rho, kappa + shift_kappa) == theta(2 mu + rho, kappa)
// (mod 1) for every (mu, kappa) in [0, block)^2.
bool invariant_under(Sector sector, int kappa0, const FractionalTime& t_frac,
                     std::int64_t shift_mu, std::int64_t shift_kappa, std::int64_t block) {
  const int rho = sector_rho(sector);
  for (std::int64_t mu = 0; mu < block; ++mu) {
    for (std::int64_t kappa = 0; kappa < block; ++kappa) {
      const int dn = static_cast<int>(2 * mu + rho);
      const Rational base = theta_phase(dn, static_cast<int>(kappa), kappa0, t_frac.p1q1,
                                        t_frac.ratio);
      const Rational moved =
          theta_phase(static_cast<int>(dn + 2 * shift_mu),
                      static_cast<int>(kappa + shift_kappa), kappa0, t_frac.p1q1,
                      t_frac.ratio);
      if (base != moved) return false;
    }
  }
  return true;
}

std::int64_t period_bound(const FractionalTime& t_frac) {
  return 2 * t_frac.p1q1.denominator() * t_frac.ratio.denominator();
}

SectorPeriods sector_periods(Sector sector, int nbar, const FractionalTime& t_frac) {
  const std::int64_t bound = period_bound(t_frac);
  const int kappa0 = sector_kappa0(sector, nbar);
  SectorPeriods p{static_cast<int>(bound), static_cast<int>(bound)};
  for (std::int64_t d : divisors(bound)) {
    if (invariant_under(sector, kappa0, t_frac, d, 0, bound)) {
      p.l1 = static_cast<int>(d);
      break;
    }
  }
  for (std::int64_t d : divisors(bound)) {
    if (invariant_under(sector, kappa0, t_frac, 0, d, bound)) {
      p.l2 = static_cast<int>(d);
      break;
    }
  }
  return p;
}

SectorExpansion sector_expansion(Sector sector, int nbar, const FractionalTime& t_frac,
                                 const SectorPeriods& periods) {
  if (periods.l1 < 1 || periods.l2 < 1) {
    fail(ErrorCode::kInvalidArgument, kModule, "periods must be positive");
  }
  SectorExpansion e;
  e.sector = sector;
  e.kappa0 = sector_kappa0(sector, nbar);
  e.periods = periods;
  const int rho = sector_rho(sector);
  const int l1 = periods.l1, l2 = periods.l2;
  e.coefficients.assign(static_cast<std::size_t>(l1) * l2, Complex(0.0, 0.0));
  const double scale = 1.0 / (static_cast<double>(l1) * l2);
  for (int s1 = 0; s1 < l1; ++s1) {
    for (int s2 = 0; s2 < l2; ++s2) {
      Complex sum(0.0, 0.0);
      for (int mu = 0; mu < l1; ++mu) {
        const int dn = 2 * mu + rho;
        for (int kappa = 0; kappa < l2; ++kappa) {
          const Rational turns =
              theta_phase(dn, kappa, e.kappa0, t_frac.p1q1, t_frac.ratio) +
              Rational(static_cast<std::int64_t>(dn) * s1, 2 * l1) +
              Rational(static_cast<std::int64_t>(kappa) * s2, l2);
          sum += turns_to_unit(turns);
        }
      }
      e.coefficients[static_cast<std::size_t>(s1) * l2 + s2] = scale * sum;
    }
  }
  // exp(-i pi t / T_k) with t / T_k = p12/q12 * t_rev^(nk) / T_k = p12/q12 * nbar.
  if (e.kappa0 == 1) e.phase_turns = mod1(t_frac.p12q12 * Rational(nbar) / Rational(2));
  return e;
}

}  // namespace

double StarkSetup::full_revival() const {
  return static_cast<double>(ratio.denominator()) * *scales.t_rev_n;
}

StarkSetup stark_setup(int nbar, const Rational& ratio) {
  StarkSetup s;
  s.nbar = nbar;
  s.ratio = ratio;
  s.tuning = tune_field(nbar, ratio);
  s.model = StarkSpectrum{s.tuning.field};
  s.scales = time_scales(s.model, nbar);
  s.exact = exact_stark_scales(nbar, s.tuning.field_exact);
  return s;
}

int sector_kappa0(Sector sector, int nbar) {
  const int n_parity = (nbar + sector_rho(sector)) % 2;
  return n_parity == 0 ? 1 : 0;
}

double SectorPacket::norm_squared() const {
  double total = 0.0;
  for (const auto& e : entries) total += std::norm(e.amplitude);
  return total;
}

PacketCoefficients SectorPacket::as_packet(const PacketCoefficients& parent) const {
  PacketCoefficients p;
  p.center = parent.center;
  p.center_k = parent.center_k;
  p.two_index = true;
  p.profile = parent.profile;
  for (const auto& e : entries) p.entries.push_back({e.index, e.amplitude});
  return p;
}

ParitySplit split_parity(const PacketCoefficients& packet) {
  if (!packet.two_index) {
    fail(ErrorCode::kInvalidArgument, kModule, "parity split needs a Stark packet");
  }
  const double rounded = std::round(packet.center);
  if (std::abs(packet.center - rounded) > 1e-12) {
    fail(ErrorCode::kInvalidCenter, kModule, "parity split needs an integer center");
  }
  ParitySplit split;
  split.nbar = static_cast<int>(rounded);
  split.parent_size = packet.entries.size();
  split.odd.sector = Sector::kOdd;
  split.odd.kappa0 = sector_kappa0(Sector::kOdd, split.nbar);
  split.even.sector = Sector::kEven;
  split.even.kappa0 = sector_kappa0(Sector::kEven, split.nbar);

  for (std::size_t i = 0; i < packet.entries.size(); ++i) {
    const auto& e = packet.entries[i];
    const int n = e.index.n, k = e.index.k;
    const bool parity_ok = (k % 2 == 0) == (n % 2 != 0);
    if (n < 1 || std::abs(k) > n - 1 || !parity_ok) {
      fail(ErrorCode::kParityViolation, kModule,
           "entry (n=" + std::to_string(n) + ", k=" + std::to_string(k) +
               ") breaks |k| <= n-1 or the k-even-iff-n-odd rule");
    }
    const int dn = n - split.nbar;
    SectorPacket& target = (dn % 2 != 0) ? split.odd : split.even;
    target.entries.push_back({i, e.index, dn, (k - target.kappa0) / 2, e.amplitude});
  }
  return split;
}

FractionalTime fractional_time(const StarkSetup& setup, const Rational& fraction) {
  if (fraction <= 0) {
    fail(ErrorCode::kInvalidArgument, kModule, "fractional time must be positive");
  }
  FractionalTime t;
  t.ratio = setup.ratio;
  t.p1q1 = fraction * Rational(setup.ratio.denominator());
  t.p12q12 = fraction * Rational(setup.ratio.numerator());
  t.time = to_double(fraction) * setup.full_revival();
  return t;
}

Rational theta_phase(int dn, int kprime, int kappa0, const Rational& p1q1,
                     const Rational& ratio) {
  const Rational n(dn);
  const Rational pr = p1q1 * ratio;
  return mod1(p1q1 * n * n - pr * n * Rational(kprime) - Rational(kappa0) * pr * n / 2);
}

bool verify_periods(Sector sector, int nbar, const FractionalTime& t_frac,
                    const SectorPeriods& periods, int block) {
  const int kappa0 = sector_kappa0(sector, nbar);
  return invariant_under(sector, kappa0, t_frac, periods.l1, 0, block) &&
         invariant_under(sector, kappa0, t_frac, 0, periods.l2, block);
}

MinimalPeriods minimal_periods(const FractionalTime& t_frac, int nbar) {
  return {sector_periods(Sector::kOdd, nbar, t_frac),
          sector_periods(Sector::kEven, nbar, t_frac)};
}

Complex SectorExpansion::at(int s1, int s2) const {
  return coefficients.at(static_cast<std::size_t>(s1) * periods.l2 + s2);
}

double SectorExpansion::norm_squared() const {
  double total = 0.0;
  for (const auto& a : coefficients) total += std::norm(a);
  return total;
}

std::vector<std::pair<int, int>> SectorExpansion::significant(double threshold) const {
  std::vector<std::pair<int, int>> out;
  for (int s1 = 0; s1 < periods.l1; ++s1) {
    for (int s2 = 0; s2 < periods.l2; ++s2) {
      if (std::abs(at(s1, s2)) > threshold) out.emplace_back(s1, s2);
    }
  }
  return out;
}

SubsidiaryExpansion expansion_coefficients(const FractionalTime& t_frac, int nbar,
                                           const MinimalPeriods& periods) {
  SubsidiaryExpansion out;
  out.time = t_frac;
  out.nbar = nbar;
  out.odd = sector_expansion(Sector::kOdd, nbar, t_frac, periods.odd);
  out.even = sector_expansion(Sector::kEven, nbar, t_frac, periods.even);
  return out;
}

SubsidiaryExpansion expansion_coefficients(const FractionalTime& t_frac, int nbar) {
  return expansion_coefficients(t_frac, nbar, minimal_periods(t_frac, nbar));
}

std::pair<double, double> subsidiary_shift(const SectorExpansion& sector, int s1, int s2,
                                           const TimeScaleSet& scales) {
  return {s1 * *scales.t_cl_n / (2.0 * sector.periods.l1),
          s2 * *scales.t_cl_k / sector.periods.l2};
}

std::vector<Complex> psi_cl(const SectorPacket& sector, const TimeScaleSet& scales,
                            long double t1, long double t2) {
  if (!scales.t_cl_n || !scales.t_cl_k) {
    fail(ErrorCode::kUndefinedScale, kModule, "psi_cl needs both classical periods");
  }
  const long double x1 = t1 / static_cast<long double>(*scales.t_cl_n);
  const long double x2 = t2 / static_cast<long double>(*scales.t_cl_k);
  std::vector<Complex> out;
  out.reserve(sector.entries.size());
  for (const auto& e : sector.entries) {
    out.push_back(e.amplitude * unit_from_cycles(e.dn * x1 + e.kprime * x2));
  }
  return out;
}

std::vector<Complex> evolve_direct(const StarkSetup& setup, const PacketCoefficients& packet,
                                   double t) {
  const PhaseModel phase = PhaseModel::truncated(setup.scales, 2);
  std::vector<Complex> out;
  out.reserve(packet.entries.size());
  for (const auto& e : packet.entries) {
    out.push_back(e.amplitude * phase_at(setup.model, phase, e.index, t));
  }
  return out;
}

std::vector<Complex> reconstruct(const StarkSetup& setup, const ParitySplit& split,
                                 const SubsidiaryExpansion& expansion, double t) {
  if (std::abs(t - expansion.time.time) > 1e-9 * std::abs(expansion.time.time)) {
    fail(ErrorCode::kTimeMismatch, kModule,
         "reconstruction time differs from the expansion's fractional time");
  }
  std::vector<Complex> out(split.parent_size, Complex(0.0, 0.0));
  const long double tl = t;
  auto accumulate = [&](const SectorPacket& sector, const SectorExpansion& exp) {
    const Complex global = std::conj(turns_to_unit(exp.phase_turns));
    for (int s1 = 0; s1 < exp.periods.l1; ++s1) {
      for (int s2 = 0; s2 < exp.periods.l2; ++s2) {
        const Complex a = exp.at(s1, s2) * global;
        const long double tau1 = static_cast<long double>(s1) * *setup.scales.t_cl_n /
                                 (2.0L * exp.periods.l1);
        const long double tau2 =
            static_cast<long double>(s2) * *setup.scales.t_cl_k / exp.periods.l2;
        const auto v = psi_cl(sector, setup.scales, tl + tau1, tl + tau2);
        for (std::size_t j = 0; j < v.size(); ++j) out[sector.entries[j].source] += a * v[j];
      }
    }
  };
  accumulate(split.odd, expansion.odd);
  accumulate(split.even, expansion.even);
  return out;
}

double max_abs_difference(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) {
    fail(ErrorCode::kInvalidArgument, kModule, "coefficient sets differ in size");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

AntiperiodicityReport antiperiodicity_check(const ParitySplit& split,
                                            const TimeScaleSet& scales,
                                            std::span<const double> times) {
  AntiperiodicityReport report;
  report.samples = times.size();
  const long double half = 0.5L * static_cast<long double>(*scales.t_cl_n);
  for (double t : times) {
    const long double tl = t;
    double odd_plus = 0.0, odd_minus = 0.0, even_plus = 0.0, even_minus = 0.0;
    const auto o0 = psi_cl(split.odd, scales, tl, tl);
    const auto o1 = psi_cl(split.odd, scales, tl + half, tl);
    for (std::size_t j = 0; j < o0.size(); ++j) {
      odd_plus += std::norm(o1[j] + o0[j]);
      odd_minus += std::norm(o1[j] - o0[j]);
    }
    const auto e0 = psi_cl(split.even, scales, tl, tl);
    const auto e1 = psi_cl(split.even, scales, tl + half, tl);
    for (std::size_t j = 0; j < e0.size(); ++j) {
      even_plus += std::norm(e1[j] + e0[j]);
      even_minus += std::norm(e1[j] - e0[j]);
    }
    report.odd_deviation = std::max(report.odd_deviation, std::sqrt(odd_plus));
    report.even_deviation = std::max(report.even_deviation, std::sqrt(even_minus));
    report.mixed_antiperiodic_deviation =
        std::max(report.mixed_antiperiodic_deviation, std::sqrt(odd_plus + even_plus));
    report.mixed_periodic_deviation =
        std::max(report.mixed_periodic_deviation, std::sqrt(odd_minus + even_minus));
  }
  return report;
}

NodeReport node_structure(const AutocorrelationTrace& trace, double half_period,
                          double relative_depth) {
  if (!(half_period > 0.0)) {
    fail(ErrorCode::kInvalidArgument, kModule, "half period must be positive");
  }
  const std::size_t n = trace.size();
  if (n < 3) fail(ErrorCode::kInsufficientResolution, kModule, "trace has fewer than 3 samples");
  std::vector<double> steps;
  for (std::size_t i = 1; i < n; ++i) steps.push_back(trace.times[i] - trace.times[i - 1]);
  std::nth_element(steps.begin(), steps.begin() + steps.size() / 2, steps.end());
  const double dt = steps[steps.size() / 2];

  NodeReport report;
  report.samples_per_half_period = half_period / dt;
  if (report.samples_per_half_period < 64.0) {
    fail(ErrorCode::kInsufficientResolution, kModule,
         "node search needs >= 64 samples per half classical period, got " +
             std::to_string(report.samples_per_half_period));
  }
  const std::vector<double> v = trace.abs2();
  report.depth_threshold = relative_depth * *std::max_element(v.begin(), v.end());

  std::vector<std::pair<double, double>> minima;  // (time, value)
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(v[i] < v[i - 1]) || v[i] > v[i + 1] || v[i] > report.depth_threshold) continue;
    double t = trace.times[i];
    double value = v[i];
    const double curvature = v[i - 1] - 2.0 * v[i] + v[i + 1];
    if (curvature > 0.0) {
      const double delta = 0.5 * (v[i - 1] - v[i + 1]) / curvature;
      if (std::abs(delta) <= 1.0) {
        t += delta * 0.5 * (trace.times[i + 1] - trace.times[i - 1]);
        value -= 0.25 * (v[i - 1] - v[i + 1]) * delta;
      }
    }
    if (!minima.empty() && t - minima.back().first < 0.1 * half_period) {
      if (value < minima.back().second) minima.back() = {t, value};
      continue;
    }
    minima.emplace_back(t, value);
  }
  for (const auto& m : minima) report.nodes.push_back(m.first);
  if (report.nodes.size() >= 2) {
    std::vector<double> gaps;
    for (std::size_t i = 1; i < report.nodes.size(); ++i) {
      gaps.push_back(report.nodes[i] - report.nodes[i - 1]);
    }
    std::sort(gaps.begin(), gaps.end());
    const std::size_t m = gaps.size() / 2;
    report.spacing = gaps.size() % 2 == 1 ? gaps[m] : 0.5 * (gaps[m - 1] + gaps[m]);
  }
  return report;
}

StarkDecomposition stark_decompose(int nbar, const Rational& ratio, const Rational& fraction,
                                   double sigma_n, double sigma_k, int window,
                                   std::size_t antiperiodicity_samples) {
  StarkDecomposition d;
  d.setup = stark_setup(nbar, ratio);
  d.packet = build_stark_packet(d.setup.model, nbar, sigma_n, sigma_k, window);
  d.split = split_parity(d.packet);
  d.time = fractional_time(d.setup, fraction);
  d.expansion = expansion_coefficients(d.time, nbar);
  const auto rebuilt = reconstruct(d.setup, d.split, d.expansion, d.time.time);
  const auto direct = evolve_direct(d.setup, d.packet, d.time.time);
  d.reconstruction_error = max_abs_difference(rebuilt, direct);
  const auto grid = linear_grid(0.0, d.setup.full_revival(), antiperiodicity_samples);
  d.antiperiodicity = antiperiodicity_check(d.split, d.setup.scales, grid);
  return d;
}

StarkNodeAnalysis stark_node_analysis(const StarkSetup& setup, const PacketCoefficients& packet,
                                      const Rational& fraction, double half_width,
                                      int samples_per_half_period) {
  if (!(half_width > 0.0) || samples_per_half_period < 1) {
    fail(ErrorCode::kInvalidArgument, kModule, "node window and resolution must be positive");
  }
  StarkNodeAnalysis a;
  const double t_n = *setup.scales.t_cl_n;
  a.center = to_double(fraction) * setup.full_revival();
  a.half_period = 0.5 * t_n;
  const auto count = static_cast<std::size_t>(
      std::llround(4.0 * half_width * samples_per_half_period)) + 1;
  const auto grid = linear_grid(a.center - half_width * t_n, a.center + half_width * t_n, count);
  const PhaseModel phase = PhaseModel::truncated(setup.scales, 2);
  const ParitySplit split = split_parity(packet);
  a.full = autocorrelation(setup.model, packet, phase, grid);
  a.odd = autocorrelation(setup.model, split.odd.as_packet(packet), phase, grid);
  a.even = autocorrelation(setup.model, split.even.as_packet(packet), phase, grid);
  a.full_nodes = node_structure(a.full, a.half_period);
  a.odd_nodes = node_structure(a.odd, a.half_period);
  a.even_nodes = node_structure(a.even, a.half_period);
  return a;
}

}  // namespace revlab
