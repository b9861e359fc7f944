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

#include "revlab/packet.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "revlab/error.hpp"
#include "revlab/radial.hpp"

namespace revlab {

namespace {

constexpr const char* kModule = "packet";
constexpr long double kTwoPiL = 2.0L * std::numbers::pi_v<long double>;

void normalize(std::vector<PacketEntry>& entries, const std::vector<double>& log_weights) {
  const double top = *std::max_element(log_weights.begin(), log_weights.end());
  std::vector<PacketEntry> kept;
  std::vector<double> weights;
  double total = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const double w = std::exp(log_weights[i] - top);
    if (w == 0.0) continue;
    kept.push_back(entries[i]);
    weights.push_back(w);
    total += w;
  }
  for (std::size_t i = 0; i < kept.size(); ++i) {
    kept[i].amplitude = Complex(std::sqrt(weights[i] / total), 0.0);
  }
  entries = std::move(kept);
}

int quantum_l(const SpectrumModel& model) {
  if (const auto* qd = std::get_if<QuantumDefectSpectrum>(&model)) return qd->l;
  return 1;
}

// Offset of a level from the expansion center, in the variable the Taylor
// coefficients were taken in.
double center_offset(const SpectrumModel& model, const TimeScaleSet& scales,
                     const StateIndex& index) {
  if (const auto* qd = std::get_if<QuantumDefectSpectrum>(&model)) {
    const double center =
        scales.effective_center ? scales.effective_center->value : scales.center;
    return index.n - qd->defect(index.l) - center;
  }
  return index.n - scales.center;
}

}  // namespace

double PacketCoefficients::norm_squared() const {
  double total = 0.0;
  for (const auto& e : entries) total += std::norm(e.amplitude);
  return total;
}

int default_window(double sigma) {
  return std::max(1, static_cast<int>(std::ceil(5.0 * sigma)));
}

PacketCoefficients build_packet(const SpectrumModel& model, double nbar, double sigma,
                                int window) {
  if (is_two_index(model)) {
    fail(ErrorCode::kInvalidArgument, kModule,
         "Stark packets need build_stark_packet (two widths)");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    fail(ErrorCode::kInvalidArgument, kModule, "sigma must be positive");
  }
  if (window < 1) fail(ErrorCode::kInvalidArgument, kModule, "window must be >= 1");
  if (!std::isfinite(nbar) || nbar < 1.0) {
    fail(ErrorCode::kInvalidCenter, kModule, "center must be finite and >= 1");
  }
  const int lo = static_cast<int>(std::ceil(nbar - window));
  const int hi = static_cast<int>(std::floor(nbar + window));
  if (hi < lo) fail(ErrorCode::kEmptyWindow, kModule, "index window is empty");

  PacketCoefficients packet;
  packet.center = nbar;
  packet.profile = {"gaussian", sigma, 0.0, window};
  std::vector<double> log_weights;
  const int l = quantum_l(model);
  for (int n = lo; n <= hi; ++n) {
    const StateIndex index{n, 0, l};
    validate_index(model, index);
    const double dn = n - nbar;
    packet.entries.push_back({index, Complex(0.0, 0.0)});
    log_weights.push_back(-dn * dn / (2.0 * sigma * sigma));
  }
  normalize(packet.entries, log_weights);
  return packet;
}

PacketCoefficients build_stark_packet(const SpectrumModel& model, double nbar,
                                      double sigma_n, double sigma_k, int window) {
  if (!is_two_index(model)) {
    fail(ErrorCode::kInvalidArgument, kModule, "build_stark_packet needs a Stark model");
  }
  if (!(sigma_n > 0.0) || !(sigma_k > 0.0)) {
    fail(ErrorCode::kInvalidArgument, kModule, "sigma_n and sigma_k must be positive");
  }
  if (window < 1) fail(ErrorCode::kInvalidArgument, kModule, "window must be >= 1");
  if (!std::isfinite(nbar) || nbar < 2.0) {
    fail(ErrorCode::kInvalidCenter, kModule, "Stark center must be finite and >= 2");
  }
  const int lo = std::max(1, static_cast<int>(std::ceil(nbar - window)));
  const int hi = static_cast<int>(std::floor(nbar + window));

  PacketCoefficients packet;
  packet.center = nbar;
  packet.center_k = 0.0;
  packet.two_index = true;
  packet.profile = {"gaussian", sigma_n, sigma_k, window};
  std::vector<double> log_weights;
  for (int n = lo; n <= hi; ++n) {
    const int kmax = std::min(window, n - 1);
    for (int k = -kmax; k <= kmax; ++k) {
      if ((k % 2 == 0) != (n % 2 != 0)) continue;
      const double dn = n - nbar;
      packet.entries.push_back({StateIndex{n, k, 0}, Complex(0.0, 0.0)});
      log_weights.push_back(-dn * dn / (2.0 * sigma_n * sigma_n) -
                            static_cast<double>(k) * k / (2.0 * sigma_k * sigma_k));
    }
  }
  if (packet.entries.empty()) fail(ErrorCode::kEmptyWindow, kModule, "no valid (n, k) pairs");
  normalize(packet.entries, log_weights);
  return packet;
}

PhaseModel PhaseModel::exact(const TimeScaleSet& scales) {
  return PhaseModel{PhaseMode::kExact, 0, scales};
}

PhaseModel PhaseModel::truncated(const TimeScaleSet& scales, int order) {
  if (order < 1 || order > 3) {
    fail(ErrorCode::kInvalidArgument, kModule, "truncation order must be 1, 2 or 3");
  }
  if (order == 3 && !scales.t_sr) {
    fail(ErrorCode::kUndefinedScale, kModule,
         "third-order phase requested but t_sr is undefined for this spectrum");
  }
  return PhaseModel{PhaseMode::kTruncated, order, scales};
}

long double angular_frequency(const SpectrumModel& model, const PhaseModel& phase,
                              const StateIndex& index) {
  if (phase.mode == PhaseMode::kExact) return energy(model, index);
  validate_index(model, index);
  const TimeScaleSet& s = phase.scales;
  if (phase.order == 3 && !s.t_sr) {
    fail(ErrorCode::kUndefinedScale, kModule,
         "third-order phase requested but t_sr is undefined for this spectrum");
  }
  const long double x = center_offset(model, s, index);
  long double w = static_cast<long double>(s.d1) * x;
  if (phase.order >= 2) w += 0.5L * s.d2 * x * x;
  if (phase.order >= 3) w += static_cast<long double>(s.d3) * x * x * x / 6.0L;
  if (s.two_index) {
    const long double k = index.k - s.center_k;
    w += static_cast<long double>(s.dk) * k;
    if (phase.order >= 2) w += static_cast<long double>(s.dnk) * x * k;
  }
  return w;
}

namespace {

Complex unit_phase(long double w, double t) {
  const long double angle = std::fmod(w * static_cast<long double>(t), kTwoPiL);
  const double a = static_cast<double>(angle);
  return {std::cos(a), -std::sin(a)};
}

}  // namespace

Complex phase_at(const SpectrumModel& model, const PhaseModel& phase,
                 const StateIndex& index, double t) {
  return unit_phase(angular_frequency(model, phase, index), t);
}

std::vector<double> AutocorrelationTrace::abs2() const {
  std::vector<double> out(amplitude.size());
  for (std::size_t i = 0; i < amplitude.size(); ++i) out[i] = std::norm(amplitude[i]);
  return out;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t min_parallel) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers =
      count < std::max<std::size_t>(min_parallel, 2) ? 1 : std::min({hw, count, std::size_t{16}});
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<double> linear_grid(double t0, double t1, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {t0};
  std::vector<double> grid(count);
  const double step = (t1 - t0) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) grid[i] = t0 + step * static_cast<double>(i);
  grid.back() = t1;
  return grid;
}

AutocorrelationTrace autocorrelation(const SpectrumModel& model,
                                     const PacketCoefficients& packet,
                                     const PhaseModel& phase,
                                     std::span<const double> times) {
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      fail(ErrorCode::kInvalidArgument, kModule, "time grid must be strictly increasing");
    }
  }
  std::vector<double> weights;
  std::vector<long double> rates;
  for (const auto& e : packet.entries) {
    weights.push_back(std::norm(e.amplitude));
    rates.push_back(angular_frequency(model, phase, e.index));
  }
  AutocorrelationTrace trace;
  trace.times.assign(times.begin(), times.end());
  trace.amplitude.resize(times.size());
  parallel_for(times.size(), [&](std::size_t i) {
    Complex sum(0.0, 0.0);
    for (std::size_t j = 0; j < weights.size(); ++j) {
      sum += weights[j] * unit_phase(rates[j], times[i]);
    }
    trace.amplitude[i] = sum;
  });
  return trace;
}

double integrate_samples(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    fail(ErrorCode::kInvalidArgument, kModule, "integrand and grid sizes differ");
  }
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  const double h = (x[n - 1] - x[0]) / static_cast<double>(n - 1);
  bool uniform = n % 2 == 1;
  for (std::size_t i = 1; uniform && i < n; ++i) {
    if (std::abs((x[i] - x[i - 1]) - h) > 1e-9 * std::abs(h)) uniform = false;
  }
  if (uniform) {
    double s = y[0] + y[n - 1];
    for (std::size_t i = 1; i + 1 < n; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * y[i];
    return s * h / 3.0;
  }
  double s = 0.0;
  for (std::size_t i = 1; i < n; ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return s;
}

std::vector<double> radial_density(const SpectrumModel& model,
                                   const PacketCoefficients& packet,
                                   const PhaseModel& phase, std::span<const double> r,
                                   double t) {
  if (!std::holds_alternative<HydrogenSpectrum>(model)) {
    fail(ErrorCode::kInvalidArgument, kModule, "radial density needs the hydrogen model");
  }
  if (r.size() < 3) fail(ErrorCode::kGridTooCoarse, kModule, "radial grid needs >= 3 points");
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (!(r[i] > r[i - 1]) || r[0] < 0.0) {
      fail(ErrorCode::kInvalidArgument, kModule,
           "radial grid must be nonnegative and strictly increasing");
    }
  }
  std::vector<Complex> evolved;
  std::vector<int> levels;
  for (const auto& e : packet.entries) {
    evolved.push_back(e.amplitude * phase_at(model, phase, e.index, t));
    levels.push_back(e.index.n);
  }
  std::vector<double> density(r.size());
  parallel_for(r.size(), [&](std::size_t i) {
    Complex psi(0.0, 0.0);
    for (std::size_t j = 0; j < levels.size(); ++j) {
      psi += evolved[j] * radial_value(levels[j], 1, r[i]);
    }
    density[i] = std::norm(psi) * r[i] * r[i];
  });
  const double total = integrate_samples(r, density);
  const double expected = packet.norm_squared();
  if (std::abs(total - expected) > 1e-6) {
    fail(ErrorCode::kGridTooCoarse, kModule,
         "density integrates to " + std::to_string(total) + " instead of " +
             std::to_string(expected) + "; refine or extend the radial grid");
  }
  return density;
}

}  // namespace revlab
