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

#include "revlab/squeezed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "revlab/error.hpp"
#include "revlab/radial.hpp"

namespace revlab {

namespace {

constexpr const char* kModule = "squeezed";

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 61>;

// Point where the log density falls `drop` below its value at `peak`, searched
// by bisection on [lo, hi] assuming monotonic decay away from the peak.
template <class F>
double log_drop_point(F log_density, double peak, double lo, double hi, double drop) {
  const double target = log_density(peak) - drop;
  double inside = peak, outside = (lo == peak) ? hi : lo;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (inside + outside);
    if (log_density(mid) > target) {
      inside = mid;
    } else {
      outside = mid;
    }
  }
  return outside;
}

}  // namespace

SqueezedStateParams SqueezedStateParams::make(double alpha, double gamma0, double gamma1,
                                              int l) {
  if (!(alpha > -1.5) || !std::isfinite(alpha)) {
    fail(ErrorCode::kInvalidArgument, kModule, "alpha must exceed -3/2");
  }
  if (!(gamma0 > 0.0) || !std::isfinite(gamma0)) {
    fail(ErrorCode::kInvalidArgument, kModule, "gamma0 must be positive");
  }
  if (!std::isfinite(gamma1)) fail(ErrorCode::kInvalidArgument, kModule, "gamma1 must be finite");
  if (l < 0) fail(ErrorCode::kInvalidArgument, kModule, "l must be >= 0");
  return SqueezedStateParams{alpha, gamma0, gamma1, l};
}

double SqueezedStateParams::log_normalization() const {
  const double a = 2.0 * alpha + 3.0;
  return 0.5 * (a * std::log(2.0 * gamma0) - std::lgamma(a));
}

double SqueezedStateParams::normalization() const { return std::exp(log_normalization()); }

Complex SqueezedStateParams::value(double r) const {
  if (r <= 0.0) return alpha == 0.0 && r == 0.0 ? Complex(normalization(), 0.0) : Complex(0.0, 0.0);
  const double magnitude = std::exp(log_normalization() + alpha * std::log(r) - gamma0 * r);
  return magnitude * Complex(std::cos(gamma1 * r), -std::sin(gamma1 * r));
}

double SqueezedStateParams::moment(int m) const {
  const double a = 2.0 * alpha + 3.0;
  if (!(a + m > 0.0)) {
    fail(ErrorCode::kDivergentMoment, kModule,
         "<r^" + std::to_string(m) + "> diverges: needs 2 alpha + 3 + m > 0");
  }
  const double two_g = 2.0 * gamma0;
  if (std::abs(m) <= 64) {
    double out = 1.0;
    for (int j = 0; j < m; ++j) out *= (a + j) / two_g;
    for (int j = 1; j <= -m; ++j) out *= two_g / (a - j);
    return out;
  }
  return std::exp(std::lgamma(a + m) - std::lgamma(a) - m * std::log(two_g));
}

double SqueezedStateParams::delta_r() const {
  // <r^2> - <r>^2 = (2 alpha + 3) / (2 gamma0)^2
  return std::sqrt(2.0 * alpha + 3.0) / (2.0 * gamma0);
}

double SqueezedStateParams::mean_p2() const {
  if (!(alpha > -0.5)) {
    fail(ErrorCode::kDivergentMoment, kModule, "<p_r^2> diverges for alpha <= -1/2");
  }
  return gamma0 * gamma0 / (2.0 * alpha + 1.0) + gamma1 * gamma1;
}

double SqueezedStateParams::delta_p() const {
  return gamma0 / std::sqrt(2.0 * alpha + 1.0);
}

double SqueezedStateParams::energy() const {
  const double centrifugal = 0.5 * l * (l + 1.0) * moment(-2);
  return 0.5 * mean_p2() + centrifugal - moment(-1);
}

double moment_by_quadrature(const SqueezedStateParams& params, int m) {
  const double a = 2.0 * params.alpha + 3.0;
  if (!(a + m > 0.0)) {
    fail(ErrorCode::kDivergentMoment, kModule, "moment diverges");
  }
  // x = 2 gamma0 r turns the integral into a normalized gamma density.
  const double power = a + m - 1.0;
  const double log_gamma_a = std::lgamma(a);
  auto f = [&](double x) {
    if (x <= 0.0) return power == 0.0 ? std::exp(-log_gamma_a) : 0.0;
    return std::exp(power * std::log(x) - x - log_gamma_a);
  };
  const double peak = std::max(power, 0.0);
  const double width = std::sqrt(peak + 1.0);
  const double cuts[] = {0.0, 0.5 * peak, peak, peak + 5.0 * width, peak + 40.0 * width + 80.0};
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < std::size(cuts); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    total += Kronrod::integrate(f, cuts[i], cuts[i + 1], 15, 1e-14);
  }
  return total * std::pow(2.0 * params.gamma0, -m);
}

double outer_apsis(double nbar, int l, OuterApsis rule) {
  if (!(nbar > 0.0)) fail(ErrorCode::kInvalidArgument, kModule, "nbar must be positive");
  if (rule == OuterApsis::kRadial) return 2.0 * nbar * nbar;
  const double x = 1.0 - l * (l + 1.0) / (nbar * nbar);
  if (x < 0.0) {
    fail(ErrorCode::kInvalidArgument, kModule, "l(l+1) exceeds nbar^2; no outer apsis");
  }
  return nbar * nbar * (1.0 + std::sqrt(x));
}

double FitTarget::energy() const { return -0.5 / (nbar * nbar); }

SqueezedStateParams fit(const FitTarget& target) {
  if (!(target.nbar > 0.0) || !std::isfinite(target.nbar)) {
    fail(ErrorCode::kInvalidArgument, kModule, "nbar must be positive");
  }
  if (target.l < 0) fail(ErrorCode::kInvalidArgument, kModule, "l must be >= 0");
  const double r_out =
      target.r_out == 0.0 ? outer_apsis(target.nbar, target.l, OuterApsis::kRadial) : target.r_out;
  if (!(r_out > 0.0)) fail(ErrorCode::kInvalidArgument, kModule, "r_out must be positive");
  const double e_target = target.energy();

  auto params_at = [&](double alpha) {
    return SqueezedStateParams{alpha, (2.0 * alpha + 3.0) / (2.0 * r_out), 0.0, target.l};
  };
  auto residual = [&](double alpha) { return params_at(alpha).energy() - e_target; };

  double lo = 0.0;
  double f_lo = residual(lo);
  double hi = 0.25;
  const double limit = 1e7;
  bool bracketed = false;
  double f_hi = 0.0;
  while (hi <= limit) {
    f_hi = residual(hi);
    if ((f_lo < 0.0) != (f_hi < 0.0)) {
      bracketed = true;
      break;
    }
    lo = hi;
    f_lo = f_hi;
    hi *= 2.0;
  }
  if (!bracketed) {
    fail(ErrorCode::kNoRootInBracket, kModule,
         "no sign change of <H> - E in alpha over [0, " + std::to_string(limit) + "]");
  }
  if (f_lo == 0.0) return params_at(lo);
  std::uintmax_t iterations = 200;
  const auto bracket = boost::math::tools::toms748_solve(
      residual, lo, hi, f_lo, f_hi, boost::math::tools::eps_tolerance<double>(44), iterations);
  return params_at(0.5 * (bracket.first + bracket.second));
}

Complex packet_value(const PacketCoefficients& packet, double r) {
  Complex sum(0.0, 0.0);
  for (const auto& e : packet.entries) {
    sum += e.amplitude * radial_value(e.index.n, e.index.l, r);
  }
  return sum;
}

Projection project(const SqueezedStateParams& params, int n_min, int n_max,
                   double min_captured) {
  if (n_min > n_max) fail(ErrorCode::kEmptyWindow, kModule, "empty n window");
  if (n_min <= params.l) {
    fail(ErrorCode::kInvalidIndex, kModule, "n_min must exceed l");
  }
  const double log_norm = params.log_normalization();
  auto log_density = [&](double r) {
    return 2.0 * log_norm + (2.0 * params.alpha + 2.0) * std::log(r) - 2.0 * params.gamma0 * r;
  };
  const double peak = std::max((params.alpha + 1.0) / params.gamma0, 1e-8);
  const double span = 1.0 / params.gamma0;
  double far = peak + span;
  while (log_density(far) > log_density(peak) - 90.0) far += 10.0 * span;
  const double r_hi = log_drop_point(log_density, peak, peak, far, 90.0);
  const double r_lo =
      params.alpha + 1.0 > 0.0 ? log_drop_point(log_density, peak, 1e-300, peak, 90.0) : 0.0;

  const int count = n_max - n_min + 1;
  std::vector<Complex> c(static_cast<std::size_t>(count));
  const int panels = 64;
  parallel_for(
      c.size(),
      [&](std::size_t idx) {
        const int n = n_min + static_cast<int>(idx);
        auto re = [&](double r) {
          return r <= 0.0 ? 0.0 : radial_value(n, params.l, r) * params.value(r).real() * r * r;
        };
        auto im = [&](double r) {
          return r <= 0.0 ? 0.0 : radial_value(n, params.l, r) * params.value(r).imag() * r * r;
        };
        double sre = 0.0, sim = 0.0;
        const double step = (r_hi - r_lo) / panels;
        for (int p = 0; p < panels; ++p) {
          const double a = r_lo + p * step, b = a + step;
          sre += Kronrod::integrate(re, a, b, 10, 1e-13);
          if (params.gamma1 != 0.0) sim += Kronrod::integrate(im, a, b, 10, 1e-13);
        }
        c[idx] = Complex(sre, sim);
      },
      1);

  Projection out;
  out.captured_norm = 0.0;
  for (const auto& v : c) {
    out.raw_weights.push_back(std::norm(v));
    out.captured_norm += std::norm(v);
  }
  if (out.captured_norm < min_captured) {
    fail(ErrorCode::kWindowTooNarrow, kModule,
         "window [" + std::to_string(n_min) + ", " + std::to_string(n_max) +
             "] captures norm " + std::to_string(out.captured_norm) + " < " +
             std::to_string(min_captured));
  }
  const double scale = 1.0 / std::sqrt(out.captured_norm);
  double mean_n = 0.0;
  for (int i = 0; i < count; ++i) {
    out.packet.entries.push_back({StateIndex{n_min + i, 0, params.l}, c[i] * scale});
    mean_n += (n_min + i) * out.raw_weights[i] / out.captured_norm;
  }
  out.packet.center = mean_n;
  out.packet.profile = {"squeezed", 0.0, 0.0, (n_max - n_min) / 2};
  out.packet.norm_deficit = 1.0 - out.captured_norm;
  return out;
}

std::vector<UncertaintySample> evolve_uncertainty(const PacketCoefficients& packet,
                                                  std::span<const double> times,
                                                  const RadialGrid& grid) {
  if (packet.entries.empty()) fail(ErrorCode::kEmptyWindow, kModule, "packet is empty");
  if (packet.two_index) {
    fail(ErrorCode::kInvalidArgument, kModule, "uncertainty evolution needs a radial packet");
  }
  int n_max = 0;
  for (const auto& e : packet.entries) n_max = std::max(n_max, e.index.n);
  const double r_max =
      grid.r_max > 0.0 ? grid.r_max : 2.0 * n_max * n_max + 60.0 * n_max;
  std::size_t points = std::max<std::size_t>(grid.points, 3);
  if (points % 2 == 0) ++points;
  const double h = r_max / static_cast<double>(points - 1);

  const std::size_t states = packet.entries.size();
  std::vector<double> u(states * points), du(states * points), weight(points), r(points);
  for (std::size_t i = 0; i < points; ++i) {
    r[i] = h * static_cast<double>(i);
    weight[i] = (i == 0 || i + 1 == points ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0)) * h / 3.0;
  }
  for (std::size_t j = 0; j < states; ++j) {
    const auto& idx = packet.entries[j].index;
    for (std::size_t i = 0; i < points; ++i) {
      const RadialValue rv = radial_function(idx.n, idx.l, r[i]);
      u[j * points + i] = r[i] * rv.value;
      du[j * points + i] = rv.value + r[i] * rv.derivative;
    }
  }

  const SpectrumModel model = HydrogenSpectrum{};
  const PhaseModel phase = PhaseModel::exact(TimeScaleSet{});
  std::vector<UncertaintySample> out(times.size());
  std::vector<double> norms(times.size());
  parallel_for(
      times.size(),
      [&](std::size_t k) {
        std::vector<Complex> a(states);
        for (std::size_t j = 0; j < states; ++j) {
          a[j] = packet.entries[j].amplitude *
                 phase_at(model, phase, packet.entries[j].index, times[k]);
        }
        double norm = 0.0, r1 = 0.0, r2 = 0.0, pc = 0.0, p2 = 0.0;
        for (std::size_t i = 0; i < points; ++i) {
          Complex uu(0.0, 0.0), dd(0.0, 0.0);
          for (std::size_t j = 0; j < states; ++j) {
            uu += a[j] * u[j * points + i];
            dd += a[j] * du[j * points + i];
          }
          const double w = weight[i];
          const double dens = std::norm(uu);
          norm += w * dens;
          r1 += w * r[i] * dens;
          r2 += w * r[i] * r[i] * dens;
          pc += w * (std::conj(uu) * dd).imag();
          p2 += w * std::norm(dd);
        }
        norms[k] = norm;
        UncertaintySample s;
        s.t = times[k];
        s.mean_r = r1 / norm;
        s.delta_r = std::sqrt(std::max(0.0, r2 / norm - s.mean_r * s.mean_r));
        s.mean_p = pc / norm;
        s.delta_p = std::sqrt(std::max(0.0, p2 / norm - s.mean_p * s.mean_p));
        s.product = s.delta_r * s.delta_p;
        out[k] = s;
      },
      1);
  for (std::size_t k = 0; k < norms.size(); ++k) {
    if (std::abs(norms[k] - packet.norm_squared()) > 1e-6) {
      fail(ErrorCode::kGridTooCoarse, kModule,
           "norm on the radial grid is " + std::to_string(norms[k]) +
               "; use more points or a larger r_max");
    }
  }
  return out;
}

std::optional<double> oscillation_period(std::span<const double> times,
                                         std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 8 || times.size() != n) return std::nullopt;
  const double span = times.back() - times.front();
  if (!(span > 0.0)) return std::nullopt;

  // Remove the least-squares line so secular growth does not dominate.
  double st = 0.0, sv = 0.0, stt = 0.0, stv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = times[i] - times.front();
    st += t;
    sv += values[i];
    stt += t * t;
    stv += t * values[i];
  }
  const double denom = n * stt - st * st;
  const double slope = denom != 0.0 ? (n * stv - st * sv) / denom : 0.0;
  const double offset = (sv - slope * st) / n;
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = values[i] - offset - slope * (times[i] - times.front());
  }

  // Frequencies from two cycles per span up to a quarter of the sampling rate.
  const double f_min = 2.0 / span;
  const double f_max = 0.25 * static_cast<double>(n - 1) / span;
  if (!(f_max > f_min)) return std::nullopt;
  const double df = 1.0 / (16.0 * span);
  const auto count = static_cast<std::size_t>((f_max - f_min) / df) + 1;
  std::vector<double> power(count);
  for (std::size_t j = 0; j < count; ++j) {
    const double w = 2.0 * std::numbers::pi * (f_min + df * static_cast<double>(j));
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      re += y[i] * std::cos(w * times[i]);
      im += y[i] * std::sin(w * times[i]);
    }
    power[j] = re * re + im * im;
  }
  const auto best = static_cast<std::size_t>(
      std::max_element(power.begin(), power.end()) - power.begin());
  if (!(power[best] > 0.0)) return std::nullopt;
  double f = f_min + df * static_cast<double>(best);
  if (best > 0 && best + 1 < count) {
    const double a = power[best - 1], b = power[best], c = power[best + 1];
    const double curvature = a - 2.0 * b + c;
    if (curvature < 0.0) f += 0.5 * df * (a - c) / curvature;
  }
  return 1.0 / f;
}

}  // namespace revlab
