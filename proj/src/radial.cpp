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

#include "revlab/radial.hpp"

#include <cmath>
#include <string>

#include "revlab/error.hpp"

namespace revlab {

namespace {

constexpr double kRescaleAbove = 1e150;

}  // namespace

RadialValue radial_function(int n, int l, double r) {
  if (n < 1 || l < 0 || l >= n) {
    fail(ErrorCode::kInvalidIndex, "radial",
         "need 0 <= l < n, got n=" + std::to_string(n) + " l=" + std::to_string(l));
  }
  if (r < 0.0 || !std::isfinite(r)) {
    fail(ErrorCode::kInvalidArgument, "radial", "radius must be finite and >= 0");
  }
  const int k = n - l - 1;
  const double alpha = 2.0 * l + 1.0;
  const double rho = 2.0 * r / n;

  // L_k^alpha(rho) and L_{k-1}^alpha(rho), both carrying exp(log_scale).
  double prev = 0.0;
  double cur = 1.0;
  double log_scale = 0.0;
  for (int j = 0; j < k; ++j) {
    const double next = ((2.0 * j + 1.0 + alpha - rho) * cur - (j + alpha) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescaleAbove) {
      prev /= kRescaleAbove;
      cur /= kRescaleAbove;
      log_scale += std::log(kRescaleAbove);
    }
  }

  const double log_norm =
      0.5 * (3.0 * std::log(2.0 / n) + std::lgamma(k + 1.0) -
             std::log(2.0 * n) - std::lgamma(n + l + 1.0));

  RadialValue out;
  if (rho == 0.0) {
    // Only l = 0 and l = 1 survive at the origin (in value or slope).
    const double lag0 = std::exp(std::lgamma(k + alpha + 1.0) - std::lgamma(k + 1.0) -
                                 std::lgamma(alpha + 1.0));
    const double norm = std::exp(log_norm);
    if (l == 0) {
      // L'(0) = -L_{k-1}^{alpha+1}(0)
      const double dlag0 =
          k == 0 ? 0.0
                 : -std::exp(std::lgamma(k + alpha + 1.0) - std::lgamma(k) -
                             std::lgamma(alpha + 2.0));
      out.value = norm * lag0;
      out.derivative = (2.0 / n) * norm * (dlag0 - 0.5 * lag0);
    } else if (l == 1) {
      out.derivative = (2.0 / n) * norm * lag0;
    }
    return out;
  }

  const double log_common = log_norm + (l - 1) * std::log(rho) - 0.5 * rho + log_scale;
  const double common = std::exp(log_common);
  out.value = common * rho * cur;
  // rho L' = k L_k - (k + alpha) L_{k-1}
  const double bracket = (l + k - 0.5 * rho) * cur - (k + alpha) * prev;
  out.derivative = (2.0 / n) * common * bracket;
  return out;
}

}  // namespace revlab
