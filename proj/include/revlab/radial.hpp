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

namespace revlab {

struct RadialValue {
  double value = 0.0;       // R_nl(r)
  double derivative = 0.0;  // dR_nl/dr
};

/// Normalized hydrogen radial function R_nl(r) and its derivative, with
/// int_0^inf R^2 r^2 dr = 1. The Laguerre factor is built by upward
/// recurrence with running rescaling, so n in the hundreds is safe.
RadialValue radial_function(int n, int l, double r);

inline double radial_value(int n, int l, double r) {
  return radial_function(n, l, r).value;
}

}  // namespace revlab
