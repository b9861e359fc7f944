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

// Conversion constants between atomic units and the SI-flavoured units used at
// the command-line boundary. Everything inside the library is atomic units.

namespace revlab::units {

inline constexpr double kSecondsPerAtomicTime = 2.418884326e-17;
inline constexpr double kVoltsPerCmPerAtomicField = 5.142206747e9;

constexpr double to_seconds(double t_au) { return t_au * kSecondsPerAtomicTime; }
constexpr double to_atomic_time(double seconds) {
  return seconds / kSecondsPerAtomicTime;
}
constexpr double to_volts_per_cm(double field_au) {
  return field_au * kVoltsPerCmPerAtomicField;
}
constexpr double to_atomic_field(double volts_per_cm) {
  return volts_per_cm / kVoltsPerCmPerAtomicField;
}

}  // namespace revlab::units
