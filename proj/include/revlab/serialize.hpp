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
#include <string>
#include <string_view>

#include <json.hpp>

#include "revlab/analysis.hpp"
#include "revlab/packet.hpp"
#include "revlab/spectrum.hpp"
#include "revlab/squeezed.hpp"
#include "revlab/stark.hpp"

namespace revlab {

using Json = nlohmann::ordered_json;

/// Fixed 17-significant-digit rendering used in every CSV.
std::string format_number(double value);

Json to_json(const SpectrumModel& model);
/// {"kind": "hydrogen" | "quantum_defect" | "stark" | "tabulated", ...}.
SpectrumModel spectrum_from_json(const Json& j);

/// Two-column "n,E" text; blank lines, '#' comments and a header are skipped.
TabulatedSpectrum tabulated_from_csv(std::string_view text);

Json to_json(const TimeScaleSet& scales);
Json to_json(const PacketCoefficients& packet);
Json to_json(const RevivalReport& report);
Json to_json(const SpectrumClass& cls);
Json to_json(const FieldTuning& tuning);
Json to_json(const SqueezedStateParams& params);
Json to_json(const FractionalTime& t_frac);
Json to_json(const SubsidiaryExpansion& expansion, const TimeScaleSet& scales);
Json to_json(const NodeReport& nodes);

/// t_atomic,t_si,re_A,im_A,abs2_A
std::string trace_csv(const AutocorrelationTrace& trace);

/// t_atomic,t_si,mean_r,delta_r,mean_p,delta_p,product
std::string uncertainty_csv(std::span<const UncertaintySample> series);

/// Aligned plain-text table of predictions and detections.
std::string revival_table(const RevivalReport& report);

}  // namespace revlab
