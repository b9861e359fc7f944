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

#include "revlab/serialize.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "revlab/error.hpp"
#include "revlab/units.hpp"

namespace revlab {

namespace {

constexpr const char* kModule = "serialize";

Json optional_time(const std::optional<double>& t) {
  return t ? Json(*t) : Json(nullptr);
}

Json complex_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string sector_name(Sector s) { return s == Sector::kOdd ? "odd" : "even"; }

}  // namespace

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

Json to_json(const SpectrumModel& model) {
  Json j;
  j["kind"] = model_name(model);
  if (const auto* qd = std::get_if<QuantumDefectSpectrum>(&model)) {
    Json defects = Json::object();
    for (const auto& [l, d] : qd->defects) defects[std::to_string(l)] = d;
    j["defects"] = defects;
    j["detuning"] = qd->detuning;
    j["l"] = qd->l;
  } else if (const auto* st = std::get_if<StarkSpectrum>(&model)) {
    j["field"] = st->field;
  } else if (const auto* tab = std::get_if<TabulatedSpectrum>(&model)) {
    j["first_n"] = tab->first_n();
    j["energies"] = tab->energies();
  }
  return j;
}

SpectrumModel spectrum_from_json(const Json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "hydrogen") return HydrogenSpectrum{};
    if (kind == "quantum_defect") {
      QuantumDefectSpectrum qd;
      if (j.contains("defects")) {
        for (const auto& [key, value] : j.at("defects").items()) {
          int l = 0;
          if (!parse_number(key, l) || l < 0) {
            fail(ErrorCode::kInvalidArgument, kModule, "defect key '" + key + "' is not an l value");
          }
          qd.defects[l] = value.get<double>();
        }
      }
      qd.detuning = j.value("detuning", 0.0);
      qd.l = j.value("l", 1);
      return qd;
    }
    if (kind == "stark") {
      StarkSpectrum st{j.at("field").get<double>()};
      if (st.field < 0.0) fail(ErrorCode::kInvalidArgument, kModule, "field must be >= 0");
      return st;
    }
    if (kind == "tabulated") {
      return TabulatedSpectrum(j.value("first_n", 1), j.at("energies").get<std::vector<double>>());
    }
    fail(ErrorCode::kInvalidArgument, kModule, "unknown spectrum kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kInvalidArgument, kModule, std::string("bad spectrum description: ") + e.what());
  }
}

TabulatedSpectrum tabulated_from_csv(std::string_view text) {
  std::vector<double> energies;
  int first = 0, expected = 0;
  bool any = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = trim(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) {
      fail(ErrorCode::kInvalidArgument, kModule,
           "line " + std::to_string(line_no) + ": expected 'n,E'");
    }
    int n = 0;
    double e = 0.0;
    const bool ok = parse_number(line.substr(0, comma), n) && parse_number(line.substr(comma + 1), e);
    if (!ok) {
      if (!any && energies.empty()) continue;  // header row
      fail(ErrorCode::kInvalidArgument, kModule,
           "line " + std::to_string(line_no) + ": cannot parse 'n,E'");
    }
    if (!any) {
      first = expected = n;
      any = true;
    }
    if (n != expected) {
      fail(ErrorCode::kInvalidArgument, kModule,
           "line " + std::to_string(line_no) + ": indices must be contiguous and increasing");
    }
    energies.push_back(e);
    ++expected;
  }
  return TabulatedSpectrum(first, std::move(energies));
}

Json to_json(const TimeScaleSet& s) {
  Json j;
  j["center"] = s.center;
  if (s.two_index) j["center_k"] = s.center_k;
  j["t_cl_n"] = optional_time(s.t_cl_n);
  if (s.two_index) j["t_cl_k"] = optional_time(s.t_cl_k);
  j["t_rev_n"] = optional_time(s.t_rev_n);
  if (s.two_index) {
    j["t_rev_nk"] = optional_time(s.t_rev_nk);
    j["t_rev_k"] = optional_time(s.t_rev_k);
  }
  j["t_sr"] = optional_time(s.t_sr);
  j["derivatives"] = {{"d1", s.d1}, {"d2", s.d2}, {"d3", s.d3}};
  if (s.two_index) {
    j["derivatives"]["dk"] = s.dk;
    j["derivatives"]["dnk"] = s.dnk;
  }
  if (s.effective_center) {
    const auto& ec = *s.effective_center;
    j["effective_center"] = {{"value", ec.value},
                             {"integer_part", ec.integer_part},
                             {"fractional_part", ec.fractional_part},
                             {"defect", ec.defect},
                             {"detuning", ec.detuning}};
  }
  j["warnings"] = s.warnings;
  return j;
}

Json to_json(const PacketCoefficients& p) {
  Json j;
  j["center"] = p.center;
  if (p.two_index) j["center_k"] = p.center_k;
  j["profile"] = {{"shape", p.profile.shape},
                  {"sigma_n", p.profile.sigma_n},
                  {"sigma_k", p.profile.sigma_k},
                  {"window", p.profile.window}};
  j["norm_deficit"] = p.norm_deficit;
  Json entries = Json::array();
  for (const auto& e : p.entries) {
    Json row = {{"n", e.index.n}};
    if (p.two_index) {
      row["k"] = e.index.k;
    } else {
      row["l"] = e.index.l;
    }
    row["c"] = complex_json(e.amplitude);
    entries.push_back(row);
  }
  j["entries"] = entries;
  return j;
}

Json to_json(const RevivalReport& r) {
  Json j;
  Json predicted = Json::array();
  for (const auto& p : r.predicted) {
    predicted.push_back({{"kind", revival_kind_name(p.kind)},
                         {"time", p.time},
                         {"time_si", units::to_seconds(p.time)},
                         {"p", p.p},
                         {"q", p.q},
                         {"local_period", p.local_period}});
  }
  j["predicted"] = predicted;
  Json peaks = Json::array();
  for (const auto& p : r.peaks) {
    peaks.push_back({{"time", p.time},
                     {"abs2", p.height},
                     {"prominence", p.prominence},
                     {"local_period", optional_time(p.local_period)}});
  }
  j["peaks"] = peaks;
  Json matches = Json::array();
  for (const auto& m : r.matches) {
    matches.push_back({{"predicted", m.predicted}, {"detected", m.detected}, {"offset", m.offset}});
  }
  j["matches"] = matches;
  Json periods = Json::array();
  for (const auto& e : r.periods) {
    periods.push_back({{"predicted", e.predicted},
                       {"window", {e.window_start, e.window_end}},
                       {"period", e.period},
                       {"expected", r.predicted[e.predicted].local_period},
                       {"peaks_used", e.peaks_used}});
  }
  j["periods"] = periods;
  return j;
}

Json to_json(const SpectrumClass& c) {
  return {{"defined", {{"t_cl", c.classical}, {"t_rev", c.revival}, {"t_sr", c.superrevival}}},
          {"verdict", c.verdict},
          {"time_scales", to_json(c.scales)}};
}

Json to_json(const FieldTuning& t) {
  return {{"field_exact", to_string(t.field_exact)},
          {"field", t.field},
          {"field_v_per_cm", t.field_v_per_cm},
          {"critical_field", t.critical_field},
          {"critical_v_per_cm", t.critical_v_per_cm},
          {"below_critical", t.below_critical}};
}

Json to_json(const SqueezedStateParams& p) {
  return {{"alpha", p.alpha},
          {"gamma0", p.gamma0},
          {"gamma1", p.gamma1},
          {"l", p.l},
          {"normalization", p.normalization()},
          {"mean_r", p.mean_r()},
          {"delta_r", p.delta_r()},
          {"mean_p", p.mean_p()},
          {"delta_p", p.delta_p()},
          {"product", p.delta_r() * p.delta_p()},
          {"energy", p.energy()}};
}

Json to_json(const FractionalTime& t) {
  return {{"time", t.time},
          {"p1q1", to_string(t.p1q1)},
          {"p12q12", to_string(t.p12q12)},
          {"ratio", to_string(t.ratio)}};
}

Json to_json(const SubsidiaryExpansion& x, const TimeScaleSet& scales) {
  auto sector = [&](const SectorExpansion& s) {
    Json table = Json::array();
    for (int s1 = 0; s1 < s.periods.l1; ++s1) {
      Json row = Json::array();
      for (int s2 = 0; s2 < s.periods.l2; ++s2) row.push_back(complex_json(s.at(s1, s2)));
      table.push_back(row);
    }
    Json terms = Json::array();
    for (const auto& [s1, s2] : s.significant()) {
      const auto [tau1, tau2] = subsidiary_shift(s, s1, s2, scales);
      terms.push_back({{"s1", s1}, {"s2", s2}, {"a", complex_json(s.at(s1, s2))},
                       {"shift_t1", tau1}, {"shift_t2", tau2}});
    }
    return Json{{"sector", sector_name(s.sector)},
                {"kappa0", s.kappa0},
                {"l1", s.periods.l1},
                {"l2", s.periods.l2},
                {"global_phase_turns", to_string(s.phase_turns)},
                {"coefficients", table},
                {"significant_terms", terms},
                {"norm_squared", s.norm_squared()}};
  };
  return {{"nbar", x.nbar},
          {"fractional_time", to_json(x.time)},
          {"odd", sector(x.odd)},
          {"even", sector(x.even)}};
}

Json to_json(const NodeReport& n) {
  return {{"nodes", n.nodes},
          {"spacing", optional_time(n.spacing)},
          {"samples_per_half_period", n.samples_per_half_period},
          {"depth_threshold", n.depth_threshold}};
}

std::string trace_csv(const AutocorrelationTrace& trace) {
  std::string out = "t_atomic,t_si,re_A,im_A,abs2_A\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const Complex a = trace.amplitude[i];
    out += format_number(trace.times[i]) + ',' + format_number(units::to_seconds(trace.times[i])) +
           ',' + format_number(a.real()) + ',' + format_number(a.imag()) + ',' +
           format_number(std::norm(a)) + '\n';
  }
  return out;
}

std::string uncertainty_csv(std::span<const UncertaintySample> series) {
  std::string out = "t_atomic,t_si,mean_r,delta_r,mean_p,delta_p,product\n";
  for (const auto& s : series) {
    out += format_number(s.t) + ',' + format_number(units::to_seconds(s.t)) + ',' +
           format_number(s.mean_r) + ',' + format_number(s.delta_r) + ',' +
           format_number(s.mean_p) + ',' + format_number(s.delta_p) + ',' +
           format_number(s.product) + '\n';
  }
  return out;
}

std::string revival_table(const RevivalReport& report) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%-24s %8s %16s %12s %16s\n", "kind", "p/q", "time [a.u.]",
                "time [ps]", "local period");
  os << line;
  for (const auto& p : report.predicted) {
    const std::string frac = std::to_string(p.p) + "/" + std::to_string(p.q);
    std::snprintf(line, sizeof line, "%-24s %8s %16.6e %12.4f %16.6e\n",
                  std::string(revival_kind_name(p.kind)).c_str(), frac.c_str(), p.time,
                  units::to_seconds(p.time) * 1e12, p.local_period);
    os << line;
  }
  if (!report.peaks.empty()) {
    os << "\ndetected peaks: " << report.peaks.size() << ", matched: " << report.matches.size()
       << "\n";
  }
  for (const auto& e : report.periods) {
    const auto& p = report.predicted[e.predicted];
    std::snprintf(line, sizeof line, "period near %-24s measured %14.6e expected %14.6e\n",
                  std::string(revival_kind_name(p.kind)).c_str(), e.period, p.local_period);
    os << line;
  }
  return os.str();
}

}  // namespace revlab
