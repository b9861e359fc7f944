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

// Command-line front end over the revlab C API.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "revlab/revlab.h"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

// Exit class for failures outside the library (bad flags, unreadable files).
constexpr int kExitConfig = REVLAB_CLASS_CONFIG;

struct Failure {
  int exit_code;
  std::string message;
};

[[noreturn]] void config_error(const std::string& message) { throw Failure{kExitConfig, message}; }

void check(revlab_status status) {
  if (status != REVLAB_OK) {
    throw Failure{revlab_status_class(status),
                  std::string(revlab_status_name(status)) + ": " + revlab_last_error()};
  }
}

std::string take(char* s) {
  std::string out = s ? s : "";
  revlab_string_free(s);
  return out;
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using SpectrumPtr = std::unique_ptr<revlab_spectrum, Deleter<revlab_spectrum, revlab_spectrum_free>>;
using PacketPtr = std::unique_ptr<revlab_packet, Deleter<revlab_packet, revlab_packet_free>>;
using TracePtr = std::unique_ptr<revlab_trace, Deleter<revlab_trace, revlab_trace_free>>;
using SeriesPtr = std::unique_ptr<revlab_series, Deleter<revlab_series, revlab_series_free>>;

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Failure{REVLAB_CLASS_NUMERIC, "sha256 digest failed"};
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) config_error("io: cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<long long, long long> parse_fraction(const std::string& text, const char* what) {
  long long p = 0, q = 1;
  char tail = 0;
  const auto slash = text.find('/');
  bool ok;
  if (slash == std::string::npos) {
    ok = std::sscanf(text.c_str(), "%lld%c", &p, &tail) == 1;
  } else {
    ok = std::sscanf(text.c_str(), "%lld/%lld%c", &p, &q, &tail) == 2;
  }
  if (!ok || q == 0) config_error(std::string(what) + " must look like p/q, got '" + text + "'");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  return {p, q};
}

std::string si_time(double seconds) {
  struct Prefix {
    double scale;
    const char* unit;
  };
  static const Prefix prefixes[] = {{1.0, "s"}, {1e-3, "ms"}, {1e-6, "us"}, {1e-9, "ns"},
                                    {1e-12, "ps"}, {1e-15, "fs"}};
  for (const auto& p : prefixes) {
    if (std::abs(seconds) >= p.scale) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.4g %s", seconds / p.scale, p.unit);
      return buf;
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g s", seconds);
  return buf;
}

std::string au_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Every option a subcommand exposes, so a JSON config can fill whatever the
// flags left unset and the manifest can echo the effective inputs.
struct Binding {
  std::string key;
  CLI::Option* option;
  std::function<void(const Json&)> load;
  std::function<Json()> dump;
};

struct Settings {
  std::string config;
  std::string out_dir = ".";
  std::string units = "atomic";

  std::string model = "hydrogen";
  double nbar = 45.0;
  double field = 0.0;
  std::string ratio;
  std::vector<std::string> defects;
  double detuning = 0.0;
  int l = 1;
  std::string table;

  double sigma = 2.5;
  double sigma_k = 2.0;
  int window = 0;
  std::string phase = "exact";
  int order = 2;
  double t_start = 0.0;
  double t_end = 1.0;
  std::string time_unit = "t_cl";
  long samples = 0;

  int max_q_rev = 8;
  int max_q_sr = 12;

  std::string fraction = "1/2";
  double half_width = 2.0;
  int resolution = 256;

  double r_out = 0.0;
  int n_min = 0;
  int n_max = 0;
  long points = 40001;
  double r_max = 0.0;
};

struct Command {
  CLI::App* app = nullptr;
  std::vector<Binding> bindings;
  std::function<int(Command&)> run;
  Json spectrum_json;
  Json artifacts = Json::array();
};

template <class T>
CLI::Option* option(Command& cmd, const std::string& key, T& var, const std::string& help) {
  CLI::Option* opt = cmd.app->add_option("--" + key, var, help)->capture_default_str();
  cmd.bindings.push_back({key, opt, [&var](const Json& j) { var = j.get<T>(); },
                          [&var] { return Json(var); }});
  return opt;
}

void bind_common(Command& cmd, Settings& s) {
  cmd.app->add_option("--config", s.config, "JSON run configuration; flags override it");
  option(cmd, "out-dir", s.out_dir, "Directory receiving artifacts and the manifest");
  option(cmd, "units", s.units, "Console units: atomic or si")
      ->check(CLI::IsMember({"atomic", "si"}));
}

void bind_spectrum(Command& cmd, Settings& s) {
  option(cmd, "model", s.model, "Spectrum: hydrogen, quantum_defect, stark or tabulated")
      ->check(CLI::IsMember({"hydrogen", "quantum_defect", "stark", "tabulated"}));
  option(cmd, "nbar", s.nbar, "Packet center");
  option(cmd, "field", s.field, "Stark field (a.u., or V/cm with --units si)");
  option(cmd, "ratio", s.ratio, "Stark: tune the field to t_rev^(n)/t_rev^(nk) = r/s instead");
  option(cmd, "defect", s.defects, "Quantum defect as l:delta (repeatable)");
  option(cmd, "detuning", s.detuning, "Quantum-defect detuning of the expansion center");
  option(cmd, "l", s.l, "Angular momentum of the quantum-defect series");
  option(cmd, "table", s.table, "Two-column n,E CSV for the tabulated model");
}

void bind_packet(Command& cmd, Settings& s) {
  option(cmd, "sigma", s.sigma, "Gaussian width in n");
  option(cmd, "sigma-k", s.sigma_k, "Gaussian width in k (Stark)");
  option(cmd, "window", s.window, "Index half-width (0 = ceil(5 sigma))");
  option(cmd, "phase", s.phase, "Phase model: exact or truncated")
      ->check(CLI::IsMember({"exact", "truncated"}));
  option(cmd, "order", s.order, "Truncation order (1-3)");
}

void bind_time(Command& cmd, Settings& s) {
  option(cmd, "t-start", s.t_start, "Window start, in --time-unit");
  option(cmd, "t-end", s.t_end, "Window end, in --time-unit");
  option(cmd, "time-unit", s.time_unit, "au, s, ps, ns, t_cl, t_rev, t_sr or t_rev_nk")
      ->check(CLI::IsMember({"au", "s", "ps", "ns", "t_cl", "t_rev", "t_sr", "t_rev_nk"}));
  option(cmd, "samples", s.samples, "Sample count (0 = default density)");
}

void bind_stark(Command& cmd, Settings& s) {
  option(cmd, "nbar", s.nbar, "Integer packet center");
  option(cmd, "ratio", s.ratio, "t_rev^(n)/t_rev^(nk) = r/s, below 1/8");
  option(cmd, "fraction", s.fraction, "Fractional time as a fraction of the full revival");
  option(cmd, "sigma-n", s.sigma, "Gaussian width in n");
  option(cmd, "sigma-k", s.sigma_k, "Gaussian width in k");
  option(cmd, "window", s.window, "Half-width of the n and k windows");
}

void bind_squeezed(Command& cmd, Settings& s) {
  option(cmd, "nbar", s.nbar, "Target mean principal quantum number");
  option(cmd, "r-out", s.r_out, "Outer apsis (0 = 2 nbar^2)");
  option(cmd, "l", s.l, "Angular momentum");
}

void apply_config(Command& cmd, const Settings& s) {
  if (s.config.empty()) return;
  Json j;
  try {
    j = Json::parse(read_file(s.config));
  } catch (const nlohmann::json::exception& e) {
    config_error("config '" + s.config + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) config_error("config must be a JSON object");
  // A manifest from an earlier run replays its recorded inputs.
  if (j.contains("inputs") && j.contains("artifacts")) {
    if (j.value("subcommand", "") != cmd.app->get_name()) {
      config_error("manifest was written by '" + j.value("subcommand", "") + "'");
    }
    Json inputs = j["inputs"];
    j = std::move(inputs);
  }
  for (const auto& [raw_key, value] : j.items()) {
    std::string key = raw_key;
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "spectrum") {
      cmd.spectrum_json = value;
      continue;
    }
    if (key == "subcommand" || key == "config") continue;
    auto it = std::find_if(cmd.bindings.begin(), cmd.bindings.end(),
                           [&](const Binding& b) { return b.key == key; });
    if (it == cmd.bindings.end()) config_error("unknown config key '" + raw_key + "'");
    if (it->option->count() > 0) continue;
    try {
      it->load(value);
    } catch (const nlohmann::json::exception& e) {
      config_error("config key '" + raw_key + "' has the wrong type: " + e.what());
    }
  }
}

SpectrumPtr make_spectrum(Command& cmd, const Settings& s) {
  revlab_spectrum* raw = nullptr;
  if (!cmd.spectrum_json.is_null()) {
    check(revlab_spectrum_from_json(cmd.spectrum_json.dump().c_str(), &raw));
    return SpectrumPtr(raw);
  }
  if (s.model == "hydrogen") {
    check(revlab_spectrum_hydrogen(&raw));
  } else if (s.model == "quantum_defect") {
    std::vector<int> ls;
    std::vector<double> ds;
    for (const auto& d : s.defects) {
      int l = 0;
      double delta = 0.0;
      char tail = 0;
      if (std::sscanf(d.c_str(), "%d:%lf%c", &l, &delta, &tail) != 2) {
        config_error("--defect must look like l:delta, got '" + d + "'");
      }
      ls.push_back(l);
      ds.push_back(delta);
    }
    check(revlab_spectrum_quantum_defect(ls.data(), ds.data(), ls.size(), s.detuning, s.l, &raw));
  } else if (s.model == "stark") {
    double field = s.field;
    if (!s.ratio.empty()) {
      const auto [r, q] = parse_fraction(s.ratio, "--ratio");
      revlab_field_tuning tuning;
      check(revlab_tune_field(std::llround(s.nbar), r, q, &tuning));
      field = tuning.field;
    } else if (s.units == "si") {
      field = s.field / revlab_volts_per_cm_per_atomic_field();
    }
    check(revlab_spectrum_stark(field, &raw));
  } else {
    if (s.table.empty()) config_error("the tabulated model needs --table");
    check(revlab_spectrum_from_csv(read_file(s.table).c_str(), &raw));
  }
  return SpectrumPtr(raw);
}

revlab_time_scales scales_of(const revlab_spectrum* spectrum, double center) {
  revlab_time_scales ts;
  check(revlab_time_scales_compute(spectrum, center, &ts));
  return ts;
}

double time_unit(const std::string& unit, const revlab_time_scales& ts) {
  auto need = [](int has, double v, const char* name) {
    if (!has) config_error(std::string("time unit ") + name + " is undefined for this spectrum");
    return v;
  };
  if (unit == "au") return 1.0;
  if (unit == "s") return 1.0 / revlab_seconds_per_atomic_time();
  if (unit == "ps") return 1e-12 / revlab_seconds_per_atomic_time();
  if (unit == "ns") return 1e-9 / revlab_seconds_per_atomic_time();
  if (unit == "t_cl") return need(ts.has_t_cl_n, ts.t_cl_n, "t_cl");
  if (unit == "t_rev") return need(ts.has_t_rev_n, ts.t_rev_n, "t_rev");
  if (unit == "t_sr") return need(ts.has_t_sr, ts.t_sr, "t_sr");
  return need(ts.has_t_rev_nk, ts.t_rev_nk, "t_rev_nk");
}

void write_artifact(Command& cmd, const Settings& s, const std::string& name,
                    const std::string& content) {
  std::error_code ec;
  fs::create_directories(s.out_dir, ec);
  const fs::path path = fs::path(s.out_dir) / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.close();
  if (!out) config_error("io: cannot write '" + path.string() + "'");
  cmd.artifacts.push_back(
      {{"file", name}, {"bytes", content.size()}, {"sha256", sha256_hex(content)}});
}

void write_manifest(Command& cmd, const Settings& s) {
  Json inputs = Json::object();
  for (const auto& b : cmd.bindings) inputs[b.key] = b.dump();
  if (!cmd.spectrum_json.is_null()) inputs["spectrum"] = cmd.spectrum_json;
  Json manifest = {{"tool", "revlab"},
                   {"version", revlab_version()},
                   {"subcommand", cmd.app->get_name()},
                   {"inputs", inputs},
                   {"artifacts", cmd.artifacts}};
  const std::string text = manifest.dump(2) + "\n";
  std::error_code ec;
  fs::create_directories(s.out_dir, ec);
  std::ofstream out(fs::path(s.out_dir) / "manifest.json", std::ios::binary);
  out << text;
  if (!out) config_error("io: cannot write the manifest");
}

std::string time_text(double t, const Settings& s) {
  return s.units == "si" ? si_time(t * revlab_seconds_per_atomic_time()) : au_value(t) + " a.u.";
}

PacketPtr make_packet(const revlab_spectrum* spectrum, const revlab_time_scales& ts,
                      const Settings& s) {
  revlab_packet* raw = nullptr;
  if (ts.two_index) {
    const int window = s.window > 0 ? s.window : static_cast<int>(std::ceil(5.0 * s.sigma));
    check(revlab_packet_stark(spectrum, s.nbar, s.sigma, s.sigma_k, window, &raw));
  } else {
    const int window =
        s.window > 0 ? s.window : std::max(1, static_cast<int>(std::ceil(5.0 * s.sigma)));
    check(revlab_packet_gaussian(spectrum, s.nbar, s.sigma, window, &raw));
  }
  return PacketPtr(raw);
}

TracePtr make_trace(const revlab_spectrum* spectrum, const revlab_packet* packet,
                    const revlab_time_scales& ts, const Settings& s) {
  const double unit = time_unit(s.time_unit, ts);
  const double t0 = s.t_start * unit, t1 = s.t_end * unit;
  if (!(t1 > t0)) config_error("--t-end must exceed --t-start");
  std::size_t samples = static_cast<std::size_t>(s.samples);
  if (s.samples <= 0) {
    samples = static_cast<std::size_t>(std::ceil((t1 - t0) / ts.t_cl_n * 2048.0)) + 1;
  }
  if (samples < 2) config_error("--samples must be at least 2");
  const revlab_phase_mode mode =
      s.phase == "exact" ? REVLAB_PHASE_EXACT : REVLAB_PHASE_TRUNCATED;
  revlab_trace* raw = nullptr;
  check(revlab_autocorrelation_uniform(spectrum, packet, mode, s.order, t0, t1, samples, &raw));
  return TracePtr(raw);
}

int run_timescales(Command& cmd, Settings& s) {
  auto spectrum = make_spectrum(cmd, s);
  const auto ts = scales_of(spectrum.get(), s.nbar);
  write_artifact(cmd, s, "timescales.json",
                 take([&] {
                   char* out = nullptr;
                   check(revlab_time_scales_json(spectrum.get(), s.nbar, &out));
                   return out;
                 }()) + "\n");
  auto line = [&](const char* name, int has, double v) {
    std::cout << name << " = " << (has ? time_text(v, s) : std::string("undefined")) << "\n";
  };
  line("T_cl    ", ts.has_t_cl_n, ts.t_cl_n);
  if (ts.two_index) line("T_cl_k  ", ts.has_t_cl_k, ts.t_cl_k);
  line("t_rev   ", ts.has_t_rev_n, ts.t_rev_n);
  if (ts.two_index) {
    line("t_rev_nk", ts.has_t_rev_nk, ts.t_rev_nk);
    line("t_rev_k ", ts.has_t_rev_k, ts.t_rev_k);
  }
  line("t_sr    ", ts.has_t_sr, ts.t_sr);
  return 0;
}

int run_evolve(Command& cmd, Settings& s) {
  auto spectrum = make_spectrum(cmd, s);
  const auto ts = scales_of(spectrum.get(), s.nbar);
  auto packet = make_packet(spectrum.get(), ts, s);
  auto trace = make_trace(spectrum.get(), packet.get(), ts, s);
  char* csv = nullptr;
  check(revlab_trace_to_csv(trace.get(), &csv));
  write_artifact(cmd, s, "trace.csv", take(csv));
  std::cout << "trace.csv: " << revlab_trace_size(trace.get()) << " samples, "
            << revlab_packet_size(packet.get()) << " states\n";
  return 0;
}

int run_predict(Command& cmd, Settings& s) {
  auto spectrum = make_spectrum(cmd, s);
  char* json = nullptr;
  char* table = nullptr;
  check(revlab_predict(spectrum.get(), s.nbar, s.max_q_rev, s.max_q_sr, &json, &table));
  write_artifact(cmd, s, "predict.json", take(json) + "\n");
  std::cout << take(table);
  return 0;
}

int run_detect(Command& cmd, Settings& s) {
  auto spectrum = make_spectrum(cmd, s);
  const auto ts = scales_of(spectrum.get(), s.nbar);
  auto packet = make_packet(spectrum.get(), ts, s);
  auto trace = make_trace(spectrum.get(), packet.get(), ts, s);
  char* json = nullptr;
  char* table = nullptr;
  check(revlab_detect(spectrum.get(), s.nbar, trace.get(), &json, &table));
  char* csv = nullptr;
  check(revlab_trace_to_csv(trace.get(), &csv));
  write_artifact(cmd, s, "trace.csv", take(csv));
  write_artifact(cmd, s, "detect.json", take(json) + "\n");
  std::cout << take(table);
  return 0;
}

int run_tune_field(Command& cmd, Settings& s) {
  if (s.ratio.empty()) config_error("tune-field needs --ratio");
  const auto [r, q] = parse_fraction(s.ratio, "--ratio");
  revlab_field_tuning t;
  check(revlab_tune_field(std::llround(s.nbar), r, q, &t));
  const Json j = {{"nbar", std::llround(s.nbar)},
                  {"ratio", std::to_string(r) + "/" + std::to_string(q)},
                  {"field", t.field},
                  {"field_v_per_cm", t.field_v_per_cm},
                  {"critical_field", t.critical_field},
                  {"critical_v_per_cm", t.critical_v_per_cm},
                  {"below_critical", t.below_critical != 0}};
  write_artifact(cmd, s, "tune_field.json", j.dump(2) + "\n");
  char buf[128];
  if (s.units == "si") {
    std::snprintf(buf, sizeof buf, "F = %.4f V/cm (critical %.4f V/cm)\n", t.field_v_per_cm,
                  t.critical_v_per_cm);
  } else {
    std::snprintf(buf, sizeof buf, "F = %.10g a.u. (critical %.10g a.u.)\n", t.field,
                  t.critical_field);
  }
  std::cout << buf;
  return 0;
}

revlab_stark_request stark_request(const Settings& s) {
  if (s.ratio.empty()) config_error("Stark subcommands need --ratio");
  const auto [r, rs] = parse_fraction(s.ratio, "--ratio");
  const auto [p, q] = parse_fraction(s.fraction, "--fraction");
  revlab_stark_request req;
  req.nbar = static_cast<int>(std::llround(s.nbar));
  if (std::abs(s.nbar - req.nbar) > 1e-12) config_error("Stark subcommands need an integer --nbar");
  req.ratio_r = r;
  req.ratio_s = rs;
  req.fraction_p = p;
  req.fraction_q = q;
  req.sigma_n = s.sigma;
  req.sigma_k = s.sigma_k;
  req.window = s.window > 0 ? s.window : 6;
  return req;
}

int run_stark_decompose(Command& cmd, Settings& s) {
  const auto req = stark_request(s);
  char* json = nullptr;
  check(revlab_stark_decompose(&req, &json));
  const std::string text = take(json);
  write_artifact(cmd, s, "stark_decompose.json", text + "\n");
  const Json j = Json::parse(text);
  for (const char* sector : {"odd", "even"}) {
    const auto& e = j["expansion"][sector];
    std::cout << sector << " sector: periods (" << e["l1"] << ", " << e["l2"] << "), "
              << e["significant_terms"].size() << " significant term(s)\n";
  }
  std::cout << "reconstruction max error: " << j["reconstruction_max_error"].get<double>() << "\n";
  return 0;
}

int run_stark_nodes(Command& cmd, Settings& s) {
  const auto req = stark_request(s);
  char* json = nullptr;
  char* csv = nullptr;
  check(revlab_stark_nodes(&req, s.half_width, s.resolution, &json, &csv));
  const std::string text = take(json);
  write_artifact(cmd, s, "stark_nodes.csv", take(csv));
  write_artifact(cmd, s, "stark_nodes.json", text + "\n");
  const Json j = Json::parse(text);
  const double half = j["half_period"].get<double>();
  for (const char* sector : {"full", "odd", "even"}) {
    const auto& r = j[sector];
    std::cout << sector << ": " << r["nodes"].size() << " node(s)";
    if (!r["spacing"].is_null()) {
      std::cout << ", spacing " << r["spacing"].get<double>() / half << " x T_cl/2";
    }
    std::cout << "\n";
  }
  return 0;
}

revlab_squeezed fit_squeezed(const Settings& s) {
  revlab_squeezed p;
  check(revlab_squeezed_fit(s.nbar, s.r_out, s.l, &p));
  return p;
}

int run_squeezed_fit(Command& cmd, Settings& s) {
  const auto p = fit_squeezed(s);
  char* json = nullptr;
  check(revlab_squeezed_to_json(&p, &json));
  Json params = Json::parse(take(json));
  const double r_out = s.r_out > 0.0 ? s.r_out : 2.0 * s.nbar * s.nbar;
  const double e_target = -0.5 / (s.nbar * s.nbar);
  const Json j = {
      {"target", {{"nbar", s.nbar}, {"r_out", r_out}, {"l", s.l}, {"energy", e_target}}},
      {"params", params},
      {"residuals",
       {{"mean_r_relative", (params["mean_r"].get<double>() - r_out) / r_out},
        {"mean_p", params["mean_p"].get<double>()},
        {"energy_relative", (params["energy"].get<double>() - e_target) / std::abs(e_target)}}}};
  write_artifact(cmd, s, "squeezed_fit.json", j.dump(2) + "\n");
  char buf[200];
  std::snprintf(buf, sizeof buf, "alpha = %.10g, gamma0 = %.10g, dr*dp = %.6f\n", p.alpha,
                p.gamma0, params["product"].get<double>());
  std::cout << buf;
  return 0;
}

int run_squeezed_evolve(Command& cmd, Settings& s) {
  const auto p = fit_squeezed(s);
  const int n_min = s.n_min > 0 ? s.n_min : std::max(s.l + 1, static_cast<int>(0.7 * s.nbar));
  const int n_max = s.n_max > 0 ? s.n_max : static_cast<int>(std::ceil(1.4 * s.nbar));
  revlab_packet* raw_packet = nullptr;
  double captured = 0.0;
  check(revlab_squeezed_project(&p, n_min, n_max, 0.999, &raw_packet, &captured));
  PacketPtr packet(raw_packet);

  SpectrumPtr hydrogen;
  {
    revlab_spectrum* raw = nullptr;
    check(revlab_spectrum_hydrogen(&raw));
    hydrogen.reset(raw);
  }
  const auto ts = scales_of(hydrogen.get(), s.nbar);
  const double unit = time_unit(s.time_unit, ts);
  const double t0 = s.t_start * unit, t1 = s.t_end * unit;
  if (!(t1 > t0)) config_error("--t-end must exceed --t-start");
  std::size_t samples = static_cast<std::size_t>(s.samples);
  if (s.samples <= 0) {
    samples = static_cast<std::size_t>(std::ceil((t1 - t0) / ts.t_cl_n * 100.0)) + 1;
  }
  std::vector<double> times(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    times[i] = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(samples - 1);
  }
  revlab_series* raw_series = nullptr;
  check(revlab_squeezed_evolve(packet.get(), times.data(), times.size(), s.r_max,
                               static_cast<std::size_t>(s.points), &raw_series));
  SeriesPtr series(raw_series);
  double period = 0.0;
  int found = 0;
  check(revlab_series_period(series.get(), &period, &found));
  double min_product = INFINITY;
  for (std::size_t i = 0; i < revlab_series_size(series.get()); ++i) {
    revlab_uncertainty u;
    check(revlab_series_sample(series.get(), i, &u));
    min_product = std::min(min_product, u.product);
  }
  char* csv = nullptr;
  check(revlab_series_to_csv(series.get(), &csv));
  write_artifact(cmd, s, "squeezed_evolve.csv", take(csv));
  const Json j = {{"n_window", {n_min, n_max}},
                  {"captured_norm", captured},
                  {"min_product", min_product},
                  {"period", found ? Json(period) : Json(nullptr)},
                  {"period_over_t_cl", found ? Json(period / ts.t_cl_n) : Json(nullptr)}};
  write_artifact(cmd, s, "squeezed_evolve.json", j.dump(2) + "\n");
  std::cout << "captured norm " << captured << ", min dr*dp " << min_product;
  if (found) std::cout << ", period " << period / ts.t_cl_n << " T_cl";
  std::cout << "\n";
  return 0;
}

int run_classify(Command& cmd, Settings& s) {
  auto spectrum = make_spectrum(cmd, s);
  char* json = nullptr;
  check(revlab_classify_json(spectrum.get(), s.nbar, &json));
  const std::string text = take(json);
  write_artifact(cmd, s, "classify.json", text + "\n");
  std::cout << Json::parse(text)["verdict"].get<std::string>() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"revlab: wave-packet revival laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(revlab_version()));
  Settings s;
  std::vector<std::unique_ptr<Command>> commands;

  auto add = [&](const char* name, const char* help, std::function<int(Command&)> run) {
    auto cmd = std::make_unique<Command>();
    cmd->app = app.add_subcommand(name, help);
    cmd->run = std::move(run);
    bind_common(*cmd, s);
    commands.push_back(std::move(cmd));
    return commands.back().get();
  };

  Command* c = add("timescales", "Classical, revival and superrevival time scales",
                   [&](Command& cmd) { return run_timescales(cmd, s); });
  bind_spectrum(*c, s);

  c = add("evolve", "Autocorrelation trace of a Gaussian packet (CSV)",
          [&](Command& cmd) { return run_evolve(cmd, s); });
  bind_spectrum(*c, s);
  bind_packet(*c, s);
  bind_time(*c, s);

  c = add("predict", "Predicted revival and superrevival times",
          [&](Command& cmd) { return run_predict(cmd, s); });
  bind_spectrum(*c, s);
  option(*c, "max-q-rev", s.max_q_rev, "Largest revival denominator");
  option(*c, "max-q-sr", s.max_q_sr, "Largest superrevival denominator");

  c = add("detect", "Peaks, local periodicities and matches on a computed trace",
          [&](Command& cmd) { return run_detect(cmd, s); });
  bind_spectrum(*c, s);
  bind_packet(*c, s);
  bind_time(*c, s);

  c = add("tune-field", "Field strength for a commensurate Stark revival ratio",
          [&](Command& cmd) { return run_tune_field(cmd, s); });
  option(*c, "nbar", s.nbar, "Integer packet center");
  option(*c, "ratio", s.ratio, "t_rev^(n)/t_rev^(nk) = r/s, below 1/8");

  c = add("stark-decompose", "Odd/even subsidiary-wave expansion at a fractional time",
          [&](Command& cmd) { return run_stark_decompose(cmd, s); });
  bind_stark(*c, s);

  c = add("stark-nodes", "Node structure of the sector autocorrelations",
          [&](Command& cmd) { return run_stark_nodes(cmd, s); });
  bind_stark(*c, s);
  option(*c, "half-width", s.half_width, "Half-width of the window in T_cl^(n)");
  option(*c, "resolution", s.resolution, "Samples per T_cl^(n)/2");

  c = add("squeezed-fit", "Radial squeezed state matched to the outer apsis",
          [&](Command& cmd) { return run_squeezed_fit(cmd, s); });
  bind_squeezed(*c, s);

  c = add("squeezed-evolve", "Uncertainty product of the evolving squeezed state",
          [&](Command& cmd) { return run_squeezed_evolve(cmd, s); });
  bind_squeezed(*c, s);
  option(*c, "n-min", s.n_min, "Lowest n in the projection (0 = automatic)");
  option(*c, "n-max", s.n_max, "Highest n in the projection (0 = automatic)");
  option(*c, "points", s.points, "Radial grid points");
  option(*c, "r-max", s.r_max, "Radial grid extent (0 = automatic)");
  bind_time(*c, s);

  c = add("classify", "Revival class implied by the spectrum's derivatives",
          [&](Command& cmd) { return run_classify(cmd, s); });
  bind_spectrum(*c, s);

  // Subcommand-specific defaults applied before flags are parsed.
  for (auto& cmd : commands) {
    if (cmd->app->get_name() == "squeezed-evolve") {
      for (auto& b : cmd->bindings) {
        if (b.key == "t-end") b.option->default_str("3");
      }
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  for (auto& cmd : commands) {
    if (!cmd->app->parsed()) continue;
    try {
      if (cmd->app->get_name() == "squeezed-evolve" && s.t_end == 1.0 &&
          !cmd->app->get_option("--t-end")->count()) {
        s.t_end = 3.0;
      }
      apply_config(*cmd, s);
      const int code = cmd->run(*cmd);
      write_manifest(*cmd, s);
      return code;
    } catch (const Failure& f) {
      std::cerr << "revlab " << cmd->app->get_name() << ": " << f.message << "\n";
      return f.exit_code;
    }
  }
  return kExitConfig;
}
