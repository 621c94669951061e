// Copyright 2026 The rydgate Authors
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

#include <cmath>
#include <fstream>
#include <set>

#include "rydgate/cli.hpp"

namespace rydgate::cli {

double to_internal(const std::string& unit, double value) {
  if (unit == "MHz") return kTwoPi * value;
  return value;
}

namespace {

[[noreturn]] void violation(const std::string& msg) {
  throw CliError(kSchemaViolation, msg);
}

void only_keys(const json& obj, const std::set<std::string>& keys, const std::string& where) {
  for (const auto& [k, v] : obj.items())
    if (!keys.count(k)) violation(where + ": unknown key '" + k + "'");
}

double get_number(const json& obj, const std::string& key, const std::string& where,
                  double lo = -kInf) {
  const json& v = obj.at(key);
  if (!v.is_number()) violation(where + "." + key + " must be a number");
  double x = v.get<double>();
  if (!std::isfinite(x)) violation(where + "." + key + " must be finite");
  if (x < lo) violation(where + "." + key + " must be >= " + fmt9(lo));
  return x;
}

NoiseConfig parse_noise(const json& j) {
  NoiseConfig n;
  if (!j.is_object()) violation("noise must be an object");
  only_keys(j, {"temperature_uk", "mass_amu", "k_eff_rad_per_um", "rydberg_lifetime_us",
                "trap_frequency_khz", "separation_um", "interaction_kind"},
            "noise");
  if (j.contains("temperature_uk")) n.temperature_uk = get_number(j, "temperature_uk", "noise", 0.0);
  if (j.contains("mass_amu")) {
    n.mass_amu = get_number(j, "mass_amu", "noise");
    if (!(n.mass_amu > 0.0)) violation("noise.mass_amu must be > 0");
  }
  if (j.contains("k_eff_rad_per_um")) n.k_eff = get_number(j, "k_eff_rad_per_um", "noise");
  if (j.contains("rydberg_lifetime_us")) {
    if (j.at("rydberg_lifetime_us").is_null()) {
      n.rydberg_lifetime_us = kInf;
    } else {
      n.rydberg_lifetime_us = get_number(j, "rydberg_lifetime_us", "noise");
      if (!(n.rydberg_lifetime_us > 0.0)) violation("noise.rydberg_lifetime_us must be > 0");
    }
  }
  if (j.contains("trap_frequency_khz"))
    n.trap_frequency_khz = get_number(j, "trap_frequency_khz", "noise", 0.0);
  if (j.contains("separation_um")) n.separation_um = get_number(j, "separation_um", "noise", 0.0);
  if (j.contains("interaction_kind")) {
    const json& k = j.at("interaction_kind");
    if (!k.is_string() || (k != "C6" && k != "C3"))
      violation("noise.interaction_kind must be \"C6\" or \"C3\"");
    n.interaction_kind = k.get<std::string>();
  }
  if (n.trap_frequency_khz > 0.0 && !(n.separation_um > 0.0))
    violation("noise: position noise needs separation_um > 0");
  return n;
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) violation("config must be a JSON object");
  only_keys(doc, {"protocol", "params", "sweep", "metrics", "noise", "seed", "samples",
                  "output", "comment"},
            "config");
  if (!doc.contains("protocol") || !doc.at("protocol").is_string())
    violation("config.protocol (string) is required");
  ExperimentConfig c;
  c.protocol = doc.at("protocol").get<std::string>();
  const ProtocolEntry& e = find_protocol(c.protocol);
  validate_against_schema(schema_json(e), doc);

  if (doc.contains("params")) c.params = doc.at("params");
  if (doc.contains("noise")) c.noise = parse_noise(doc.at("noise"));
  if (doc.contains("sweep")) {
    for (const auto& ax : doc.at("sweep")) {
      SweepAxis a;
      a.parameter = ax.at("parameter").get<std::string>();
      for (const auto& v : ax.at("values")) a.values.push_back(v.get<double>());
      c.sweep.push_back(a);
    }
  }
  if (doc.contains("metrics")) {
    for (const auto& m : doc.at("metrics")) c.metrics.push_back(m.get<std::string>());
    if (c.metrics.empty()) violation("metrics: empty list");
  } else {
    c.metrics = e.default_metrics;
  }
  if (doc.contains("seed")) {
    const json& s = doc.at("seed");
    if (!s.is_number_integer() || s.get<long long>() < 0)
      violation("seed must be a non-negative integer");
    c.seed = s.get<std::uint64_t>();
  }
  if (doc.contains("samples")) {
    const json& s = doc.at("samples");
    if (!s.is_number_integer() || s.get<long long>() < 0)
      violation("samples must be a non-negative integer");
    if (s.get<long long>() > kMaxSamples)
      throw CliError(kResourceLimit, "samples exceeds the limit " + std::to_string(kMaxSamples));
    c.samples = s.get<int>();
  }
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    if (!o.is_object()) violation("output must be an object");
    only_keys(o, {"dir", "stem"}, "output");
    if (o.contains("dir")) {
      if (!o.at("dir").is_string()) violation("output.dir must be a string");
      c.out_dir = o.at("dir").get<std::string>();
    }
    if (o.contains("stem")) {
      if (!o.at("stem").is_string() || o.at("stem").get<std::string>().empty())
        violation("output.stem must be a non-empty string");
      c.stem = o.at("stem").get<std::string>();
    }
  }
  if (c.stem.empty()) c.stem = c.protocol;

  long long points = 1;
  for (const auto& a : c.sweep) {
    points *= static_cast<long long>(a.values.size());
    if (points > kMaxSweepPoints)
      throw CliError(kResourceLimit,
                     "sweep has more than " + std::to_string(kMaxSweepPoints) + " points");
  }
  bool sampled_noise = c.noise.temperature_uk > 0.0 || c.noise.trap_frequency_khz > 0.0;
  for (const auto& a : c.sweep)
    if (a.parameter == "noise.temperature_uk" || a.parameter == "noise.trap_frequency_khz")
      for (double v : a.values) sampled_noise = sampled_noise || v > 0.0;
  if (sampled_noise && c.samples > 0 && !c.seed)
    violation("seed is required when noise sampling is on");
  if (sampled_noise && c.samples == 0)
    violation("noise needs samples > 0 (thermal or position noise is sampled)");
  for (const auto& a : c.sweep)
    if (a.parameter == "noise.trap_frequency_khz" && !(c.noise.separation_um > 0.0))
      violation("noise: position noise needs separation_um > 0");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(kIoError, "cannot open config '" + path + "'");
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw CliError(kSchemaViolation, "config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

ParamValues ingest_params(const ProtocolEntry& e, const json& params) {
  ParamValues out;
  for (const auto& p : e.params) {
    json v = params.contains(p.name) ? params.at(p.name) : p.default_value;
    if (v.is_null()) continue;
    if (p.type == "enum") {
      out.str[p.name] = v.get<std::string>();
    } else if (p.type == "boolean") {
      out.num[p.name] = v.get<bool>() ? 1.0 : 0.0;
    } else {
      out.num[p.name] = to_internal(p.unit, v.get<double>());
    }
  }
  return out;
}

}  // namespace rydgate::cli
