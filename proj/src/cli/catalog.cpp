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

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "rydgate/cli.hpp"
#include "rydgate/noise.hpp"

namespace rydgate::cli {

double ParamValues::at(const std::string& k) const {
  auto it = num.find(k);
  if (it == num.end()) throw std::out_of_range("parameter '" + k + "' not set");
  return it->second;
}

namespace {

ParamSchema number(std::string name, std::string unit, json def, std::string desc,
                   std::optional<double> lo = {}, std::optional<double> hi = {}) {
  ParamSchema p;
  p.name = std::move(name);
  p.type = "number";
  p.unit = std::move(unit);
  p.default_value = std::move(def);
  p.minimum = lo;
  p.maximum = hi;
  p.description = std::move(desc);
  return p;
}

ParamSchema integer(std::string name, int def, std::string desc,
                    std::optional<double> lo = {}, std::optional<double> hi = {}) {
  ParamSchema p = number(std::move(name), "1", def, std::move(desc), lo, hi);
  p.type = "integer";
  return p;
}

ParamSchema boolean(std::string name, bool def, std::string desc) {
  ParamSchema p;
  p.name = std::move(name);
  p.type = "boolean";
  p.unit = "1";
  p.default_value = def;
  p.description = std::move(desc);
  return p;
}

ParamSchema choice(std::string name, std::vector<std::string> choices, std::string def,
                   std::string desc) {
  ParamSchema p;
  p.name = std::move(name);
  p.type = "enum";
  p.unit = "1";
  p.default_value = def;
  p.choices = std::move(choices);
  p.description = std::move(desc);
  return p;
}

const std::vector<std::string> kGateMetrics = {"pedersen", "truth_table", "leakage",
                                               "infidelity"};
const std::vector<std::string> kStateMetrics = {"overlap", "infidelity"};

std::vector<std::string> plus(std::vector<std::string> a,
                              const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

double opt_v(const ParamValues& p, const std::string& k) {
  return p.has(k) ? p.at(k) : kInf;
}

std::vector<ProtocolEntry> make_catalog() {
  std::vector<ProtocolEntry> c;
  const double pi = kPi;

  {
    ProtocolEntry e;
    e.name = "antiblockade_cz";
    e.builder = "antiblockade_cz";
    e.anchor = "antiblockade/detuning-and-modulation";
    e.summary = "Antiblockade phase gate: |11> makes a full flop through |rr>.";
    e.kind = "gate";
    e.params = {number("omega", "MHz", 1.0, "Rabi frequency Omega/2pi", 0.0),
                number("v", "MHz", 20.0, "pair shift V/h", 0.0),
                choice("mode", {"detuning_match", "modulation"}, "detuning_match",
                       "detuning_match: Delta = V/2; modulation: cos drive at omega = V/2")};
    e.metrics = plus(kGateMetrics, {"conditional_phase", "pedersen_local_z"});
    e.default_metrics = e.metrics;
    e.build = [](const ParamValues& p) {
      auto mode = p.str.at("mode") == "modulation" ? AntiblockadeMode::Modulation
                                                   : AntiblockadeMode::DetuningMatch;
      return antiblockade_cz(p.at("omega"), p.at("v"), mode);
    };
    c.push_back(e);
  }
  {
    ProtocolEntry e;
    e.name = "blockade_cz";
    e.builder = "blockade_cz";
    e.anchor = "blockade-gate/three-pulse-cz";
    e.summary = "pi (control), 2pi (target), pi (control) blockade gate.";
    e.kind = "gate";
    e.params = {number("omega", "MHz", 1.0, "Rabi frequency Omega/2pi", 0.0),
                number("v", "MHz", 10.0, "blockade shift V/h"),
                number("delta", "MHz", 0.0, "drive detuning Delta/2pi")};
    e.metrics = plus(kGateMetrics,
                     {"conditional_phase", "pedersen_local_z", "rr_population",
                      "blockade_error_analytic"});
    e.default_metrics = e.metrics;
    e.build = [](const ParamValues& p) {
      return blockade_cz(p.at("omega"), p.at("v"), p.at("delta"));
    };
    e.extras = [](const ParamValues& p) {
      return std::map<std::string, double>{
          {"rr_population", blockade_rr_population(p.at("omega"), p.at("v"))},
          {"blockade_error_analytic", blockade_error_analytic(p.at("omega"), p.at("v"))}};
    };
    c.push_back(e);
  }
  {
    ProtocolEntry e;
    e.name = "dark_state_gate";
    e.builder = "dark_state_gate";
    e.anchor = "dark-state-gate/forster-resonance";
    e.summary = "Forster dark-state gate with shifted Gaussian target pulse.";
    e.kind = "gate";
    e.params = {number("omega_m", "MHz", 7.643, "peak target Rabi frequency/2pi", 0.0),
                number("t_t", "us", 0.29, "target pulse duration", 0.0),
                number("sigma", "us", nullptr, "Gaussian width; default t_t/5", 0.0),
                number("c3", "GHz*um^3", -33.0, "Forster C3/2pi"),
                number("separation", "um", 10.0, "atom separation", 0.0),
                number("omega_c", "MHz", 7.643, "control pi-pulse Rabi frequency/2pi", 0.0),
                number("v_scale", "1", 1.0, "multiplies the Forster coupling")};
    e.metrics = plus(kGateMetrics, {"conditional_phase", "pedersen_local_z"});
    e.default_metrics = e.metrics;
    e.build = [](const ParamValues& p) {
      DarkStateParams d;
      d.omega_m = p.at("omega_m");
      d.t_t = p.at("t_t");
      d.sigma = p.has("sigma") ? p.at("sigma") : 0.0;
      d.c3 = p.at("c3");
      d.L = p.at("separation");
      d.omega_c = p.at("omega_c");
      d.v_scale = p.at("v_scale");
      return dark_state_gate(d);
    };
    c.push_back(e);
  }
  {
    ProtocolEntry e;
    e.name = "detuned_phase_gate";
    e.builder = "detuned_phase_schedule";
    e.anchor = "detuned-phase-gate/two-pulse-phase-twist";
    e.summary = "Two detuned pulses on both atoms with a phase twist xi; solver picks Delta, xi, t.";
    e.kind = "gate";
    e.params = {number("theta", "rad", pi, "target conditional phase", 0.0, 2 * pi),
                number("omega", "MHz", 1.0, "Rabi frequency Omega/2pi", 0.0),
                number("v", "MHz", 1000.0, "blockade shift V/h"),
                choice("solver", {"finite_blockade", "ideal_blockade"}, "finite_blockade",
                       "closure relations with or without the |11> blockade shift"),
                boolean("blockade_correction", false, "add Omega^2/(2V) to the detuning")};
    e.metrics = plus(kGateMetrics, {"conditional_phase", "pedersen_local_z"});
    e.default_metrics = e.metrics;
    e.build = [](const ParamValues& p) {
      const double v = p.at("v"), om = p.at("omega");
      PhaseGateSolution sol = p.str.at("solver") == "finite_blockade" && std::isfinite(v)
                                  ? detuned_phase_solve_blockaded(p.at("theta"), v / om)
                                  : detuned_phase_solve(p.at("theta"));
      return detuned_phase_schedule(sol, om, v, p.at("blockade_correction") != 0.0);
    };
    c.push_back(e);
  }
  {
    ProtocolEntry e;
    e.name = "ensemble_adiabatic_excitation";
    e.builder = "ensemble_adiabatic_excitation";
    e.anchor = "ensemble-qubit/adiabatic-collective-excitation";
    e.summary = "Symmetric N-atom ensemble driven by a Gaussian chirped sweep.";
    e.kind = "state";
    e.params = {integer("n", 1, "number of atoms", 1, 1000),
                number("duration", "us", 2.0, "sweep duration", 0.0),
                number("omega0", "MHz", 5.0, "single-atom peak Rabi frequency/2pi", 0.0),
                number("delta0", "MHz", 20.0, "detuning sweeps from +delta0 to -delta0"),
                number("sigma_fraction", "1", 1.0 / 6.0, "Gaussian width / duration", 0.0)};
    e.metrics = kStateMetrics;
    e.default_metrics = e.metrics;
    e.build = [](const ParamValues& p) {
      EnsembleSweep w;
      w.duration = p.at("duration");
      w.omega0 = p.at("omega0");
      w.delta0 = p.at("delta0");
      w.sigma_fraction = p.at("sigma_fraction");
      return ensemble_default_sweep(static_cast<int>(p.at("n")), w);
    };
    c.push_back(e);
  }
  {
    ProtocolEntry e;
    e.name = "ghz_asymmetric";
    e.builder = "ghz_asymmetric";
    e.anchor = "ghz/asymmetric-blockade-three-step";
    e.summary = "Three-step GHZ preparation with asymmetric s/p blockade.";
    e.kind = "state";
    e.params = {integer("n", 3, "number of atoms", 2, 5),
                number("omega", "MHz", 1.0, "Rabi frequency Omega/2pi", 0.0),
                number("v_ss", "MHz", 50.0, "s-s shift/h"),
                number("v_sp", "MHz", 50.0, "s-p shift/h"),
                number("v_pp", "MHz", 0.0, "p-p shift/h")};
    e.metrics = kStateMetrics;
    e.default_metrics = e.metrics;
    e.build = [](const ParamValues& p) {
      return ghz_asymmetric(static_cast<int>(p.at("n")), p.at("omega"), p.at("v_ss"),
                            p.at("v_sp"), p.at("v_pp"));
    };
    c.push_back(e);
  }
  {
    ProtocolEntry e;
    e.name = "spin_echo_cz";
    e.builder = "spin_echo_cz";
    e.anchor = "spin-echo/interaction-echo";
    e.summary = "Echo sequence between two Rydberg levels with Omega' = Omega V0'/V0.";
    e.kind = "gate";
    e.params = {number("omega", "MHz", 1.0, "Rabi frequency Omega/2pi", 0.0),
                number("v0", "MHz", 20.0, "shift of the first Rydberg pair/h"),
                number("v0_prime", "MHz", -30.0, "shift of the second Rydberg pair/h"),
                number("omega_mu", "MHz", 0.0, "microwave flip Rabi/2pi; 0 = instantaneous", 0.0),
                number("omega_prime_scale", "1", 1.0, "multiplies Omega'")};
    e.metrics = plus(kGateMetrics, {"conditional_phase", "pedersen_local_z", "sector_error"});
    e.default_metrics = e.metrics;
    auto params = [](const ParamValues& p) {
      SpinEchoParams s;
      s.omega = p.at("omega");
      s.v0 = p.at("v0");
      s.v0_prime = p.at("v0_prime");
      s.omega_mu = p.at("omega_mu");
      s.omega_prime_scale = p.at("omega_prime_scale");
      return s;
    };
    e.build = [params](const ParamValues& p) { return spin_echo_cz(params(p)); };
    e.extras = [params](const ParamValues& p) {
      return std::map<std::string, double>{
          {"sector_error", spin_echo_sector_error(params(p))}};
    };
    c.push_back(e);
  }
  {
    ProtocolEntry e;
    e.name = "swept_forster_transfer";
    e.builder = "swept_forster_transfer";
    e.anchor = "dark-state-gate/adiabatic-forster-sweep";
    e.summary = "Linear Forster-defect sweep across the |r1r2>-|r3r4> crossing.";
    e.kind = "state";
    e.params = {number("v", "MHz", 1.0, "flip-flop coupling/h"),
                number("defect0", "MHz", 20.0, "defect sweeps from +defect0 to -defect0"),
                number("duration", "us", 10.0, "sweep duration", 0.0),
                integer("sweeps", 1, "forward/backward passes", 1, 100)};
    e.metrics = kStateMetrics;
    e.default_metrics = e.metrics;
    e.build = [](const ParamValues& p) {
      return swept_forster_linear(p.at("v"), p.at("defect0"), p.at("duration"),
                                  static_cast<int>(p.at("sweeps")));
    };
    c.push_back(e);
  }
  {
    ProtocolEntry e;
    e.name = "tsd_cnot_one_shot";
    e.builder = "tsd_cnot_one_shot";
    e.anchor = "transition-slow-down/one-shot-cnot";
    e.summary = "Simultaneous control and target driving; CNOT up to phases.";
    e.kind = "gate";
    e.params = {number("omega_t", "MHz", 1.0, "target Rabi frequency/2pi", 0.0),
                number("ratio", "1", 4.245739, "Omega_c / Omega_t", 0.0),
                integer("k1", 3, "first integer of the condition set", 1, 50),
                number("v", "MHz", nullptr, "finite blockade/h; default removes |rr>")};
    e.metrics = plus(kGateMetrics, {"pop_error_10"});
    e.default_metrics = e.metrics;
    e.build = [](const ParamValues& p) {
      return tsd_cnot_one_shot(p.at("omega_t"), p.at("ratio"),
                               static_cast<int>(p.at("k1")), opt_v(p, "v"));
    };
    e.score = [](const PulseSchedule&, const SimResult& r) {
      return std::map<std::string, double>{{"pop_error_10", 1.0 - std::norm(r.comp_map(3, 2))}};
    };
    c.push_back(e);
  }
  {
    ProtocolEntry e;
    e.name = "tsd_cnot_two_pulse";
    e.builder = "tsd_cnot_two_pulse";
    e.anchor = "transition-slow-down/two-pulse-cnot";
    e.summary = "Two target pulses through auxiliary Rydberg levels with a slowed-down control.";
    e.kind = "gate";
    e.params = {number("omega_t", "MHz", 1.0, "target Rabi frequency/2pi", 0.0),
                number("alpha", "1", std::sqrt(15.0), "Omega_c / Omega_t, sqrt(16k^2-1)", 0.0),
                number("v", "MHz", nullptr, "finite blockade/h; default removes doubles")};
    e.metrics = kGateMetrics;
    e.default_metrics = e.metrics;
    e.build = [](const ParamValues& p) {
      return tsd_cnot_two_pulse(p.at("omega_t"), p.at("alpha"), opt_v(p, "v"));
    };
    c.push_back(e);
  }
  {
    ProtocolEntry e;
    e.name = "wait_phase_gate";
    e.builder = "wait_phase_gate";
    e.anchor = "original-gate/interaction-wait";
    e.summary = "pi pulses on both atoms, free wait T = |phi/V|, pi pulses back.";
    e.kind = "gate";
    e.params = {number("omega", "MHz", 1.0, "Rabi frequency Omega/2pi", 0.0),
                number("v", "MHz", 0.01, "pair shift V/h"),
                number("phi", "rad", -pi, "target interaction phase")};
    e.metrics = plus(kGateMetrics, {"conditional_phase", "pedersen_local_z"});
    e.default_metrics = e.metrics;
    e.build = [](const ParamValues& p) {
      return wait_phase_gate(p.at("omega"), p.at("v"), p.at("phi"));
    };
    c.push_back(e);
  }
  std::sort(c.begin(), c.end(),
            [](const ProtocolEntry& a, const ProtocolEntry& b) { return a.name < b.name; });
  return c;
}

}  // namespace

const std::vector<ProtocolEntry>& catalog() {
  static const std::vector<ProtocolEntry> c = make_catalog();
  return c;
}

const ProtocolEntry& find_protocol(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  std::ostringstream os;
  os << "unknown protocol '" << name << "'; known:";
  for (const auto& e : catalog()) os << ' ' << e.name;
  throw CliError(kUnknownProtocol, os.str());
}

json schema_json(const ProtocolEntry& e) {
  json j;
  j["name"] = e.name;
  j["builder"] = e.builder;
  j["anchor"] = e.anchor;
  j["summary"] = e.summary;
  j["kind"] = e.kind;
  json ps = json::array();
  for (const auto& p : e.params) {
    json q;
    q["name"] = p.name;
    q["type"] = p.type;
    q["unit"] = p.unit;
    q["default"] = p.default_value;
    if (p.minimum) q["minimum"] = *p.minimum;
    if (p.maximum) q["maximum"] = *p.maximum;
    if (!p.choices.empty()) q["enum"] = p.choices;
    q["description"] = p.description;
    ps.push_back(q);
  }
  j["parameters"] = ps;
  j["metrics"] = e.metrics;
  j["default_metrics"] = e.default_metrics;
  return j;
}

json catalog_json() {
  json out = json::array();
  for (const auto& e : catalog()) out.push_back(schema_json(e));
  return out;
}

std::string catalog_text() {
  std::ostringstream os;
  for (const auto& e : catalog()) {
    os << e.name << "  [" << e.anchor << "]  builder=" << e.builder << '\n';
    os << "  " << e.summary << '\n';
    for (const auto& p : e.params) {
      os << "    " << p.name << " (" << p.type;
      if (p.unit != "1") os << ", " << p.unit;
      os << ") default=" << (p.default_value.is_null() ? "builder" : p.default_value.dump());
      if (!p.choices.empty()) {
        os << " one of";
        for (const auto& ch : p.choices) os << ' ' << ch;
      }
      os << "  " << p.description << '\n';
    }
    os << "    metrics:";
    for (const auto& m : e.metrics) os << ' ' << m;
    os << '\n';
  }
  return os.str();
}

namespace {

const std::set<std::string> kNoiseSweepable = {"noise.temperature_uk",
                                                "noise.rydberg_lifetime_us",
                                                "noise.trap_frequency_khz"};

[[noreturn]] void violation(const std::string& msg) {
  throw CliError(kSchemaViolation, msg);
}

const json* find_param(const json& schema_entry, const std::string& name) {
  for (const auto& p : schema_entry.at("parameters"))
    if (p.at("name") == name) return &p;
  return nullptr;
}

void check_number(const json& p, double v, const std::string& where) {
  const std::string name = p.at("name");
  if (!std::isfinite(v)) violation(where + ": '" + name + "' must be finite");
  if (p.at("type") == "integer" && v != std::floor(v))
    violation(where + ": '" + name + "' must be an integer");
  if (p.contains("minimum") && v < p.at("minimum").get<double>())
    violation(where + ": '" + name + "' below minimum " + p.at("minimum").dump());
  if (p.contains("maximum") && v > p.at("maximum").get<double>())
    violation(where + ": '" + name + "' above maximum " + p.at("maximum").dump());
}

void check_value(const json& p, const json& v, const std::string& where) {
  const std::string type = p.at("type");
  const std::string name = p.at("name");
  if (type == "enum") {
    if (!v.is_string()) violation(where + ": '" + name + "' must be a string");
    for (const auto& c : p.at("enum"))
      if (c == v) return;
    violation(where + ": '" + name + "' must be one of " + p.at("enum").dump());
  }
  if (type == "boolean") {
    if (!v.is_boolean()) violation(where + ": '" + name + "' must be true or false");
    return;
  }
  if (!v.is_number()) violation(where + ": '" + name + "' must be a number");
  check_number(p, v.get<double>(), where);
}

}  // namespace

void validate_against_schema(const json& schema, const json& cfg) {
  if (!cfg.is_object()) violation("config must be a JSON object");
  if (!cfg.contains("protocol") || cfg.at("protocol") != schema.at("name"))
    violation("config protocol does not match schema '" +
              schema.at("name").get<std::string>() + "'");
  if (cfg.contains("params")) {
    const json& ps = cfg.at("params");
    if (!ps.is_object()) violation("params must be an object");
    for (const auto& [k, v] : ps.items()) {
      const json* p = find_param(schema, k);
      if (!p) violation("params: unknown parameter '" + k + "'");
      check_value(*p, v, "params");
    }
  }
  if (cfg.contains("sweep")) {
    const json& sw = cfg.at("sweep");
    if (!sw.is_array()) violation("sweep must be an array of axes");
    std::set<std::string> seen;
    for (const auto& ax : sw) {
      if (!ax.is_object() || !ax.contains("parameter") || !ax.contains("values") ||
          !ax.at("parameter").is_string() || !ax.at("values").is_array())
        violation("sweep axis needs 'parameter' (string) and 'values' (array)");
      for (const auto& [k, v] : ax.items())
        if (k != "parameter" && k != "values") violation("sweep axis: unknown key '" + k + "'");
      const std::string name = ax.at("parameter");
      if (!seen.insert(name).second) violation("sweep: axis '" + name + "' repeated");
      if (ax.at("values").empty()) violation("sweep: axis '" + name + "' has no values");
      if (kNoiseSweepable.count(name)) {
        for (const auto& v : ax.at("values"))
          if (!v.is_number() || !std::isfinite(v.get<double>()) || v.get<double>() < 0.0)
            violation("sweep: '" + name + "' values must be finite and >= 0");
        continue;
      }
      const json* p = find_param(schema, name);
      if (!p) violation("sweep: unknown parameter '" + name + "'");
      const std::string type = p->at("type");
      if (type != "number" && type != "integer")
        violation("sweep: parameter '" + name + "' is not numeric");
      for (const auto& v : ax.at("values")) {
        if (!v.is_number()) violation("sweep: '" + name + "' values must be numbers");
        check_number(*p, v.get<double>(), "sweep");
      }
    }
  }
  if (cfg.contains("metrics")) {
    const json& ms = cfg.at("metrics");
    if (!ms.is_array()) violation("metrics must be an array of names");
    for (const auto& m : ms) {
      bool ok = false;
      for (const auto& known : schema.at("metrics")) ok = ok || known == m;
      if (!ok) violation("metrics: '" + m.dump() + "' not offered by " +
                         schema.at("name").get<std::string>());
    }
  }
}

}  // namespace rydgate::cli
