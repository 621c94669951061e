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

// Config-driven experiment runner behind the rydgate-cli tool.
//
// Config dialect: one JSON document.
//
//   {
//     "protocol": "blockade_cz",
//     "params":   {"omega": 1.0, "v": 10.0},          // config units, see list-protocols
//     "sweep":    [{"parameter": "v", "values": [2, 5, 10, 20]}],
//     "metrics":  ["leakage", "rr_population"],
//     "noise":    {"temperature_uk": 10, "rydberg_lifetime_us": 330},
//     "seed": 7, "samples": 200,
//     "output":   {"dir": "out", "stem": "blockade"}
//   }
//
// Frequencies are ordinary MHz in the config; to_internal() multiplies by
// 2 pi exactly once when the document is ingested.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rydgate/noise.hpp"
#include "rydgate/protocols.hpp"

namespace rydgate::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericalError = 3, kRegressionFailure = 4 };

// Machine-readable error codes carried by CliError.
inline constexpr const char* kUnknownProtocol = "unknown_protocol";
inline constexpr const char* kSchemaViolation = "schema_violation";
inline constexpr const char* kResourceLimit = "resource_limit";
inline constexpr const char* kInvalidParameter = "invalid_parameter";
inline constexpr const char* kIoError = "io_error";
inline constexpr const char* kNumericalFailure = "numerical_failure";

class CliError : public std::runtime_error {
 public:
  CliError(std::string code, const std::string& msg, int exit_code = kConfigError)
      : std::runtime_error(msg), code_(std::move(code)), exit_code_(exit_code) {}
  const std::string& code() const { return code_; }
  int exit_code() const { return exit_code_; }

 private:
  std::string code_;
  int exit_code_;
};

// Limits checked before any simulation starts.
inline constexpr int kMaxSweepPoints = 10000;
inline constexpr int kMaxSamples = 100000;
inline constexpr int kMaxDimension = 1024;

// ---- catalog -------------------------------------------------------------

struct ParamSchema {
  std::string name;
  std::string type;  // "number", "integer", "boolean", "enum"
  std::string unit;  // "MHz" is converted to rad/us on ingestion
  json default_value;  // null: optional, builder default
  std::optional<double> minimum;
  std::optional<double> maximum;
  std::vector<std::string> choices;
  std::string description;
};

// Parameters after ingestion, internal units.
struct ParamValues {
  std::map<std::string, double> num;
  std::map<std::string, std::string> str;
  bool has(const std::string& k) const { return num.count(k) != 0; }
  double at(const std::string& k) const;
};

struct ProtocolEntry {
  std::string name;
  std::string builder;  // protocols-module function behind the entry
  std::string anchor;   // stable reference string into the physics docs
  std::string summary;
  std::string kind;     // "gate" (ideal map) or "state" (target state)
  std::vector<ParamSchema> params;
  std::vector<std::string> metrics;          // everything the entry can report
  std::vector<std::string> default_metrics;
  std::function<PulseSchedule(const ParamValues&)> build;
  // Protocol-specific metrics read off each simulated result.
  std::function<std::map<std::string, double>(const PulseSchedule&, const SimResult&)>
      score;
  // Metrics that need their own deterministic computation, evaluated once
  // per sweep point without noise.
  std::function<std::map<std::string, double>(const ParamValues&)> extras;
};

// Sorted by name.
const std::vector<ProtocolEntry>& catalog();
const ProtocolEntry& find_protocol(const std::string& name);

json schema_json(const ProtocolEntry& e);
json catalog_json();
std::string catalog_text();

// Checks a config document against one emitted schema entry (as produced by
// schema_json). Throws CliError on the first violation.
void validate_against_schema(const json& schema_entry, const json& config);

// ---- config --------------------------------------------------------------

double to_internal(const std::string& unit, double value);

struct NoiseConfig {
  double temperature_uk = 0.0;
  double mass_amu = 133.0;
  std::optional<double> k_eff;  // rad/um; protocol default when absent
  double rydberg_lifetime_us = kInf;
  // Position noise: both traps share this frequency (kHz). 0 disables.
  double trap_frequency_khz = 0.0;
  double separation_um = 0.0;
  std::string interaction_kind = "C6";
};

struct SweepAxis {
  std::string parameter;  // protocol parameter or "noise.<field>"
  std::vector<double> values;
};

struct ExperimentConfig {
  std::string protocol;
  json params = json::object();  // as entered, config units
  NoiseConfig noise;
  std::vector<SweepAxis> sweep;
  std::vector<std::string> metrics;
  std::string out_dir = ".";
  std::string stem;
  std::optional<std::uint64_t> seed;
  int samples = 0;
};

ExperimentConfig parse_config(const json& doc);
ExperimentConfig load_config(const std::string& path);

// Full parameter set (defaults filled in) converted to internal units.
ParamValues ingest_params(const ProtocolEntry& e, const json& params);

// ---- runner --------------------------------------------------------------

struct MetricValue {
  double mean = 0.0;
  double stderr_ = 0.0;
};

struct PointRecord {
  std::size_t index = 0;
  json params;  // config units
  NoiseConfig noise;
  std::map<std::string, MetricValue> metrics;
  ErrorBudget budget;
  double wall_time_s = 0.0;
};

struct RunResult {
  std::vector<PointRecord> records;
  std::vector<std::string> files;  // written result files
};

// Worker count from RYDGATE_WORKERS, else the hardware concurrency.
int worker_count();

std::vector<PointRecord> evaluate(const ExperimentConfig& cfg, int workers);
RunResult run(const ExperimentConfig& cfg, int workers);

// CSV header for (protocol, metrics). The column set depends on nothing else.
std::vector<std::string> csv_header(const ProtocolEntry& e,
                                    const std::vector<std::string>& metrics);
std::string to_csv(const ExperimentConfig& cfg, const std::vector<PointRecord>& rs);
json to_json(const ExperimentConfig& cfg, const PointRecord& r);

// "%.9g"
std::string fmt9(double x);

// ---- regression suite ----------------------------------------------------

struct RegressEntry {
  std::string id;
  std::string component;
  double expected = 0.0;
  double obtained = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;
};

using PhaseSolver = std::function<PhaseGateSolution(double theta)>;

std::vector<RegressEntry> regress(const PhaseSolver& solver = {});
json regress_json(const std::vector<RegressEntry>& es);
std::string regress_text(const std::vector<RegressEntry>& es);

}  // namespace rydgate::cli
