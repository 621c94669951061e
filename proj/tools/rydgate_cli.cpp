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

// rydgate-cli: run <config> | regress [--json] | list-protocols [--json]
//
// Exit codes: 0 ok, 2 config error, 3 numerical failure, 4 regression failure.
// RYDGATE_WORKERS sets the worker pool size.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "rydgate/cli.hpp"

namespace rc = rydgate::cli;

namespace {

int report(const rc::CliError& e) {
  rc::json j = {{"error", e.code()}, {"message", e.what()}, {"exit_code", e.exit_code()}};
  std::cerr << j.dump() << '\n';
  return e.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rydberg gate protocol simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int workers = 0;
  auto* run = app.add_subcommand("run", "run a config (JSON) and write CSV/JSON results");
  run->add_option("config", config_path, "config file")->required();
  run->add_option("--out", out_dir, "override output.dir");
  run->add_option("--workers", workers, "worker threads (default: RYDGATE_WORKERS or all cores)");

  bool regress_json = false;
  std::string regress_out;
  auto* regress = app.add_subcommand("regress", "run the pinned published-number suite");
  regress->add_flag("--json", regress_json, "machine-readable report");
  regress->add_option("--out", regress_out, "also write the report to this file");

  bool list_json = false;
  auto* list = app.add_subcommand("list-protocols", "protocol catalog with parameter schemas");
  list->add_flag("--json", list_json, "emit the catalog as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : rc::kConfigError;
  }

  try {
    if (*run) {
      rc::ExperimentConfig cfg = rc::load_config(config_path);
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      rc::RunResult r = rc::run(cfg, workers > 0 ? workers : rc::worker_count());
      for (const auto& f : r.files) std::cout << f << '\n';
      return rc::kOk;
    }
    if (*regress) {
      auto es = rc::regress();
      std::string text = regress_json ? rc::regress_json(es).dump(2) + "\n" : rc::regress_text(es);
      std::cout << text;
      if (!regress_out.empty()) {
        std::ofstream f(regress_out);
        if (!f) throw rc::CliError(rc::kIoError, "cannot write '" + regress_out + "'");
        f << text;
      }
      for (const auto& e : es)
        if (!e.passed) return rc::kRegressionFailure;
      return rc::kOk;
    }
    if (*list) {
      std::cout << (list_json ? rc::catalog_json().dump(2) + "\n" : rc::catalog_text());
      return rc::kOk;
    }
  } catch (const rc::CliError& e) {
    return report(e);
  } catch (const std::exception& e) {
    return report(rc::CliError(rc::kNumericalFailure, e.what(), rc::kNumericalError));
  }
  return rc::kOk;
}
