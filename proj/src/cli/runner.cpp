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
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "rydgate/cli.hpp"
#include "rydgate/metrics.hpp"
#include "rydgate/noise.hpp"

namespace rydgate::cli {

std::string fmt9(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

int worker_count() {
  if (const char* env = std::getenv("RYDGATE_WORKERS")) {
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1) return static_cast<int>(std::min(n, 256L));
  }
  unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : static_cast<int>(h);
}

namespace {

// Seed offset for the position stream so it does not reuse the velocity draws.
constexpr std::uint64_t kPositionStream = 0x9e3779b97f4a7c15ULL;

// Nine significant digits, stored back as a double so JSON prints it short.
json num9(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(fmt9(x));
}

struct Point {
  json params;
  NoiseConfig noise;
};

std::vector<Point> expand(const ExperimentConfig& cfg) {
  std::vector<Point> pts{{cfg.params, cfg.noise}};
  for (const auto& ax : cfg.sweep) {
    std::vector<Point> next;
    for (const auto& p : pts) {
      for (double v : ax.values) {
        Point q = p;
        if (ax.parameter == "noise.temperature_uk") {
          q.noise.temperature_uk = v;
        } else if (ax.parameter == "noise.rydberg_lifetime_us") {
          q.noise.rydberg_lifetime_us = v > 0.0 ? v : kInf;
        } else if (ax.parameter == "noise.trap_frequency_khz") {
          q.noise.trap_frequency_khz = v;
        } else {
          q.params[ax.parameter] = v;
        }
        next.push_back(std::move(q));
      }
    }
    pts = std::move(next);
  }
  return pts;
}

bool is_rydberg(const std::string& l) {
  return !l.empty() && (l[0] == 'r' || l[0] == 's' || l[0] == 'p' || l[0] == 'R');
}

// Final population in basis states with two or more Rydberg atoms,
// averaged over the simulated inputs.
double double_rydberg_population(const PulseSchedule& s, const SimResult& r) {
  double acc = 0.0;
  for (int i = 0; i < s.basis.dim(); ++i) {
    int n = 0;
    auto d = s.basis.digits(i);
    for (int a = 0; a < s.basis.n_atoms(); ++a) n += is_rydberg(s.basis.levels(a)[d[a]]) ? 1 : 0;
    if (n >= 2) acc += r.states.row(i).squaredNorm();
  }
  return acc / static_cast<double>(r.states.cols());
}

std::map<std::string, double> score(const ProtocolEntry& e, const PulseSchedule& s,
                                    const SimResult& r) {
  std::map<std::string, double> m;
  if (e.kind == "gate") {
    GateScores g = score_gate(s, r);
    m["pedersen"] = g.pedersen;
    m["truth_table"] = g.truth_table;
    m["leakage"] = g.leakage;
    m["infidelity"] = 1.0 - g.pedersen;
    if (r.comp_map.rows() == 4 && r.comp_map.cols() == 4 && s.ideal.isDiagonal(1e-12)) {
      // Reported on the branch nearest the ideal so sample means do not wrap.
      const double target = conditional_phase(s.ideal);
      m["conditional_phase"] =
          target + std::remainder(conditional_phase(r.comp_map) - target, kTwoPi);
      m["pedersen_local_z"] = pedersen_fidelity(r.comp_map, align_local_z(r.comp_map, s.ideal));
    }
  } else {
    m["overlap"] = target_overlap(s, r);
    m["infidelity"] = 1.0 - m["overlap"];
  }
  if (e.score)
    for (const auto& [k, v] : e.score(s, r)) m[k] = v;
  return m;
}

double primary(const ProtocolEntry& e, const std::map<std::string, double>& m) {
  return m.at(e.kind == "gate" ? "pedersen" : "overlap");
}

double decay_budget(const PulseSchedule& s) {
  std::vector<Trajectory<Vec>> trajs;
  if (s.initial_state.size() != 0) {
    trajs.push_back(sample_trajectory(s, s.initial_state, 200));
  } else {
    for (int c : s.computational)
      trajs.push_back(sample_trajectory(s, basis_vec(s.basis.dim(), c), 200));
  }
  return decay_error(trajs, s.state_decay_rates());
}

PointRecord evaluate_point(const ProtocolEntry& e, const ExperimentConfig& cfg,
                           const Point& pt, std::size_t index, int mc_workers) {
  auto t0 = std::chrono::steady_clock::now();
  PointRecord rec;
  rec.index = index;
  rec.params = pt.params;
  rec.noise = pt.noise;
  const NoiseConfig& nz = pt.noise;

  ParamValues pv = ingest_params(e, pt.params);
  PulseSchedule s;
  try {
    s = e.build(pv);
    if (nz.k_eff) set_k_eff(s, *nz.k_eff);
    s.validate();
  } catch (const std::invalid_argument& ex) {
    throw CliError(kInvalidParameter, "point " + std::to_string(index) + ": " + ex.what());
  }
  if (s.basis.dim() > kMaxDimension)
    throw CliError(kResourceLimit, "point " + std::to_string(index) + ": Hilbert dimension " +
                                       std::to_string(s.basis.dim()) + " exceeds " +
                                       std::to_string(kMaxDimension));
  const bool decay = std::isfinite(nz.rydberg_lifetime_us);
  if (decay) set_rydberg_lifetime(s, nz.rydberg_lifetime_us);
  SimOptions base;
  base.decay = decay;

  try {
    SimResult clean = simulate(s);
    auto clean_m = score(e, s, clean);
    auto real_m = decay ? score(e, s, simulate(s, base)) : clean_m;
    for (const auto& m : cfg.metrics)
      if (real_m.count(m)) rec.metrics[m] = {real_m.at(m), 0.0};
    bool want_extra = false;
    for (const auto& m : cfg.metrics) want_extra = want_extra || !real_m.count(m);
    if (want_extra && e.extras)
      for (const auto& [k, v] : e.extras(pv))
        if (std::find(cfg.metrics.begin(), cfg.metrics.end(), k) != cfg.metrics.end())
          rec.metrics[k] = {v, 0.0};

    const bool sampled = cfg.samples > 0 &&
                         (nz.temperature_uk > 0.0 || nz.trap_frequency_khz > 0.0);
    double f_sampled = primary(e, real_m);
    if (sampled) {
      const std::uint64_t seed = cfg.seed.value_or(0);
      std::vector<double> scales;
      if (nz.trap_frequency_khz > 0.0) {
        const double w = kTwoPi * nz.trap_frequency_khz * 1e-3;  // rad/us
        auto dl = position_fluctuation(w, w, nz.temperature_uk, nz.mass_amu, cfg.samples,
                                       seed ^ kPositionStream);
        const auto kind = nz.interaction_kind == "C3" ? InteractionKind::DipoleC3
                                                      : InteractionKind::VdwC6;
        for (double d : dl)
          scales.push_back(1.0 + interaction_fluctuation_ratio(kind, nz.separation_um, d));
      }
      ThermalSpec th{nz.temperature_uk, nz.mass_amu, nz.k_eff.value_or(kDefaultKeff)};
      auto stats = apply_doppler(
          s, th, cfg.samples, seed,
          [&](const SimResult& r) { return score(e, s, r); }, mc_workers, base, scales);
      for (const auto& m : cfg.metrics)
        if (stats.count(m)) rec.metrics[m] = {stats.at(m).mean, stats.at(m).stderr_};
      f_sampled = stats.at(e.kind == "gate" ? "pedersen" : "overlap").mean;
    }
    rec.budget.residual = std::clamp(1.0 - primary(e, clean_m), 0.0, 1.0);
    rec.budget.blockade_leak = std::clamp(double_rydberg_population(s, clean), 0.0, 1.0);
    rec.budget.decay = decay ? std::clamp(decay_budget(s), 0.0, 1.0) : 0.0;
    rec.budget.dephasing =
        sampled ? std::clamp(primary(e, real_m) - f_sampled, 0.0, 1.0) : 0.0;
  } catch (const CliError&) {
    throw;
  } catch (const std::invalid_argument& ex) {
    throw CliError(kInvalidParameter, "point " + std::to_string(index) + ": " + ex.what());
  } catch (const std::exception& ex) {
    throw CliError(kNumericalFailure, "point " + std::to_string(index) + ": " + ex.what(),
                   kNumericalError);
  }
  rec.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

std::string cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_string()) return v.get<std::string>();
  return fmt9(v.get<double>());
}

}  // namespace

std::vector<PointRecord> evaluate(const ExperimentConfig& cfg, int workers) {
  const ProtocolEntry& e = find_protocol(cfg.protocol);
  std::vector<Point> pts = expand(cfg);
  std::vector<PointRecord> out(pts.size());
  workers = std::max(1, workers);
  if (pts.size() == 1 || workers == 1) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      out[i] = evaluate_point(e, cfg, pts[i], i, workers);
    return out;
  }
  std::vector<std::exception_ptr> errs(pts.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= pts.size()) return;
      try {
        out[i] = evaluate_point(e, cfg, pts[i], i, 1);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int n = std::min<int>(workers, static_cast<int>(pts.size()));
  for (int w = 0; w < n; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  for (auto& ep : errs)
    if (ep) std::rethrow_exception(ep);
  return out;
}

std::vector<std::string> csv_header(const ProtocolEntry& e,
                                    const std::vector<std::string>& metrics) {
  std::vector<std::string> h{"index"};
  for (const auto& p : e.params) h.push_back(p.name);
  for (const char* n : {"temperature_uk", "rydberg_lifetime_us", "trap_frequency_khz", "samples"})
    h.push_back(n);
  for (const auto& m : metrics) {
    h.push_back(m + "_mean");
    h.push_back(m + "_stderr");
  }
  for (const char* b : {"budget_decay", "budget_blockade_leak", "budget_dephasing",
                        "budget_residual"})
    h.push_back(b);
  return h;
}

std::string to_csv(const ExperimentConfig& cfg, const std::vector<PointRecord>& rs) {
  const ProtocolEntry& e = find_protocol(cfg.protocol);
  std::ostringstream os;
  auto h = csv_header(e, cfg.metrics);
  for (std::size_t i = 0; i < h.size(); ++i) os << (i ? "," : "") << h[i];
  os << '\n';
  for (const auto& r : rs) {
    os << r.index;
    for (const auto& p : e.params)
      os << ',' << cell(r.params.contains(p.name) ? r.params.at(p.name) : p.default_value);
    os << ',' << fmt9(r.noise.temperature_uk) << ',' << fmt9(r.noise.rydberg_lifetime_us)
       << ',' << fmt9(r.noise.trap_frequency_khz) << ',' << cfg.samples;
    for (const auto& m : cfg.metrics) {
      auto it = r.metrics.find(m);
      if (it == r.metrics.end()) {
        os << ",,";
      } else {
        os << ',' << fmt9(it->second.mean) << ',' << fmt9(it->second.stderr_);
      }
    }
    os << ',' << fmt9(r.budget.decay) << ',' << fmt9(r.budget.blockade_leak) << ','
       << fmt9(r.budget.dephasing) << ',' << fmt9(r.budget.residual) << '\n';
  }
  return os.str();
}

json to_json(const ExperimentConfig& cfg, const PointRecord& r) {
  const ProtocolEntry& e = find_protocol(cfg.protocol);
  json j;
  j["protocol"] = cfg.protocol;
  j["anchor"] = e.anchor;
  json ps = json::object();
  for (const auto& p : e.params) {
    json v = r.params.contains(p.name) ? r.params.at(p.name) : p.default_value;
    ps[p.name] = v.is_number() ? num9(v.get<double>()) : v;
  }
  j["params"] = ps;
  j["noise"] = {{"temperature_uk", num9(r.noise.temperature_uk)},
                {"rydberg_lifetime_us", num9(r.noise.rydberg_lifetime_us)},
                {"trap_frequency_khz", num9(r.noise.trap_frequency_khz)}};
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed ? json(*cfg.seed) : json(nullptr);
  json ms = json::object();
  for (const auto& m : cfg.metrics) {
    auto it = r.metrics.find(m);
    if (it == r.metrics.end()) continue;
    ms[m] = {{"mean", num9(it->second.mean)}, {"stderr", num9(it->second.stderr_)}};
  }
  j["metrics"] = ms;
  j["error_budget"] = {{"decay", num9(r.budget.decay)},
                       {"blockade_leak", num9(r.budget.blockade_leak)},
                       {"dephasing", num9(r.budget.dephasing)},
                       {"residual", num9(r.budget.residual)}};
  return j;
}

RunResult run(const ExperimentConfig& cfg, int workers) {
  RunResult res;
  res.records = evaluate(cfg, workers);
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) throw CliError(kIoError, "cannot create output directory '" + cfg.out_dir + "'");
  auto write = [&](const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw CliError(kIoError, "cannot write '" + p.string() + "'");
    f << text;
    res.files.push_back(p.string());
  };
  const fs::path dir(cfg.out_dir);
  if (!cfg.sweep.empty()) {
    write(dir / (cfg.stem + ".csv"), to_csv(cfg, res.records));
  } else {
    write(dir / (cfg.stem + ".json"), to_json(cfg, res.records.front()).dump(2) + "\n");
  }
  // Wall times live in a side file so the result files stay byte-identical.
  json t = json::array();
  for (const auto& r : res.records)
    t.push_back({{"index", r.index}, {"wall_time_s", num9(r.wall_time_s)}});
  write(dir / (cfg.stem + ".timing.json"), t.dump(2) + "\n");
  return res;
}

}  // namespace rydgate::cli
