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

#include "rydgate/noise.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

namespace rydgate {

namespace {

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

void check_thermal(double temperature, double mass) {
  if (!(temperature >= 0.0))
    throw std::invalid_argument("thermal: temperature must be >= 0");
  if (!(mass > 0.0)) throw std::invalid_argument("thermal: mass must be > 0");
}

}  // namespace

double velocity_sigma(const ThermalSpec& spec) {
  check_thermal(spec.temperature, spec.mass);
  return std::sqrt(kBoltzmann * spec.temperature * 1e-6 /
                   (spec.mass * kAtomicMass));
}

double dephasing_time(const ThermalSpec& spec) {
  double ks = std::abs(spec.k_eff) * velocity_sigma(spec);
  if (ks == 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(2.0) / ks;
}

Eigen::Vector3d effective_wavevector(const std::vector<double>& wavelengths_nm,
                                     const std::vector<Eigen::Vector3d>& dirs) {
  if (wavelengths_nm.size() != dirs.size())
    throw std::invalid_argument("effective_wavevector: one direction per beam");
  Eigen::Vector3d k = Eigen::Vector3d::Zero();
  for (std::size_t j = 0; j < dirs.size(); ++j) {
    if (wavelengths_nm[j] == 0.0)
      throw std::invalid_argument("effective_wavevector: zero wavelength");
    if (std::abs(dirs[j].norm() - 1.0) > 1e-9)
      throw std::invalid_argument("effective_wavevector: direction not unit norm");
    k += (kTwoPi / (wavelengths_nm[j] * 1e-3)) * dirs[j];
  }
  return k;
}

Eigen::Vector3d planar_wavevector(const std::vector<double>& wavelengths_nm,
                                  const std::vector<double>& angles) {
  std::vector<Eigen::Vector3d> d;
  for (double a : angles) d.emplace_back(std::cos(a), std::sin(a), 0.0);
  return effective_wavevector(wavelengths_nm, d);
}

std::vector<double> doppler_samples(const ThermalSpec& spec, int count,
                                    std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("doppler_samples: count < 1");
  const double sv = velocity_sigma(spec);
  std::vector<double> v(count, 0.0);
  if (sv == 0.0) return v;
  for (int i = 0; i < count; ++i) {
    auto g = stream(seed, static_cast<std::uint64_t>(i));
    std::normal_distribution<double> n(0.0, sv);
    v[i] = n(g);
  }
  return v;
}

cplx doppler_coherence_mc(const ThermalSpec& spec, double t, int count,
                          std::uint64_t seed) {
  auto v = doppler_samples(spec, count, seed);
  cplx acc = 0.0;
  for (double x : v) acc += std::exp(kI * spec.k_eff * x * t);
  return acc / static_cast<double>(count);
}

double doppler_coherence_analytic(const ThermalSpec& spec, double t) {
  double a = spec.k_eff * velocity_sigma(spec) * t;
  return std::exp(-0.5 * a * a);
}

SampleStats summarize(const std::vector<double>& xs) {
  SampleStats s;
  s.count = static_cast<int>(xs.size());
  if (xs.empty()) return s;
  double m = 0.0;
  for (double x : xs) m += x;
  m /= xs.size();
  s.mean = m;
  if (xs.size() > 1) {
    double var = 0.0;
    for (double x : xs) var += (x - m) * (x - m);
    var /= (xs.size() - 1);
    s.stderr_ = std::sqrt(var / xs.size());
  }
  return s;
}

std::map<std::string, SampleStats> apply_doppler(
    const PulseSchedule& s, const ThermalSpec& spec, int count,
    std::uint64_t seed, const Scorer& scorer, int workers,
    const SimOptions& base, const std::vector<double>& interaction_scales) {
  if (count < 1) throw std::invalid_argument("apply_doppler: count < 1");
  if (!interaction_scales.empty() &&
      static_cast<int>(interaction_scales.size()) != count)
    throw std::invalid_argument("apply_doppler: one interaction scale per trajectory");
  // Rejects missing k_eff before any work.
  {
    SimOptions probe = base;
    probe.velocity.assign(s.basis.n_atoms(), 0.0);
    for (std::size_t k = 0; k < s.steps.size(); ++k)
      if (!s.steps[k].instant) s.step_model(k, probe.velocity, false);
  }
  const double sv = velocity_sigma(spec);
  const int n_atoms = s.basis.n_atoms();
  std::vector<std::map<std::string, double>> results(count);
  std::vector<std::string> errors(count);
  std::atomic<int> next{0};
  auto work = [&]() {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        auto g = stream(seed, static_cast<std::uint64_t>(i));
        std::normal_distribution<double> n(0.0, 1.0);
        SimOptions o = base;
        o.velocity.resize(n_atoms);
        for (int a = 0; a < n_atoms; ++a) o.velocity[a] = sv * n(g);
        if (!interaction_scales.empty()) o.interaction_scale *= interaction_scales[i];
        results[i] = scorer(simulate(s, o));
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  workers = std::max(1, std::min(workers, count));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (int i = 0; i < count; ++i)
    if (!errors[i].empty())
      throw std::runtime_error("apply_doppler: trajectory " + std::to_string(i) +
                               " failed: " + errors[i]);
  std::map<std::string, std::vector<double>> cols;
  for (const auto& r : results)
    for (const auto& [k, v] : r) cols[k].push_back(v);
  std::map<std::string, SampleStats> out;
  for (const auto& [k, v] : cols) out[k] = summarize(v);
  return out;
}

std::vector<double> position_fluctuation(double omega_a, double omega_b,
                                         double temperature_uK, double mass_amu,
                                         int count, std::uint64_t seed) {
  if (!(omega_a > 0.0) || !(omega_b > 0.0))
    throw std::invalid_argument("position_fluctuation: trap frequencies must be > 0");
  if (count < 1) throw std::invalid_argument("position_fluctuation: count < 1");
  check_thermal(temperature_uK, mass_amu);
  // sigma_x = sqrt(kB T / (m w^2)); v in um/us so x in um.
  ThermalSpec th{temperature_uK, mass_amu, 0.0};
  const double sv = velocity_sigma(th);
  const double sa = sv / omega_a, sb = sv / omega_b;
  std::vector<double> dl(count, 0.0);
  if (sv == 0.0) return dl;
  for (int i = 0; i < count; ++i) {
    auto g = stream(seed, static_cast<std::uint64_t>(i));
    std::normal_distribution<double> n(0.0, 1.0);
    double xa = sa * n(g);
    double xb = sb * n(g);
    dl[i] = xb - xa;
  }
  return dl;
}

double interaction_fluctuation_ratio(InteractionKind kind, double L, double dL) {
  return interaction_at(kind, 1.0, L + dL) / interaction_at(kind, 1.0, L) - 1.0;
}

double blockade_error_analytic(double omega, double v) {
  if (v == 0.0) throw std::invalid_argument("blockade_error_analytic: V = 0");
  const double w2 = v * v + omega * omega;
  if (omega == 0.0) return 0.0;
  const double s = std::sin(kPi * std::sqrt(w2) / omega);
  return omega * omega / w2 * s * s;
}

double blockade_error_averaged(double omega, double v) {
  if (v == 0.0) throw std::invalid_argument("blockade_error_averaged: V = 0");
  return omega * omega / (2.0 * v * v);
}

double decay_error(const Trajectory<Vec>& traj, const std::vector<double>& rates) {
  if (traj.states.empty()) return 0.0;
  auto rate_of = [&](const Vec& psi) {
    if (static_cast<std::size_t>(psi.size()) != rates.size())
      throw std::invalid_argument("decay_error: one rate per basis state needed");
    double r = 0.0;
    for (Eigen::Index k = 0; k < psi.size(); ++k) r += rates[k] * std::norm(psi(k));
    return r;
  };
  double acc = 0.0;
  double prev = rate_of(traj.states[0]);
  for (std::size_t j = 1; j < traj.states.size(); ++j) {
    double cur = rate_of(traj.states[j]);
    acc += 0.5 * (prev + cur) * (traj.times[j] - traj.times[j - 1]);
    prev = cur;
  }
  return acc;
}

double decay_error(const std::vector<Trajectory<Vec>>& trajs,
                   const std::vector<double>& rates) {
  if (trajs.empty()) return 0.0;
  double acc = 0.0;
  for (const auto& t : trajs) acc += decay_error(t, rates);
  return acc / static_cast<double>(trajs.size());
}

}  // namespace rydgate
