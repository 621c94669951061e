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

#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rydgate/interact.hpp"
#include "rydgate/schedule.hpp"

namespace rydgate {

inline constexpr double kBoltzmann = 1.380649e-23;     // J/K
inline constexpr double kAtomicMass = 1.66053906660e-27;  // kg

struct ThermalSpec {
  double temperature = 0.0;  // uK
  double mass = 133.0;       // amu
  double k_eff = 0.0;        // rad/um, signed
};

// sqrt(kB T / m), returned in um/us (same number as m/s).
double velocity_sigma(const ThermalSpec& spec);

// Gaussian dephasing time sqrt(2) / (|k| sigma_v), us. Infinite when the
// product vanishes.
double dephasing_time(const ThermalSpec& spec);

// Sum_j (2 pi / lambda_j) d_j. Wavelengths in nm, result in rad/um.
Eigen::Vector3d effective_wavevector(const std::vector<double>& wavelengths_nm,
                                     const std::vector<Eigen::Vector3d>& dirs);

// Angle-parametrised planar geometry: beam j travels along
// (cos a_j, sin a_j, 0).
Eigen::Vector3d planar_wavevector(const std::vector<double>& wavelengths_nm,
                                  const std::vector<double>& angles);

// Deterministic normal samples, one per trajectory, seeded per index.
std::vector<double> doppler_samples(const ThermalSpec& spec, int count,
                                    std::uint64_t seed);

// Monte Carlo <exp(i k v t)> and the closed form exp(-(k sigma_v t)^2 / 2).
cplx doppler_coherence_mc(const ThermalSpec& spec, double t, int count,
                          std::uint64_t seed);
double doppler_coherence_analytic(const ThermalSpec& spec, double t);

struct SampleStats {
  double mean = 0.0;
  double stderr_ = 0.0;
  int count = 0;
};

SampleStats summarize(const std::vector<double>& xs);

// Metric name -> value for one simulated trajectory.
using Scorer = std::function<std::map<std::string, double>(const SimResult&)>;

// Independent velocity per atom per trajectory. Every Rydberg drive must
// carry k_eff. Trajectories run on `workers` threads; the reduction order is
// fixed so the result does not depend on the thread count. A non-empty
// `interaction_scales` (one entry per trajectory) multiplies the pair
// interaction of that trajectory, for combined position noise.
std::map<std::string, SampleStats> apply_doppler(
    const PulseSchedule& s, const ThermalSpec& spec, int count,
    std::uint64_t seed, const Scorer& scorer, int workers = 1,
    const SimOptions& base = {},
    const std::vector<double>& interaction_scales = {});

// Relative separation offsets dL (um) for two atoms in harmonic traps with
// angular frequencies omega_a, omega_b (rad/us).
std::vector<double> position_fluctuation(double omega_a, double omega_b,
                                         double temperature_uK, double mass_amu,
                                         int count, std::uint64_t seed);

// V(L + dL) / V(L) - 1 for the given power law.
double interaction_fluctuation_ratio(InteractionKind kind, double L, double dL);

// Omega^2/(V^2+Omega^2) sin^2(pi sqrt(V^2+Omega^2)/Omega).
double blockade_error_analytic(double omega, double v);
// Oscillation-averaged value Omega^2 / (2 V^2).
double blockade_error_averaged(double omega, double v);

// Integral of sum_l Gamma_l P_l(t) over a sampled trajectory (trapezoid).
double decay_error(const Trajectory<Vec>& traj, const std::vector<double>& rates);
// Same, averaged over several inputs' trajectories.
double decay_error(const std::vector<Trajectory<Vec>>& trajs,
                   const std::vector<double>& rates);

// Time spent in Rydberg states divided by the lifetime.
inline double decay_error_from_time(double t_rydberg, double tau) {
  return tau == std::numeric_limits<double>::infinity() ? 0.0 : t_rydberg / tau;
}

struct ErrorBudget {
  double decay = 0.0;
  double blockade_leak = 0.0;
  double dephasing = 0.0;
  double residual = 0.0;
};

}  // namespace rydgate
