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

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rydgate/interact.hpp"
#include "rydgate/schedule.hpp"

namespace rydgate {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// One-photon 319 nm Cs excitation, rad/um. Builders tag every Rydberg drive
// with this value; use set_k_eff to change it.
inline constexpr double kDefaultKeff = kTwoPi / 0.319;

void set_k_eff(PulseSchedule& s, double k_eff);
// 1/tau on every level whose label starts with 'r' (and 's', 'p' in the GHZ
// register), zero elsewhere.
void set_rydberg_lifetime(PulseSchedule& s, double tau);

// ---- blockade C_Z -------------------------------------------------------

// pi (control) - 2 pi (target) - pi (control) on 1 <-> r; V on |rr>.
// Ideal diag(1, -1, -1, -1).
PulseSchedule blockade_cz(double omega, double v, double delta = 0.0);

// |rr> population after the first two pulses for input |11>.
double blockade_rr_population(double omega, double v);

// ---- detuned two-pulse phase gate --------------------------------------

struct PhaseGateSolution {
  double theta = 0.0;
  double delta_over_omega = 0.0;
  double xi = 0.0;
  double t_omega = 0.0;
  int k = 0;
  double alpha = 0.0;  // phase of |01>, |10>
  double beta = 0.0;   // phase of |11>
  double closure_residual = 0.0;
  double xi_residual = 0.0;
  double v_over_omega = std::numeric_limits<double>::infinity();
};

// Closure mismatch wrapped to (-pi, pi] at Delta/Omega = x.
double detuned_phase_residual(double theta, double x);

// Root of the closure relation on (0, x_max] scanned at `step`, refined by
// Brent. `k` selects the branch label; by default the branch with
// alpha in (-2 pi, 0] is returned.
PhaseGateSolution detuned_phase_solve(double theta, std::optional<int> k = {},
                                      double x_max = 2.0, double step = 1e-3);

// Same closure relations with the |11> sector detuning lowered by the
// second-order blockade shift Omega / (2 (V/Omega + Delta/Omega)) of the
// symmetric single-excitation state. The pulse time follows the |11> return
// condition; alpha and xi keep the bare detuning.
PhaseGateSolution detuned_phase_solve_blockaded(double theta, double v_over_omega,
                                                std::optional<int> k = {},
                                                double x_max = 2.0, double step = 1e-3);

// Two equal-duration simultaneous pulses on both atoms, the second with Rabi
// phase xi. With `blockade_correction` the laser detuning is shifted by
// Omega^2 / (2 V) so the |11> sector sees the solved detuning.
PulseSchedule detuned_phase_schedule(const PhaseGateSolution& sol, double omega,
                                     double v, bool blockade_correction = false);

// arg(d11 d00 / (d01 d10)) of a diagonal-dominant two-qubit map.
double conditional_phase(const Mat& comp_map);

// ---- transition slow-down CNOT -----------------------------------------

// sqrt(16 k^2 - 1).
double tsd_alpha(int k);

// Two steps of 2 t_pi each on the target ({1 <-> r, 0 <-> r'}, signs flipped
// and partners swapped in step two) with the control driven at alpha Omega_t
// during the first t_pi of each step. Levels {0, 1, r, r'}; V on every
// doubly excited state, V = inf removes those states. Ideal CNOT.
PulseSchedule tsd_cnot_two_pulse(double omega_t, double alpha = std::sqrt(15.0),
                                 double v = kInf, double tau = kInf);

// One simultaneous pulse of duration 2 sqrt(2) k1 pi / Omega_t. Control
// drives 1 <-> r at ratio * Omega_t, target drives 0 <-> r and 1 <-> r at
// Omega_t. Ideal {|00>, |01>, -|11>, -|10>}.
PulseSchedule tsd_cnot_one_shot(double omega_t, double ratio, int k1 = 3,
                                double v = kInf, double tau = kInf);

struct TsdCondition {
  int k1 = 0;
  double ratio = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
  double k2_residual = 0.0;
  double k3_residual = 0.0;
  double fidelity = 0.0;
};

// k2 = Omega_c t / (4 pi), k3 = (Omega_bar t / (2 pi) - 1) / 2.
TsdCondition tsd_condition_at(int k1, double ratio);

enum class TsdObjective { Fidelity, Residual };

// Best ratio per k1 <= k1_max inside [lo, hi]; ties go to the smallest k1,
// then the smallest ratio.
TsdCondition tsd_condition_search(int k1_max, double lo = 3.5, double hi = 5.0,
                                  TsdObjective obj = TsdObjective::Fidelity);

// ---- dark-state adiabatic gate -----------------------------------------

struct DarkStateParams {
  double omega_m = kTwoPi * 7.643;
  double t_t = 0.29;
  double sigma = 0.0;  // 0 selects t_t / 5
  double c3 = -33.0;   // GHz um^3
  double L = 10.0;     // um
  double omega_c = kTwoPi * 7.643;  // control pi pulse
  double v_scale = 1.0;
};

double dark_state_envelope(const DarkStateParams& p, double t);
double dark_state_sigma(const DarkStateParams& p);

// Control levels {0, 1, r1, r3}, target {0, 1, r2, r4}; V flips
// |r1 r2> <-> |r3 r4>. Ideal diag(1, -1, -1, -1).
PulseSchedule dark_state_gate(const DarkStateParams& p = {});

// Target pulse only, inputs {|00>, |01>, |r1 0>, |r1 1>}, ideal
// diag(1, -1, 1, 1).
PulseSchedule dark_state_target_stage(const DarkStateParams& p = {});

// ---- GHZ with asymmetric interactions ----------------------------------

inline constexpr int kGhzMaxDim = 1024;

// Levels {0, 1, s, p} per atom. Step durations pi/(sqrt(N) Omega),
// sqrt(2) pi / Omega, pi/(sqrt(N) Omega); target (-|0..0> + (-1)^N |1..1>)/sqrt 2.
PulseSchedule ghz_asymmetric(int n, double omega, double v_ss, double v_sp,
                             double v_pp);

// ---- spin echo ---------------------------------------------------------

struct SpinEchoParams {
  double omega = kTwoPi;
  double v0 = kTwoPi * 20.0;
  double v0_prime = -kTwoPi * 30.0;
  // 0 = instantaneous flip; otherwise microwave Rabi i Omega_mu for pi/Omega_mu.
  double omega_mu = 0.0;
  // Multiplies Omega' (mismatch studies).
  double omega_prime_scale = 1.0;
};

// control pi (1<->r) - target pi (1<->r) - flip r->r' on both atoms -
// target pi (r'<->1, Omega' = Omega V0'/V0, t' = pi/|Omega'|) - control pi
// (r'<->1). Ideal diag(1, -sgn(Omega'), -1, -1).
PulseSchedule spin_echo_cz(const SpinEchoParams& p);

// max |U' M U - M| over the {|r1>, |rr>} sector with V scaled by
// `v_scale` in both halves.
double spin_echo_sector_error(const SpinEchoParams& p, double v_scale = 1.0);

// ---- antiblockade ------------------------------------------------------

enum class AntiblockadeMode { DetuningMatch, Modulation };

// Detuning match: upper level at -V/2 on both atoms, one full flop period
// 2 pi Delta / Omega^2. Modulation: Rabi Omega cos(omega t) with
// omega = V/2, period 2 pi 4 omega / Omega^2. Ideal diag(1, 1, 1, -1) up to
// single-qubit phases. notes["validity"] holds Omega/Delta or Omega/omega.
PulseSchedule antiblockade_cz(double omega, double v, AntiblockadeMode mode);

// First |11> <-> |rr> flop period in the full two-atom model with the
// interaction set to v_factor * V while the drive stays matched to V.
double antiblockade_flop_period(double omega, double v, AntiblockadeMode mode,
                                double v_factor = 1.0);

// Twice the time-averaged |rr> population over `periods` nominal periods.
double antiblockade_mean_transfer(double omega, double v, double v_factor,
                                  double periods = 20.0);

// Second-order two-level prediction for the same quantity (detuning match).
double antiblockade_offmatch_prediction(double omega, double v,
                                        double v_factor);

// ---- wait-phase gate ---------------------------------------------------

// Simultaneous pi - wait |phi / V| - simultaneous pi. Ideal
// diag(1, -1, -1, exp(-i V T)).
PulseSchedule wait_phase_gate(double omega, double v, double phi);

// ---- ensemble and Foerster sweeps --------------------------------------

// {|g>, |R>} with coupling sqrt(N) Omega(t) / 2 and detuning delta(t) on
// |R>. notes carry the largest adiabaticity ratios.
PulseSchedule ensemble_adiabatic_excitation(int n, Envelope omega,
                                            Envelope delta, double duration);

struct EnsembleSweep {
  double duration = 2.0;
  double omega0 = kTwoPi * 5.0;
  double delta0 = kTwoPi * 20.0;
  double sigma_fraction = 1.0 / 6.0;
};
PulseSchedule ensemble_default_sweep(int n, const EnsembleSweep& p = {});

// {|r1 r2>, |r3 r4>} with flip coupling V and defect delta(t) on |r3 r4>.
// `sweeps` = 2 runs the defect back to its start.
PulseSchedule swept_forster_transfer(double v, Envelope defect, double duration,
                                     int sweeps = 1);

// Linear defect from +d0 to -d0.
PulseSchedule swept_forster_linear(double v, double d0, double duration,
                                   int sweeps = 1);

// ---- Berry phases ------------------------------------------------------

struct BerryLoop {
  std::function<double(double)> theta;
  std::function<double(double)> phi;
  // Optional d phi / ds; finite differences when empty.
  std::function<double(double)> dphi;
  double s0 = 0.0;
  double s1 = 1.0;
};

struct BerryPhases {
  double phi1 = 0.0;
  double phi2 = 0.0;
};

BerryPhases berry_phases(const BerryLoop& loop, double tol = 1e-10);

}  // namespace rydgate
