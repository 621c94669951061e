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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rydgate/ham.hpp"

namespace rydgate {

// Extra operator term active during one step (sweeps, flips).
struct TermSpec {
  Mat op;
  Envelope coeff;
  bool add_adjoint = false;
};

// One window of the schedule. Drives listed together run simultaneously;
// their envelopes see local time in [0, duration]. A step with `instant`
// set applies that unitary and has zero duration.
struct Step {
  std::string label;
  double duration = 0.0;
  std::vector<DriveSpec> drives;
  std::vector<TermSpec> terms;
  std::optional<Mat> instant;
};

struct PulseSchedule {
  std::string protocol;
  ProductBasis basis;
  // Always-on part (interactions, static shifts), rad/us.
  Mat interaction;
  std::vector<Step> steps;
  // Basis states removed from the model (strong-interaction truncation).
  std::vector<int> removed;
  // Per-atom, per-level decay rates (1/us). Empty means no decay data.
  std::vector<std::vector<double>> level_decay;
  // Full-basis indices of the computational input states.
  std::vector<int> computational;
  // Ideal map on the computational subspace; empty for state preparation.
  Mat ideal;
  // State-preparation protocols: initial and target states (full basis).
  Vec initial_state;
  Vec ideal_state;
  // Free-form numeric annotations (validity ratios, solver outputs).
  std::map<std::string, double> notes;

  double duration() const;
  // Decay rate of each full-basis state, summed over atoms.
  std::vector<double> state_decay_rates() const;
  // Builds the model for step `k`, optionally with Doppler shifts and decay.
  HamiltonianModel step_model(std::size_t k, const std::vector<double>& velocity,
                              bool decay, double interaction_scale = 1.0) const;
  // Checks windows, labels, and target shapes; throws std::invalid_argument.
  void validate() const;
};

struct SimOptions {
  bool decay = false;
  // Per-atom velocity along the drive axis (um/us); empty means static.
  std::vector<double> velocity;
  // Multiplies `interaction` (frozen fluctuation studies).
  double interaction_scale = 1.0;
  EvolveOptions evolve;
};

struct SimResult {
  // Final full-basis states, one column per input.
  Mat states;
  // Rows of `states` restricted to the computational indices. For state
  // preparation this is the single final state.
  Mat comp_map;
  double duration = 0.0;
};

// Propagates the computational inputs (or the initial state) through every
// step. Constant steps use exact exponentials; others use the adaptive
// integrator.
SimResult simulate(const PulseSchedule& s, const SimOptions& opt = {});

// Full propagator over the whole basis.
Mat schedule_propagator(const PulseSchedule& s, const SimOptions& opt = {});

// Samples one input's trajectory at `per_step` evenly spaced points per step
// (plus step boundaries); used for population integrals.
Trajectory<Vec> sample_trajectory(const PulseSchedule& s, const Vec& psi0,
                                  int per_step, const SimOptions& opt = {});

// Scores of a simulated gate.
struct GateScores {
  double pedersen = 0.0;
  double truth_table = 0.0;
  double leakage = 0.0;  // 1 - mean retained computational norm
};

GateScores score_gate(const PulseSchedule& s, const SimResult& r);

// |<ideal_state|psi_final>|^2 for state-preparation schedules.
double target_overlap(const PulseSchedule& s, const SimResult& r);

}  // namespace rydgate
