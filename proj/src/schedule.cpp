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

#include "rydgate/schedule.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

#include "rydgate/metrics.hpp"

namespace rydgate {

double PulseSchedule::duration() const {
  double t = 0.0;
  for (const auto& s : steps) t += s.duration;
  return t;
}

std::vector<double> PulseSchedule::state_decay_rates() const {
  std::vector<double> rates(basis.dim(), 0.0);
  if (level_decay.empty()) return rates;
  if (static_cast<int>(level_decay.size()) != basis.n_atoms())
    throw std::invalid_argument("level_decay: one rate list per atom needed");
  for (int a = 0; a < basis.n_atoms(); ++a)
    if (static_cast<int>(level_decay[a].size()) != basis.level_count(a))
      throw std::invalid_argument("level_decay: one rate per level needed");
  for (int i = 0; i < basis.dim(); ++i) {
    auto d = basis.digits(i);
    for (int a = 0; a < basis.n_atoms(); ++a) rates[i] += level_decay[a][d[a]];
  }
  return rates;
}

namespace {

// (atom, upper level) -> k_eff for every Rydberg drive in the schedule.
std::map<std::pair<int, int>, double> doppler_levels(const PulseSchedule& s) {
  std::map<std::pair<int, int>, double> out;
  for (const auto& st : s.steps) {
    for (const auto& d : st.drives) {
      if (!d.to_rydberg) continue;
      if (!d.k_eff) {
        std::ostringstream os;
        os << "Doppler sampling: drive " << d.lower << "->" << d.upper
           << " on atom " << d.atom << " in step '" << st.label
           << "' has no k_eff";
        throw std::invalid_argument(os.str());
      }
      int u = s.basis.level_index(d.atom, d.upper);
      out.emplace(std::make_pair(d.atom, u), *d.k_eff);
    }
  }
  return out;
}

}  // namespace

HamiltonianModel PulseSchedule::step_model(std::size_t k,
                                           const std::vector<double>& velocity,
                                           bool decay,
                                           double interaction_scale) const {
  const Step& st = steps.at(k);
  HamiltonianModel h(basis.dim());
  if (interaction.size() != 0) h.add_static(interaction * interaction_scale);
  for (const auto& d : st.drives) add_drive(h, basis, d);
  for (const auto& t : st.terms) h.add_term(t.op, t.coeff, t.add_adjoint);
  if (!velocity.empty()) {
    if (static_cast<int>(velocity.size()) != basis.n_atoms())
      throw std::invalid_argument("velocity: one entry per atom needed");
    for (const auto& [key, kk] : doppler_levels(*this)) {
      double shift = kk * velocity[key.first];
      if (shift != 0.0) h.add_static(shift * basis.projector(key.first, key.second));
    }
  }
  if (!removed.empty()) h.remove_states(removed);
  if (decay) return h.with_decay(state_decay_rates());
  return h;
}

void PulseSchedule::validate() const {
  const int d = basis.dim();
  if (interaction.size() != 0 && (interaction.rows() != d || interaction.cols() != d))
    throw std::invalid_argument("schedule: interaction has wrong dimension");
  for (const auto& st : steps) {
    if (!(st.duration >= 0.0) || !std::isfinite(st.duration))
      throw std::invalid_argument("schedule: step '" + st.label +
                                  "' has invalid duration");
    if (st.instant) {
      if (st.duration != 0.0 || !st.drives.empty())
        throw std::invalid_argument("schedule: instantaneous step '" + st.label +
                                    "' cannot carry drives or duration");
      if (st.instant->rows() != d || st.instant->cols() != d)
        throw std::invalid_argument("schedule: instantaneous unitary dimension");
    }
    std::set<std::tuple<int, int, int>> seen;
    for (const auto& dr : st.drives) {
      auto key = std::make_tuple(dr.atom, basis.level_index(dr.atom, dr.lower),
                                 basis.level_index(dr.atom, dr.upper));
      if (!seen.insert(key).second)
        throw std::invalid_argument("schedule: duplicate drive in step '" +
                                    st.label + "'");
    }
  }
  if (ideal.size() != 0) {
    const auto n = static_cast<Eigen::Index>(computational.size());
    if (ideal.rows() != n || ideal.cols() != n)
      throw std::invalid_argument("schedule: ideal map does not match inputs");
  }
  for (int c : computational)
    if (c < 0 || c >= d)
      throw std::invalid_argument("schedule: computational index out of range");
}

namespace {

Mat advance(const PulseSchedule& s, std::size_t k, const Mat& states,
            const SimOptions& opt) {
  const Step& st = s.steps[k];
  if (st.instant) return (*st.instant) * states;
  if (st.duration == 0.0) return states;
  HamiltonianModel h = s.step_model(k, opt.velocity, opt.decay, opt.interaction_scale);
  if (h.is_constant()) {
    Mat u = opt.decay ? expm_general(h.static_part(), st.duration)
                      : expm_hermitian(h.static_part(), st.duration);
    return u * states;
  }
  return evolve_operator(h, states, 0.0, st.duration, opt.evolve);
}

Mat inputs(const PulseSchedule& s) {
  if (s.initial_state.size() != 0) {
    if (s.initial_state.size() != s.basis.dim())
      throw std::invalid_argument("schedule: initial state dimension");
    return s.initial_state;
  }
  Mat in = Mat::Zero(s.basis.dim(), s.computational.size());
  for (std::size_t c = 0; c < s.computational.size(); ++c)
    in(s.computational[c], c) = 1.0;
  return in;
}

}  // namespace

SimResult simulate(const PulseSchedule& s, const SimOptions& opt) {
  s.validate();
  Mat states = inputs(s);
  for (std::size_t k = 0; k < s.steps.size(); ++k)
    states = advance(s, k, states, opt);
  SimResult r;
  r.duration = s.duration();
  if (s.initial_state.size() != 0) {
    r.comp_map = states;
  } else {
    r.comp_map = Mat(s.computational.size(), s.computational.size());
    for (std::size_t i = 0; i < s.computational.size(); ++i)
      r.comp_map.row(i) = states.row(s.computational[i]);
  }
  r.states = std::move(states);
  return r;
}

Mat schedule_propagator(const PulseSchedule& s, const SimOptions& opt) {
  s.validate();
  Mat u = Mat::Identity(s.basis.dim(), s.basis.dim());
  for (std::size_t k = 0; k < s.steps.size(); ++k) u = advance(s, k, u, opt);
  return u;
}

Trajectory<Vec> sample_trajectory(const PulseSchedule& s, const Vec& psi0,
                                  int per_step, const SimOptions& opt) {
  if (per_step < 1) throw std::invalid_argument("sample_trajectory: per_step < 1");
  s.validate();
  Trajectory<Vec> tr;
  Vec psi = psi0;
  double t = 0.0;
  tr.times.push_back(t);
  tr.states.push_back(psi);
  for (std::size_t k = 0; k < s.steps.size(); ++k) {
    const Step& st = s.steps[k];
    if (st.instant) {
      psi = (*st.instant) * psi;
      tr.times.push_back(t);
      tr.states.push_back(psi);
      continue;
    }
    if (st.duration == 0.0) continue;
    HamiltonianModel h = s.step_model(k, opt.velocity, opt.decay, opt.interaction_scale);
    const double dt = st.duration / per_step;
    if (h.is_constant()) {
      Mat u = opt.decay ? expm_general(h.static_part(), dt)
                        : expm_hermitian(h.static_part(), dt);
      for (int j = 1; j <= per_step; ++j) {
        psi = u * psi;
        tr.times.push_back(t + j * dt);
        tr.states.push_back(psi);
      }
    } else {
      EvolveOptions o = opt.evolve;
      o.output_times.clear();
      for (int j = 0; j <= per_step; ++j) o.output_times.push_back(j * dt);
      o.output_times.back() = st.duration;
      auto seg = evolve(h, psi, 0.0, st.duration, o);
      for (std::size_t j = 1; j < seg.times.size(); ++j) {
        tr.times.push_back(t + seg.times[j]);
        tr.states.push_back(seg.states[j]);
      }
      psi = seg.final_state();
    }
    t += st.duration;
  }
  return tr;
}

GateScores score_gate(const PulseSchedule& s, const SimResult& r) {
  if (s.ideal.size() == 0)
    throw std::invalid_argument("score_gate: schedule has no ideal map");
  GateScores g;
  g.pedersen = pedersen_fidelity(r.comp_map, s.ideal);
  g.truth_table = truth_table_fidelity(truth_table(r.comp_map), truth_table(s.ideal));
  double kept = 0.0;
  for (Eigen::Index c = 0; c < r.comp_map.cols(); ++c)
    kept += r.comp_map.col(c).squaredNorm();
  g.leakage = 1.0 - kept / static_cast<double>(r.comp_map.cols());
  return g;
}

double target_overlap(const PulseSchedule& s, const SimResult& r) {
  if (s.ideal_state.size() == 0 || s.ideal_state.size() != r.states.rows())
    throw std::invalid_argument("target_overlap: schedule has no matching ideal state");
  return std::norm(s.ideal_state.dot(r.states.col(0)));
}

}  // namespace rydgate
