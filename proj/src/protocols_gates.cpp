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
#include <sstream>

#include "protocols_common.hpp"
#include "rydgate/protocols.hpp"

namespace rydgate {

using detail::diag4;
using detail::drive;
using detail::step;

void set_k_eff(PulseSchedule& s, double k_eff) {
  for (auto& st : s.steps)
    for (auto& d : st.drives)
      if (d.to_rydberg) d.k_eff = k_eff;
}

void set_rydberg_lifetime(PulseSchedule& s, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("lifetime must be positive");
  const double g = std::isinf(tau) ? 0.0 : 1.0 / tau;
  s.level_decay.assign(s.basis.n_atoms(), {});
  for (int a = 0; a < s.basis.n_atoms(); ++a)
    for (const auto& l : s.basis.levels(a))
      s.level_decay[a].push_back(detail::is_rydberg_label(l) ? g : 0.0);
}

// ---- blockade C_Z -------------------------------------------------------

PulseSchedule blockade_cz(double omega, double v, double delta) {
  if (!(omega > 0.0)) throw std::invalid_argument("blockade_cz: Omega must be > 0");
  PulseSchedule s;
  s.protocol = "blockade_cz";
  s.basis = ProductBasis({{"0", "1", "r"}, {"0", "1", "r"}});
  s.interaction = Mat::Zero(s.basis.dim(), s.basis.dim());
  detail::add_pair_shift(s.interaction, s.basis, 0, "r", 1, "r", v);
  const double tpi = kPi / omega;
  s.steps.push_back(step("control_pi", tpi, {drive(0, "1", "r", omega, delta)}));
  s.steps.push_back(step("target_2pi", 2 * tpi, {drive(1, "1", "r", omega, delta)}));
  s.steps.push_back(step("control_pi", tpi, {drive(0, "1", "r", omega, delta)}));
  s.computational = detail::two_qubit_inputs(s.basis);
  s.ideal = diag4(1, -1, -1, -1);
  s.notes["blockade_ratio"] = v / omega;
  return s;
}

double blockade_rr_population(double omega, double v) {
  PulseSchedule s = blockade_cz(omega, v);
  s.steps.resize(2);
  s.initial_state = basis_vec(s.basis.dim(), s.basis.index_of({"1", "1"}));
  SimResult r = simulate(s);
  return std::norm(r.states(s.basis.index_of({"r", "r"}), 0));
}

// ---- detuned phase gate -------------------------------------------------

PulseSchedule detuned_phase_schedule(const PhaseGateSolution& sol, double omega,
                                     double v, bool blockade_correction) {
  if (!(omega > 0.0))
    throw std::invalid_argument("detuned_phase_schedule: Omega must be > 0");
  PulseSchedule s;
  s.protocol = "detuned_phase_gate";
  s.basis = ProductBasis({{"0", "1", "r"}, {"0", "1", "r"}});
  s.interaction = Mat::Zero(s.basis.dim(), s.basis.dim());
  detail::add_pair_shift(s.interaction, s.basis, 0, "r", 1, "r", v);
  double delta = sol.delta_over_omega * omega;
  if (blockade_correction) {
    if (v == 0.0 || std::isinf(v))
      throw std::invalid_argument("blockade correction needs finite nonzero V");
    delta += omega * omega / (2.0 * v);
  }
  const double t = sol.t_omega / omega;
  const cplx twisted = omega * std::exp(kI * sol.xi);
  s.steps.push_back(step("pulse_1", t, {drive(0, "1", "r", omega, delta),
                                        drive(1, "1", "r", omega, delta)}));
  s.steps.push_back(step("pulse_2", t, {drive(0, "1", "r", twisted, delta),
                                        drive(1, "1", "r", twisted, delta)}));
  s.computational = detail::two_qubit_inputs(s.basis);
  const cplx ea = std::exp(kI * sol.alpha), eb = std::exp(kI * sol.beta);
  s.ideal = diag4(1, ea, ea, eb);
  s.notes["theta"] = sol.theta;
  s.notes["delta_over_omega"] = sol.delta_over_omega;
  s.notes["xi"] = sol.xi;
  s.notes["t_omega"] = sol.t_omega;
  return s;
}

double conditional_phase(const Mat& m) {
  if (m.rows() != 4 || m.cols() != 4)
    throw std::invalid_argument("conditional_phase: 4x4 map expected");
  return std::arg(m(3, 3) * m(0, 0) / (m(1, 1) * m(2, 2)));
}

// ---- TSD ---------------------------------------------------------------

double tsd_alpha(int k) {
  if (k < 1) throw std::invalid_argument("tsd_alpha: k >= 1");
  return std::sqrt(16.0 * k * k - 1.0);
}

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("TSD: alpha must be > 0");
  int k = std::max(1, static_cast<int>(std::lround(std::sqrt((alpha * alpha + 1.0) / 16.0))));
  if (std::abs(alpha - tsd_alpha(k)) <= 1e-9 * std::max(1.0, alpha)) return;
  std::ostringstream os;
  os.precision(10);
  os << "TSD: alpha = " << alpha
     << " does not satisfy sqrt(alpha^2 + 1) = 4k; nearest admissible values:";
  for (int j = std::max(1, k - 1); j <= k + 1; ++j)
    os << " sqrt(" << 16 * j * j - 1 << ")=" << tsd_alpha(j);
  throw std::invalid_argument(os.str());
}

std::vector<int> doubly_excited(const ProductBasis& b) {
  std::vector<int> out;
  for (int i = 0; i < b.dim(); ++i) {
    auto d = b.digits(i);
    bool all = true;
    for (int a = 0; a < b.n_atoms(); ++a)
      all = all && detail::is_rydberg_label(b.levels(a)[d[a]]);
    if (all) out.push_back(i);
  }
  return out;
}

void apply_blockade(PulseSchedule& s, double v) {
  auto dbl = doubly_excited(s.basis);
  s.interaction = Mat::Zero(s.basis.dim(), s.basis.dim());
  if (std::isinf(v)) {
    s.removed = dbl;
  } else {
    for (int i : dbl) s.interaction(i, i) = v;
  }
}

}  // namespace

PulseSchedule tsd_cnot_two_pulse(double omega_t, double alpha, double v,
                                 double tau) {
  if (!(omega_t > 0.0)) throw std::invalid_argument("TSD: Omega_t must be > 0");
  check_alpha(alpha);
  PulseSchedule s;
  s.protocol = "tsd_cnot_two_pulse";
  s.basis = ProductBasis({{"0", "1", "r", "r'"}, {"0", "1", "r", "r'"}});
  apply_blockade(s, v);
  const double tpi = kPi / omega_t;
  const double oc = alpha * omega_t;
  s.steps.push_back(step("step1_control_on", tpi,
                         {drive(0, "1", "r", oc), drive(1, "1", "r", omega_t),
                          drive(1, "0", "r'", omega_t)}));
  s.steps.push_back(step("step1_control_off", tpi,
                         {drive(1, "1", "r", omega_t), drive(1, "0", "r'", omega_t)}));
  s.steps.push_back(step("step2_control_on", tpi,
                         {drive(0, "1", "r", oc), drive(1, "1", "r'", -omega_t),
                          drive(1, "0", "r", -omega_t)}));
  s.steps.push_back(step("step2_control_off", tpi,
                         {drive(1, "1", "r'", -omega_t), drive(1, "0", "r", -omega_t)}));
  s.computational = detail::two_qubit_inputs(s.basis);
  s.ideal = detail::cnot();
  set_rydberg_lifetime(s, tau);
  s.notes["alpha"] = alpha;
  return s;
}

PulseSchedule tsd_cnot_one_shot(double omega_t, double ratio, int k1, double v,
                                double tau) {
  if (!(omega_t > 0.0)) throw std::invalid_argument("TSD: Omega_t must be > 0");
  if (!(ratio > 0.0)) throw std::invalid_argument("TSD: ratio must be > 0");
  if (k1 < 1) throw std::invalid_argument("TSD: k1 >= 1");
  PulseSchedule s;
  s.protocol = "tsd_cnot_one_shot";
  s.basis = ProductBasis({{"0", "1", "r"}, {"0", "1", "r"}});
  apply_blockade(s, v);
  const double t = 2.0 * std::sqrt(2.0) * k1 * kPi / omega_t;
  s.steps.push_back(step("pulse", t,
                         {drive(0, "1", "r", ratio * omega_t),
                          drive(1, "0", "r", omega_t), drive(1, "1", "r", omega_t)}));
  s.computational = detail::two_qubit_inputs(s.basis);
  Mat ideal = Mat::Zero(4, 4);
  ideal(0, 0) = 1.0;
  ideal(1, 1) = 1.0;
  ideal(3, 2) = -1.0;
  ideal(2, 3) = -1.0;
  s.ideal = ideal;
  set_rydberg_lifetime(s, tau);
  s.notes["ratio"] = ratio;
  s.notes["k1"] = k1;
  return s;
}

// ---- dark-state gate ---------------------------------------------------

double dark_state_sigma(const DarkStateParams& p) {
  return p.sigma > 0.0 ? p.sigma : p.t_t / 5.0;
}

double dark_state_envelope(const DarkStateParams& p, double t) {
  const double sg = dark_state_sigma(p);
  const double c = t - 0.5 * p.t_t;
  return p.omega_m * (std::exp(-c * c / (2 * sg * sg)) -
                      std::exp(-p.t_t * p.t_t / (8 * sg * sg)));
}

namespace {

PulseSchedule dark_base(const DarkStateParams& p) {
  if (!(p.t_t > 0.0) || !(p.omega_m > 0.0) || !(p.L > 0.0))
    throw std::invalid_argument("dark_state_gate: T_t, Omega_m and L must be > 0");
  PulseSchedule s;
  s.basis = ProductBasis({{"0", "1", "r1", "r3"}, {"0", "1", "r2", "r4"}});
  const double v = interaction_at(InteractionKind::DipoleC3, p.c3, p.L) * p.v_scale;
  s.interaction = Mat::Zero(s.basis.dim(), s.basis.dim());
  int a = s.basis.index_of({"r1", "r2"}), b = s.basis.index_of({"r3", "r4"});
  s.interaction(a, b) = v;
  s.interaction(b, a) = v;
  s.notes["V"] = v;
  s.notes["sigma"] = dark_state_sigma(p);
  return s;
}

Step dark_target_step(const DarkStateParams& p) {
  DarkStateParams q = p;
  return step("target_dark", p.t_t,
              {drive(1, "1", "r2", Envelope::real([q](double t) {
                       return dark_state_envelope(q, t);
                     }))});
}

}  // namespace

PulseSchedule dark_state_gate(const DarkStateParams& p) {
  PulseSchedule s = dark_base(p);
  s.protocol = "dark_state_gate";
  if (!(p.omega_c > 0.0)) throw std::invalid_argument("dark_state_gate: Omega_c must be > 0");
  const double tpi = kPi / p.omega_c;
  s.steps.push_back(step("control_pi", tpi, {drive(0, "1", "r1", p.omega_c)}));
  s.steps.push_back(dark_target_step(p));
  s.steps.push_back(step("control_pi", tpi, {drive(0, "1", "r1", p.omega_c)}));
  s.computational = detail::two_qubit_inputs(s.basis);
  s.ideal = diag4(1, -1, -1, -1);
  return s;
}

PulseSchedule dark_state_target_stage(const DarkStateParams& p) {
  PulseSchedule s = dark_base(p);
  s.protocol = "dark_state_target_stage";
  s.steps.push_back(dark_target_step(p));
  s.computational = {s.basis.index_of({"0", "0"}), s.basis.index_of({"0", "1"}),
                     s.basis.index_of({"r1", "0"}), s.basis.index_of({"r1", "1"})};
  s.ideal = diag4(1, -1, 1, 1);
  return s;
}

// ---- spin echo ---------------------------------------------------------

namespace {

Mat echo_flip(const ProductBasis& b) {
  Mat one = Mat::Identity(4, 4);
  // |r> -> |r'>, |r'> -> -|r>, from the pi pulse with Rabi i Omega_mu.
  one(2, 2) = 0.0;
  one(3, 3) = 0.0;
  one(3, 2) = 1.0;
  one(2, 3) = -1.0;
  Mat m = Mat::Zero(b.dim(), b.dim());
  for (int i = 0; i < b.dim(); ++i) {
    auto di = b.digits(i);
    for (int j = 0; j < b.dim(); ++j) {
      auto dj = b.digits(j);
      m(i, j) = one(di[0], dj[0]) * one(di[1], dj[1]);
    }
  }
  return m;
}

}  // namespace

PulseSchedule spin_echo_cz(const SpinEchoParams& p) {
  if (!(p.omega > 0.0)) throw std::invalid_argument("spin_echo_cz: Omega must be > 0");
  if (p.v0 == 0.0) throw std::invalid_argument("spin_echo_cz: V0 must be nonzero");
  if (p.v0_prime == 0.0) throw std::invalid_argument("spin_echo_cz: V0' must be nonzero");
  PulseSchedule s;
  s.protocol = "spin_echo_cz";
  s.basis = ProductBasis({{"0", "1", "r", "r'"}, {"0", "1", "r", "r'"}});
  s.interaction = Mat::Zero(s.basis.dim(), s.basis.dim());
  detail::add_pair_shift(s.interaction, s.basis, 0, "r", 1, "r", p.v0);
  detail::add_pair_shift(s.interaction, s.basis, 0, "r'", 1, "r'", p.v0_prime);
  const double tpi = kPi / p.omega;
  const double op = p.omega * p.v0_prime / p.v0 * p.omega_prime_scale;
  const double tp = kPi / std::abs(p.omega * p.v0_prime / p.v0);
  s.steps.push_back(step("control_pi", tpi, {drive(0, "1", "r", p.omega)}));
  s.steps.push_back(step("target_pi", tpi, {drive(1, "1", "r", p.omega)}));
  if (p.omega_mu > 0.0) {
    s.steps.push_back(step("flip", kPi / p.omega_mu,
                           {drive(0, "r", "r'", kI * p.omega_mu, 0.0, false),
                            drive(1, "r", "r'", kI * p.omega_mu, 0.0, false)}));
  } else {
    Step f;
    f.label = "flip";
    f.instant = echo_flip(s.basis);
    s.steps.push_back(f);
  }
  s.steps.push_back(step("target_pi_prime", tp, {drive(1, "1", "r'", op)}));
  s.steps.push_back(step("control_return", tpi, {drive(0, "1", "r'", p.omega)}));
  s.computational = detail::two_qubit_inputs(s.basis);
  s.ideal = diag4(1, op > 0 ? -1.0 : 1.0, -1, -1);
  s.notes["omega_prime"] = op;
  return s;
}

double spin_echo_sector_error(const SpinEchoParams& p, double v_scale) {
  PulseSchedule s = spin_echo_cz(p);
  std::vector<Step> mid(s.steps.begin() + 1, s.steps.begin() + 4);
  s.steps = mid;
  s.computational.clear();
  s.ideal = Mat();
  SimOptions o;
  o.interaction_scale = v_scale;
  Mat u = schedule_propagator(s, o);
  const int r1 = s.basis.index_of({"r", "1"}), rr = s.basis.index_of({"r", "r"});
  const int p1 = s.basis.index_of({"r'", "1"}), pp = s.basis.index_of({"r'", "r'"});
  Vec e1 = Vec::Zero(s.basis.dim()), e2 = Vec::Zero(s.basis.dim());
  e1(p1) = 1.0;
  e2(pp) = 1.0;
  double err = (u.col(r1) - e1).cwiseAbs().maxCoeff();
  return std::max(err, (u.col(rr) - e2).cwiseAbs().maxCoeff());
}

// ---- antiblockade ------------------------------------------------------

namespace {

PulseSchedule antiblockade_model(double omega, double v, AntiblockadeMode mode,
                                 double v_factor, double duration) {
  if (!(omega > 0.0)) throw std::invalid_argument("antiblockade: Omega must be > 0");
  if (v == 0.0) throw std::invalid_argument("antiblockade: V must be nonzero");
  PulseSchedule s;
  s.protocol = "antiblockade_cz";
  s.basis = ProductBasis({{"0", "1", "r"}, {"0", "1", "r"}});
  s.interaction = Mat::Zero(s.basis.dim(), s.basis.dim());
  detail::add_pair_shift(s.interaction, s.basis, 0, "r", 1, "r", v * v_factor);
  const double half = 0.5 * v;
  if (mode == AntiblockadeMode::DetuningMatch) {
    s.steps.push_back(step("flop", duration, {drive(0, "1", "r", omega, -half),
                                              drive(1, "1", "r", omega, -half)}));
    s.notes["validity"] = omega / std::abs(half);
  } else {
    const double w = std::abs(half);
    auto env = Envelope::real([omega, w](double t) { return omega * std::cos(w * t); });
    s.steps.push_back(step("flop", duration, {drive(0, "1", "r", env),
                                              drive(1, "1", "r", env)}));
    s.notes["validity"] = omega / w;
  }
  s.computational = detail::two_qubit_inputs(s.basis);
  s.ideal = diag4(1, 1, 1, -1);
  return s;
}

double nominal_period(double omega, double v, AntiblockadeMode mode) {
  const double half = std::abs(0.5 * v);
  if (mode == AntiblockadeMode::DetuningMatch) return kTwoPi * half / (omega * omega);
  return kTwoPi * 4.0 * half / (omega * omega);
}

}  // namespace

PulseSchedule antiblockade_cz(double omega, double v, AntiblockadeMode mode) {
  PulseSchedule s = antiblockade_model(omega, v, mode, 1.0, 1.0);
  s.steps[0].duration = nominal_period(omega, v, mode);
  s.notes["period"] = s.steps[0].duration;
  return s;
}

double antiblockade_flop_period(double omega, double v, AntiblockadeMode mode,
                                double v_factor) {
  const double tn = nominal_period(omega, v, mode);
  const double window = 0.75 * tn;
  PulseSchedule s = antiblockade_model(omega, v, mode, v_factor, window);
  const int n = 30000;
  const Vec psi0 = basis_vec(s.basis.dim(), s.basis.index_of({"1", "1"}));
  auto tr = sample_trajectory(s, psi0, n);
  const int rr = s.basis.index_of({"r", "r"});
  std::size_t best = 0;
  for (std::size_t j = 1; j < tr.states.size(); ++j)
    if (std::norm(tr.states[j](rr)) > std::norm(tr.states[best](rr))) best = j;
  double t = tr.times[best];
  if (best > 0 && best + 1 < tr.states.size()) {
    double y0 = std::norm(tr.states[best - 1](rr)), y1 = std::norm(tr.states[best](rr)),
           y2 = std::norm(tr.states[best + 1](rr));
    double den = y0 - 2 * y1 + y2;
    if (den != 0.0) t += 0.5 * (y0 - y2) / den * (tr.times[best + 1] - tr.times[best]);
  }
  return 2.0 * t;
}

double antiblockade_mean_transfer(double omega, double v, double v_factor,
                                  double periods) {
  const double tn = nominal_period(omega, v, AntiblockadeMode::DetuningMatch);
  PulseSchedule s =
      antiblockade_model(omega, v, AntiblockadeMode::DetuningMatch, v_factor, 1.0);
  HamiltonianModel h = s.step_model(0, {}, false);
  EigResult e = eig_hermitian(h.static_part());
  const int rr = s.basis.index_of({"r", "r"});
  Vec c = e.vectors.adjoint() * basis_vec(s.basis.dim(), s.basis.index_of({"1", "1"}));
  const int n = 400000;
  const double T = periods * tn;
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    double t = (j + 0.5) * T / n;
    cplx a = 0.0;
    for (Eigen::Index k = 0; k < c.size(); ++k)
      a += e.vectors(rr, k) * std::exp(-kI * e.values(k) * t) * c(k);
    acc += std::norm(a);
  }
  return 2.0 * acc / n;
}

double antiblockade_offmatch_prediction(double omega, double v, double v_factor) {
  const double d = 0.5 * v;
  const double g = std::sqrt(2.0) * omega / 2.0;
  const double ea = 0.0, em = -d, eb = -2.0 * d + v * v_factor;
  const double hab = g * g / 2.0 * (1.0 / (ea - em) + 1.0 / (eb - em));
  const double sa = g * g / (ea - em), sb = g * g / (eb - em);
  const double dd = (eb + sb) - (ea + sa);
  return 4 * hab * hab / (4 * hab * hab + dd * dd);
}

// ---- wait-phase gate ---------------------------------------------------

PulseSchedule wait_phase_gate(double omega, double v, double phi) {
  if (!(omega > 0.0)) throw std::invalid_argument("wait_phase_gate: Omega must be > 0");
  if (v == 0.0) throw std::invalid_argument("wait_phase_gate: V must be nonzero");
  PulseSchedule s;
  s.protocol = "wait_phase_gate";
  s.basis = ProductBasis({{"0", "1", "r"}, {"0", "1", "r"}});
  s.interaction = Mat::Zero(s.basis.dim(), s.basis.dim());
  detail::add_pair_shift(s.interaction, s.basis, 0, "r", 1, "r", v);
  const double tpi = kPi / omega;
  const double wait = std::abs(phi / v);
  s.steps.push_back(step("pi_both", tpi, {drive(0, "1", "r", omega), drive(1, "1", "r", omega)}));
  s.steps.push_back(step("wait", wait, {}));
  s.steps.push_back(step("pi_both", tpi, {drive(0, "1", "r", omega), drive(1, "1", "r", omega)}));
  s.computational = detail::two_qubit_inputs(s.basis);
  s.ideal = diag4(1, -1, -1, std::exp(-kI * v * wait));
  s.notes["wait"] = wait;
  s.notes["target_phase"] = -v * wait;
  return s;
}

}  // namespace rydgate
