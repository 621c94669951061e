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

using detail::drive;
using detail::step;

PulseSchedule ghz_asymmetric(int n, double omega, double v_ss, double v_sp,
                             double v_pp) {
  if (n < 2) throw std::invalid_argument("ghz_asymmetric: N >= 2");
  if (!(omega > 0.0)) throw std::invalid_argument("ghz_asymmetric: Omega must be > 0");
  double dim = std::pow(4.0, n);
  if (dim > kGhzMaxDim) {
    std::ostringstream os;
    os << "ghz_asymmetric: Hilbert dimension 4^" << n << " = " << dim
       << " exceeds the limit " << kGhzMaxDim;
    throw std::invalid_argument(os.str());
  }
  PulseSchedule s;
  s.protocol = "ghz_asymmetric";
  s.basis = ProductBasis(std::vector<std::vector<std::string>>(
      n, std::vector<std::string>{"0", "1", "s", "p"}));
  s.interaction = Mat::Zero(s.basis.dim(), s.basis.dim());
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      detail::add_pair_shift(s.interaction, s.basis, a, "s", b, "s", v_ss);
      detail::add_pair_shift(s.interaction, s.basis, a, "s", b, "p", v_sp);
      detail::add_pair_shift(s.interaction, s.basis, a, "p", b, "s", v_sp);
      detail::add_pair_shift(s.interaction, s.basis, a, "p", b, "p", v_pp);
    }
  }
  const double t_coll = kPi / (std::sqrt(static_cast<double>(n)) * omega);
  std::vector<DriveSpec> half, ladder, full;
  for (int a = 0; a < n; ++a) {
    half.push_back(drive(a, "0", "s", 0.5 * omega));
    ladder.push_back(drive(a, "0", "p", omega));
    ladder.push_back(drive(a, "1", "p", omega));
    full.push_back(drive(a, "0", "s", omega));
  }
  s.steps.push_back(step("collective_half", t_coll, half));
  s.steps.push_back(step("ladder", std::sqrt(2.0) * kPi / omega, ladder));
  s.steps.push_back(step("collective_pi", t_coll, full));
  std::vector<std::string> zeros(n, "0"), ones(n, "1");
  const int i0 = s.basis.index_of(zeros), i1 = s.basis.index_of(ones);
  s.initial_state = basis_vec(s.basis.dim(), i0);
  s.ideal_state = Vec::Zero(s.basis.dim());
  s.ideal_state(i0) = -1.0 / std::sqrt(2.0);
  s.ideal_state(i1) = (n % 2 ? -1.0 : 1.0) / std::sqrt(2.0);
  s.notes["nominal_duration"] = kPi / omega * (2.0 / std::sqrt(double(n)) + std::sqrt(2.0));
  return s;
}

PulseSchedule ensemble_adiabatic_excitation(int n, Envelope omega, Envelope delta,
                                            double duration) {
  if (n < 1) throw std::invalid_argument("ensemble: N >= 1");
  if (!(duration > 0.0)) throw std::invalid_argument("ensemble: duration must be > 0");
  PulseSchedule s;
  s.protocol = "ensemble_adiabatic_excitation";
  s.basis = ProductBasis(std::vector<std::vector<std::string>>{{"g", "R"}});
  s.interaction = Mat::Zero(2, 2);
  const double sq = std::sqrt(static_cast<double>(n));
  s.steps.push_back(step("sweep", duration, {drive(0, "g", "R", omega.scaled(sq), delta)}));
  s.initial_state = basis_vec(2, 0);
  s.ideal_state = basis_vec(2, 1);
  // Adiabaticity diagnostics on a uniform grid.
  const int m = 2000;
  const double h = duration / m;
  double worst_o = 0.0, worst_d = 0.0;
  for (int j = 1; j < m; ++j) {
    double t = j * h;
    double o = sq * std::abs(omega(t)), d = delta(t).real();
    double dodt = sq * (std::abs(omega(t + h)) - std::abs(omega(t - h))) / (2 * h);
    double dddt = (delta(t + h).real() - delta(t - h).real()) / (2 * h);
    double gap = std::sqrt(o * o + d * d);
    if (gap > 0.0) {
      worst_o = std::max(worst_o, std::abs(dodt) / gap);
      worst_d = std::max(worst_d, std::abs(dddt) / gap);
    }
  }
  s.notes["adiabatic_omega"] = worst_o;
  s.notes["adiabatic_delta"] = worst_d;
  return s;
}

PulseSchedule ensemble_default_sweep(int n, const EnsembleSweep& p) {
  const double T = p.duration, sg = p.sigma_fraction * T, o0 = p.omega0, d0 = p.delta0;
  auto om = Envelope::real([=](double t) {
    double c = t - 0.5 * T;
    return o0 * std::exp(-c * c / (2 * sg * sg));
  });
  auto de = Envelope::real([=](double t) { return d0 * (1.0 - 2.0 * t / T); });
  return ensemble_adiabatic_excitation(n, om, de, T);
}

PulseSchedule swept_forster_transfer(double v, Envelope defect, double duration,
                                     int sweeps) {
  if (!(duration >= 0.0)) throw std::invalid_argument("forster: duration must be >= 0");
  if (sweeps < 1) throw std::invalid_argument("forster: sweeps >= 1");
  PulseSchedule s;
  s.protocol = "swept_forster_transfer";
  s.basis = ProductBasis(std::vector<std::vector<std::string>>{{"r1r2", "r3r4"}});
  s.interaction = Mat::Zero(2, 2);
  s.interaction(0, 1) = v;
  s.interaction(1, 0) = v;
  Mat p1 = Mat::Zero(2, 2);
  p1(1, 1) = 1.0;
  for (int k = 0; k < sweeps; ++k) {
    Step st;
    st.label = k % 2 ? "sweep_back" : "sweep";
    st.duration = duration;
    Envelope e = defect;
    if (k % 2) e = Envelope([defect, duration](double t) { return defect(duration - t); });
    st.terms.push_back({p1, e, false});
    s.steps.push_back(st);
  }
  s.initial_state = basis_vec(2, 0);
  s.ideal_state = basis_vec(2, sweeps % 2);
  return s;
}

PulseSchedule swept_forster_linear(double v, double d0, double duration, int sweeps) {
  if (duration == 0.0) {
    // Sudden limit: the defect jumps, nothing happens in zero time.
    return swept_forster_transfer(v, Envelope(d0), 0.0, sweeps);
  }
  auto e = Envelope::real([d0, duration](double t) { return d0 * (1.0 - 2.0 * t / duration); });
  return swept_forster_transfer(v, e, duration, sweeps);
}

}  // namespace rydgate
