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

#include "rydgate/ham.hpp"

#include <cmath>
#include <sstream>

namespace rydgate {

ProductBasis::ProductBasis(std::vector<std::vector<std::string>> levels)
    : levels_(std::move(levels)) {
  if (levels_.empty()) throw std::invalid_argument("ProductBasis: no atoms");
  strides_.assign(levels_.size(), 1);
  dim_ = 1;
  for (int a = n_atoms() - 1; a >= 0; --a) {
    if (levels_[a].empty())
      throw std::invalid_argument("ProductBasis: atom without levels");
    strides_[a] = dim_;
    dim_ *= static_cast<int>(levels_[a].size());
  }
}

int ProductBasis::level_count(int atom) const {
  return static_cast<int>(levels(atom).size());
}

const std::vector<std::string>& ProductBasis::levels(int atom) const {
  if (atom < 0 || atom >= n_atoms())
    throw std::invalid_argument("ProductBasis: atom index out of range");
  return levels_[atom];
}

int ProductBasis::level_index(int atom, const std::string& name) const {
  const auto& lv = levels(atom);
  for (std::size_t k = 0; k < lv.size(); ++k)
    if (lv[k] == name) return static_cast<int>(k);
  std::ostringstream os;
  os << "unknown level label '" << name << "' on atom " << atom;
  throw std::invalid_argument(os.str());
}

int ProductBasis::index(const std::vector<int>& digits) const {
  if (static_cast<int>(digits.size()) != n_atoms())
    throw std::invalid_argument("ProductBasis: wrong digit count");
  int idx = 0;
  for (int a = 0; a < n_atoms(); ++a) {
    if (digits[a] < 0 || digits[a] >= level_count(a))
      throw std::invalid_argument("ProductBasis: level out of range");
    idx += digits[a] * strides_[a];
  }
  return idx;
}

int ProductBasis::index_of(const std::vector<std::string>& names) const {
  if (static_cast<int>(names.size()) != n_atoms())
    throw std::invalid_argument("ProductBasis: wrong label count");
  std::vector<int> d(names.size());
  for (int a = 0; a < n_atoms(); ++a) d[a] = level_index(a, names[a]);
  return index(d);
}

std::vector<int> ProductBasis::digits(int idx) const {
  std::vector<int> d(n_atoms());
  for (int a = 0; a < n_atoms(); ++a) {
    d[a] = idx / strides_[a];
    idx %= strides_[a];
  }
  return d;
}

std::string ProductBasis::label(int idx) const {
  auto d = digits(idx);
  std::string s = "|";
  for (int a = 0; a < n_atoms(); ++a) {
    if (a) s += ",";
    s += levels_[a][d[a]];
  }
  return s + ">";
}

Mat ProductBasis::single_op(int atom, int upper, int lower) const {
  Mat m = Mat::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    auto d = digits(i);
    if (d[atom] != lower) continue;
    d[atom] = upper;
    m(index(d), i) = 1.0;
  }
  return m;
}

Mat ProductBasis::projector(int atom, int level) const {
  Mat m = Mat::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    if (digits(i)[atom] == level) m(i, i) = 1.0;
  return m;
}

void add_drive(HamiltonianModel& h, const ProductBasis& basis,
               const DriveSpec& d) {
  int u = basis.level_index(d.atom, d.upper);
  int l = basis.level_index(d.atom, d.lower);
  if (!d.rabi.is_zero())
    h.add_term(0.5 * basis.single_op(d.atom, u, l), d.rabi, true);
  if (!d.detuning.is_zero())
    h.add_term(0.5 * basis.projector(d.atom, u), d.detuning, true);
}

LabeledModel one_photon(cplx rabi, const std::vector<std::string>& levels,
                        const std::string& lower, const std::string& upper) {
  ProductBasis b({levels});
  HamiltonianModel h(b.dim());
  DriveSpec d;
  d.lower = lower;
  d.upper = upper;
  d.rabi = Envelope(rabi);
  add_drive(h, b, d);
  return {b, h};
}

LabeledModel two_photon_full(const TwoPhotonSpec& s) {
  ProductBasis b({{"g", "p", "r"}});
  HamiltonianModel h(3);
  h.add_coupling(1, 0, s.omega1);
  h.add_coupling(2, 1, s.omega2);
  Mat diag = Mat::Zero(3, 3);
  diag(0, 0) = s.stark_g;
  diag(1, 1) = s.delta;
  diag(2, 2) = s.stark_r;
  h.add_static(diag);
  return {b, h};
}

EffectiveDrive adiabatic_eliminate(const TwoPhotonSpec& s) {
  if (s.delta == 0.0)
    throw std::invalid_argument(
        "adiabatic_eliminate: zero intermediate detuning, elimination undefined");
  EffectiveDrive e;
  e.rabi = -s.omega1 * s.omega2 / (2.0 * s.delta);
  e.detuning_r = -s.omega2 * s.omega2 / (4.0 * s.delta) + s.stark_r;
  e.detuning_g = -s.omega1 * s.omega1 / (4.0 * s.delta) + s.stark_g;
  e.validity = std::max(std::abs(s.omega1), std::abs(s.omega2)) /
               std::abs(s.delta);
  return e;
}

LabeledModel two_photon_effective(const TwoPhotonSpec& s) {
  EffectiveDrive e = adiabatic_eliminate(s);
  ProductBasis b(std::vector<std::vector<std::string>>{{"g", "r"}});
  HamiltonianModel h(2);
  h.add_coupling(1, 0, e.rabi);
  Mat diag = Mat::Zero(2, 2);
  diag(0, 0) = e.detuning_g;
  diag(1, 1) = e.detuning_r;
  h.add_static(diag);
  return {b, h};
}

double stark_shift_rydberg(double e_charge, double m_e, double hbar, double e1,
                           double w1, double e2, double w2) {
  return -e_charge * e_charge / (4.0 * m_e * hbar) *
         (e1 * e1 / (w1 * w1) + e2 * e2 / (w2 * w2));
}

double stark_shift_ground(double alpha1, double e1, double alpha2, double e2,
                          double hbar) {
  return -(alpha1 * e1 * e1 + alpha2 * e2 * e2) / (4.0 * hbar);
}

double intermediate_scatter_estimate(double tau_p, double delta) {
  return kPi / (2.0 * tau_p * std::abs(delta));
}

LabeledModel pair_blockade(Envelope omega_c, Envelope omega_t, double delta,
                           double v) {
  ProductBasis b({{"0", "1", "r"}, {"0", "1", "r"}});
  HamiltonianModel h(b.dim());
  for (int a = 0; a < 2; ++a) {
    DriveSpec d;
    d.atom = a;
    d.lower = "1";
    d.upper = "r";
    d.rabi = a == 0 ? omega_c : omega_t;
    d.detuning = delta;
    add_drive(h, b, d);
  }
  Mat vm = Mat::Zero(b.dim(), b.dim());
  int rr = b.index_of({"r", "r"});
  vm(rr, rr) = v;
  h.add_static(vm);
  return {b, h};
}

LabeledModel tsd_three_state(double omega_c, double omega_t) {
  ProductBasis b({{"1r", "r1", "r0", "11", "10"}});
  Mat m = Mat::Zero(5, 5);
  m(0, 3) = omega_t;
  m(0, 4) = omega_t;
  m(1, 3) = omega_c;
  m(2, 4) = omega_c;
  m = 0.5 * (m + m.transpose()).eval();
  HamiltonianModel h(5);
  h.add_static(m);
  return {b, h};
}

LabeledModel dark_state_forster(Envelope omega, double v) {
  ProductBasis b({{"r1 1", "r1 r2", "r3 r4"}});
  HamiltonianModel h(3);
  h.add_coupling(1, 0, std::move(omega));
  Mat m = Mat::Zero(3, 3);
  m(1, 2) = v;
  m(2, 1) = v;
  h.add_static(m);
  return {b, h};
}

LabeledModel modulated_drive_effective(double omega_m, double omega) {
  ProductBasis b(std::vector<std::vector<std::string>>{{"1", "r"}});
  HamiltonianModel h(2);
  h.add_coupling(1, 0, omega_m / 2.0);
  Mat m = Mat::Zero(2, 2);
  m(1, 1) = omega;
  h.add_static(m);
  return {b, h};
}

}  // namespace rydgate
