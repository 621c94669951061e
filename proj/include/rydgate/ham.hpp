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

#include <optional>
#include <string>
#include <vector>

#include "rydgate/qcore.hpp"

namespace rydgate {

// Product basis over atoms with named levels. Atom 0 is the most
// significant digit, so |c t> has index c * n_t + t.
class ProductBasis {
 public:
  ProductBasis() = default;
  explicit ProductBasis(std::vector<std::vector<std::string>> levels);

  int dim() const { return dim_; }
  int n_atoms() const { return static_cast<int>(levels_.size()); }
  int level_count(int atom) const;
  const std::vector<std::string>& levels(int atom) const;
  int level_index(int atom, const std::string& name) const;
  int index(const std::vector<int>& digits) const;
  int index_of(const std::vector<std::string>& names) const;
  std::vector<int> digits(int idx) const;
  std::string label(int idx) const;

  // |upper><lower| acting on one atom, embedded in the product space.
  Mat single_op(int atom, int upper, int lower) const;
  // Projector on basis states where `atom` sits in `level`.
  Mat projector(int atom, int level) const;

 private:
  std::vector<std::vector<std::string>> levels_;
  std::vector<int> strides_;
  int dim_ = 0;
};

// Model plus the basis it lives on.
struct LabeledModel {
  ProductBasis basis;
  HamiltonianModel h;
};

// One optical or microwave drive on one atom. Detuning is added to the
// upper level energy: H = (rabi/2)|u><l| + h.c. + detuning |u><u|.
struct DriveSpec {
  int atom = 0;
  std::string lower;
  std::string upper;
  Envelope rabi;
  Envelope detuning;
  // Signed effective wavevector along the drive axis (rad/um). Required by
  // Doppler sampling for drives into Rydberg levels.
  std::optional<double> k_eff;
  bool to_rydberg = true;
};

void add_drive(HamiltonianModel& h, const ProductBasis& basis,
               const DriveSpec& d);

struct TwoPhotonSpec {
  double omega1 = 0.0;  // g <-> p
  double omega2 = 0.0;  // p <-> r
  double delta = 0.0;   // intermediate detuning, on p
  double stark_r = 0.0;
  double stark_g = 0.0;
};

struct EffectiveDrive {
  double rabi = 0.0;         // -Omega1 Omega2 / (2 Delta)
  double detuning_r = 0.0;   // -Omega2^2/(4 Delta) + stark_r
  double detuning_g = 0.0;   // -Omega1^2/(4 Delta) + stark_g
  double validity = 0.0;     // max(|Omega1|, |Omega2|) / |Delta|
};

LabeledModel one_photon(cplx rabi, const std::vector<std::string>& levels = {"g", "r"},
                        const std::string& lower = "g",
                        const std::string& upper = "r");

LabeledModel two_photon_full(const TwoPhotonSpec& spec);

EffectiveDrive adiabatic_eliminate(const TwoPhotonSpec& spec);

// Effective two-level model {g, r} from the eliminated drive.
LabeledModel two_photon_effective(const TwoPhotonSpec& spec);

// Light shifts from field amplitudes. All constants are explicit so the
// caller picks the unit system; results are angular frequencies.
double stark_shift_rydberg(double e_charge, double m_e, double hbar,
                           double e1, double w1, double e2, double w2);
double stark_shift_ground(double alpha1, double e1, double alpha2, double e2,
                          double hbar);

// Scattering probability of a pi pulse through the intermediate level.
double intermediate_scatter_estimate(double tau_p, double delta);

// Two atoms with levels {0, 1, r}; both drives act on 1 <-> r with common
// detuning `delta` on r, and V on |rr>.
LabeledModel pair_blockade(Envelope omega_c, Envelope omega_t, double delta,
                           double v);

// 5x5 model over {|1r>, |r1>, |r0>, |11>, |10>} (|rr> removed).
LabeledModel tsd_three_state(double omega_c, double omega_t);

// {|r1 1>, |r1 r2>, |r3 r4>} with Omega(t)/2 on the first pair and V on the
// second.
LabeledModel dark_state_forster(Envelope omega, double v);

// (Omega_m/4)|r><1| + h.c. + omega |r><r| over {1, r}.
LabeledModel modulated_drive_effective(double omega_m, double omega);

}  // namespace rydgate
