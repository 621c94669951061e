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

#include <iosfwd>
#include <string>
#include <vector>

#include "rydgate/qcore.hpp"

namespace rydgate {

// <j1 m1; j2 m2 | J M>, Condon-Shortley phase. Arguments are integers or
// half-integers. Evaluated exactly (rational arithmetic) then rounded.
double clebsch_gordan(double j1, double m1, double j2, double m2, double J,
                      double M);

// sqrt(4 pi / 5) Y_{2M}(theta, phi).
cplx spherical_tensor_rank2(int m, double theta, double phi);

struct AtomQN {
  int n = 0;
  int l = 0;
  double j = 0.5;
  double m = 0.5;
};

struct PairQN {
  AtomQN a;
  AtomQN b;
};

// Dipole channel between a bra pair (A, B) and a ket pair (a, b).
// Reduced elements in e*a0, defect E(a)+E(b)-E(A)-E(B) in rad/us.
struct ChannelSpec {
  PairQN bra;
  PairQN ket;
  double reduced_a = 0.0;
  double reduced_b = 0.0;
  double defect = 0.0;
};

struct Geometry {
  double L = 1.0;  // um
  double theta = 0.0;
  double phi = 0.0;
};

// (e a0)^2 / (4 pi eps0 um^3) expressed as an angular frequency in rad/us.
double dipole_unit_rad_per_us();

// Full rank-2 contraction of the two dipole operators, rad/us.
cplx dipole_dipole_element(const ChannelSpec& ch, const Geometry& g);

// Second-order effective interaction on the degenerate manifold
// `pair_states`. Each channel couples manifold states with the bra (n,l,j)
// to every Zeeman sublevel of the ket (n,l,j); the m values stored in the
// channel are ignored here.
Mat vdw_matrix(const std::vector<PairQN>& pair_states,
               const std::vector<ChannelSpec>& channels, const Geometry& g);

enum class InteractionKind { VdwC6, DipoleC3 };

// 2 pi * C / L^n with C in GHz um^n, returned in rad/us.
double interaction_at(InteractionKind kind, double coefficient, double L);

// Shipped interaction matrices in units of h * GHz * um^6 / L^6.
struct VdwFixture {
  std::string name;
  std::vector<std::string> basis;
  double theta = 0.0;
  Eigen::MatrixXd matrix;
};

const std::vector<VdwFixture>& vdw_fixtures();
const VdwFixture& vdw_fixture(const std::string& name);
// Fixture converted to rad/us at separation L (um).
Mat fixture_at(const VdwFixture& f, double L);

// Tabular channel list. One channel per non-comment row, whitespace
// separated columns:
//   nA lA jA mA nB lB jB mB na la ja ma nb lb jb mb red_a red_b defect_MHz
// Lines starting with '#' are comments. The defect column is in MHz and is
// multiplied by 2 pi on ingestion.
std::vector<ChannelSpec> read_channel_table(std::istream& in);
void write_channel_table(std::ostream& out,
                         const std::vector<ChannelSpec>& channels);

}  // namespace rydgate
