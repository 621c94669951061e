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

// Helpers shared by the protocol builders. Not installed.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rydgate/protocols.hpp"

namespace rydgate::detail {

inline DriveSpec drive(int atom, std::string lower, std::string upper,
                       Envelope rabi, Envelope detuning = 0.0,
                       bool to_rydberg = true) {
  DriveSpec d;
  d.atom = atom;
  d.lower = std::move(lower);
  d.upper = std::move(upper);
  d.rabi = std::move(rabi);
  d.detuning = std::move(detuning);
  d.to_rydberg = to_rydberg;
  if (to_rydberg) d.k_eff = kDefaultKeff;
  return d;
}

inline Step step(std::string label, double duration, std::vector<DriveSpec> drives) {
  Step s;
  s.label = std::move(label);
  s.duration = duration;
  s.drives = std::move(drives);
  return s;
}

// |00>, |01>, |10>, |11> in a two-atom basis.
inline std::vector<int> two_qubit_inputs(const ProductBasis& b) {
  return {b.index_of({"0", "0"}), b.index_of({"0", "1"}),
          b.index_of({"1", "0"}), b.index_of({"1", "1"})};
}

inline Mat diag4(cplx a, cplx b, cplx c, cplx d) {
  Vec v(4);
  v << a, b, c, d;
  return v.asDiagonal();
}

inline Mat cnot() {
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(3, 2) = 1.0;
  m(2, 3) = 1.0;
  return m;
}

// Diagonal pair energy: v for every basis state whose atom a sits in level
// la and atom b in lb.
inline void add_pair_shift(Mat& m, const ProductBasis& b, int a, const std::string& la,
                           int bb, const std::string& lb, double v) {
  int ia = b.level_index(a, la), ib = b.level_index(bb, lb);
  for (int i = 0; i < b.dim(); ++i) {
    auto d = b.digits(i);
    if (d[a] == ia && d[bb] == ib) m(i, i) += v;
  }
}

inline bool is_rydberg_label(const std::string& s) {
  return !s.empty() && (s[0] == 'r' || s[0] == 's' || s[0] == 'p');
}

}  // namespace rydgate::detail
