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

// Hand-rolled generators for the property tests.

#pragma once

#include <random>

#include "rydgate/qcore.hpp"

namespace rydgate::test {

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  Mat complex_matrix(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = cplx(normal(), normal());
    return m;
  }
  Mat hermitian(int n, double scale = 1.0) {
    Mat a = complex_matrix(n);
    return scale * 0.5 * (a + a.adjoint());
  }
  Mat unitary(int n) {
    Eigen::HouseholderQR<Mat> qr(complex_matrix(n));
    return qr.householderQ();
  }
  Vec state(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = cplx(normal(), normal());
    return v.normalized();
  }
  // Random mixed state of rank `rank` (Wishart style).
  Mat density(int n, int rank = -1) {
    if (rank < 1) rank = n;
    Mat g(n, rank);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < rank; ++j) g(i, j) = cplx(normal(), normal());
    Mat rho = g * g.adjoint();
    return rho / rho.trace().real();
  }
};

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace rydgate::test
