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

#include <doctest.h>

#include "rydgate/metrics.hpp"
#include "rydgate/protocols.hpp"
#include "support.hpp"

using namespace rydgate;
using rydgate::test::Gen;

namespace {

Mat diag4(cplx a, cplx b, cplx c, cplx d) {
  Mat m = Mat::Zero(4, 4);
  m.diagonal() << a, b, c, d;
  return m;
}

Mat cnot() {
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(3, 2) = m(2, 3) = 1.0;
  return m;
}

}  // namespace

TEST_CASE("state_fidelity basics") {
  Gen g(1);
  Mat rho = g.density(4);
  CHECK(state_fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-10));
  Mat bell = pure_density(bell_state("phi+"));
  CHECK(state_fidelity(Mat::Identity(4, 4) / 4.0, bell) == doctest::Approx(0.25).epsilon(1e-12));

  // Commuting pair: classical Bhattacharyya coefficient squared.
  Eigen::VectorXd p(4), q(4);
  p << 0.1, 0.2, 0.3, 0.4;
  q << 0.25, 0.25, 0.4, 0.1;
  double bc = 0.0;
  for (int i = 0; i < 4; ++i) bc += std::sqrt(p(i) * q(i));
  Mat a = p.cast<cplx>().asDiagonal(), b = q.cast<cplx>().asDiagonal();
  CHECK(std::abs(state_fidelity(a, b) - bc * bc) < 1e-10);

  Mat bad = rho * 1.1;
  CHECK_THROWS(state_fidelity(bad, rho));
  CHECK_THROWS(trace_distance_fidelity(rho, bad));
}

TEST_CASE("state_fidelity is symmetric and Fuchs-van de Graaf holds") {
  Gen g(2);
  for (int i = 0; i < 100; ++i) {
    const int n = i % 2 ? 4 : 2;
    Mat r = g.density(n, g.integer(1, n)), s = g.density(n, g.integer(1, n));
    const double f = state_fidelity(r, s), f2 = state_fidelity(s, r);
    const double dist = 1.0 - trace_distance_fidelity(r, s);
    CHECK(std::abs(f - f2) < 1e-10);
    CHECK(f >= -1e-12);
    CHECK(f <= 1 + 1e-12);
    CHECK(dist >= -1e-12);
    CHECK(dist <= 1 + 1e-12);
    CHECK(1 - std::sqrt(f) <= dist + 1e-9);
    CHECK(dist <= std::sqrt(std::max(0.0, 1 - f)) + 1e-9);
  }
}

TEST_CASE("trace_distance_fidelity and dephasing") {
  Mat a = pure_density(basis_vec(2, 0)), b = pure_density(basis_vec(2, 1));
  CHECK(std::abs(trace_distance_fidelity(a, b)) < 1e-12);
  CHECK(trace_distance_fidelity(a, a) == doctest::Approx(1.0));

  // Off-diagonals halved: both give 3/4. For a pure target 1 - D <= F
  // always, so the distance measure never scores higher.
  Mat bell = pure_density(bell_state("phi+"));
  Mat deph = bell;
  deph(0, 3) *= 0.5;
  deph(3, 0) *= 0.5;
  CHECK(state_fidelity(deph, bell) == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(trace_distance_fidelity(deph, bell) == doctest::Approx(0.75).epsilon(1e-10));
  Gen g(3);
  for (int i = 0; i < 50; ++i) {
    Mat r = g.density(4);
    Mat t = pure_density(g.state(4));
    CHECK(trace_distance_fidelity(r, t) <= state_fidelity(r, t) + 1e-10);
  }
  // A small coherent phase error: 1 - F is second order, D first order.
  const double e = 0.01;
  Vec tilted = (bell_state("phi+") * std::cos(e) + bell_state("phi-") * std::sin(e));
  Mat rt = pure_density(tilted);
  CHECK(1 - state_fidelity(rt, bell) == doctest::Approx(e * e).epsilon(1e-3));
  CHECK(1 - trace_distance_fidelity(rt, bell) == doctest::Approx(e).epsilon(1e-3));
}

TEST_CASE("truth tables") {
  TruthTable tc = truth_table(cnot());
  CHECK(truth_table_fidelity(tc, tc) == doctest::Approx(1.0));
  Mat cz = diag4(1, 1, 1, -1);
  CHECK(truth_table_fidelity(truth_table(cz), tc) == doctest::Approx(0.5));
  // Phases are invisible to the table.
  Gen g(4);
  Mat phased = cnot() * diag4(std::polar(1.0, g.uniform(0, 6)), std::polar(1.0, g.uniform(0, 6)),
                              std::polar(1.0, g.uniform(0, 6)), std::polar(1.0, g.uniform(0, 6)));
  CHECK(truth_table_fidelity(truth_table(phased), tc) == doctest::Approx(1.0).epsilon(1e-14));
  // Row convention: row k is the output distribution of input k.
  CHECK(tc(2, 3) == doctest::Approx(1.0));
  CHECK(tc.rowwise().sum().isApproxToConstant(1.0, 1e-14));
}

TEST_CASE("pedersen fidelity") {
  CHECK(pedersen_fidelity(diag4(1, 1, 1, -1), Mat::Identity(4, 4)) == doctest::Approx(0.4).epsilon(1e-14));
  Gen g(5);
  Mat u = g.unitary(4);
  CHECK(pedersen_fidelity(u, u) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pedersen_fidelity(std::polar(1.0, 1.234) * u, u) == doctest::Approx(1.0).epsilon(1e-12));
  // Leakage lowers it.
  Mat leaky = u;
  leaky.col(2) *= std::sqrt(0.9);
  CHECK(pedersen_fidelity(leaky, u) < 1.0 - 1e-3);
  for (int i = 0; i < 50; ++i) {
    double f = pedersen_fidelity(g.complex_matrix(4) / 4.0, g.unitary(4));
    CHECK(f >= 0.0);
  }
  // Local Z alignment removes single-qubit phases.
  Mat local = diag4(1, std::polar(1.0, 0.3), std::polar(1.0, -0.7), std::polar(1.0, -0.4)) *
              diag4(1, 1, 1, -1);
  Mat ideal = diag4(1, 1, 1, -1);
  CHECK(pedersen_fidelity(local, ideal) < 0.99);
  CHECK(pedersen_fidelity(local, align_local_z(local, ideal)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("nielsen fidelity") {
  Gen g(6);
  Mat u = g.unitary(4);
  CHECK(nielsen_fidelity(unitary_channel(u), u, 2) == doctest::Approx(1.0).epsilon(1e-10));
  Channel dep = [](const Mat& x) -> Mat {
    return x.trace() * Mat::Identity(x.rows(), x.cols()) / double(x.rows());
  };
  CHECK(nielsen_fidelity(dep, Mat::Identity(4, 4), 2) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(nielsen_fidelity(dep, Mat::Identity(2, 2), 1) == doctest::Approx(0.5).epsilon(1e-12));
  for (int i = 0; i < 20; ++i) {
    Mat a = g.unitary(4), b = g.unitary(4);
    CHECK(std::abs(nielsen_fidelity(unitary_channel(a), b, 2) - pedersen_fidelity(a, b)) < 1e-10);
  }
  for (double phi : {0.0, 0.1, 1.0, kPi}) {
    Mat v = diag4(1, 1, 1, std::polar(1.0, phi));
    Mat cz = diag4(1, 1, 1, -1);
    CHECK(std::abs(nielsen_fidelity(unitary_channel(v), cz, 2) - pedersen_fidelity(v, cz)) < 1e-10);
  }
  Channel grow = [](const Mat& x) -> Mat { return 2.0 * x; };
  CHECK_THROWS(nielsen_fidelity(grow, Mat::Identity(4, 4), 2));
}

TEST_CASE("bell fidelity") {
  CHECK(bell_fidelity(bell_state("phi+"), "phi+") == doctest::Approx(1.0));
  CHECK(bell_fidelity(basis_vec(4, 0), "phi+") == doctest::Approx(0.5));
  CHECK(bell_fidelity(basis_vec(4, 0), "psi-") == doctest::Approx(0.0));
  CHECK(bell_fidelity(pure_density(bell_state("psi+")), "psi+") == doctest::Approx(1.0));
  for (const char* a : {"phi+", "phi-", "psi+", "psi-"})
    for (const char* b : {"phi+", "phi-", "psi+", "psi-"})
      CHECK(bell_fidelity(bell_state(a), b) == doctest::Approx(std::string(a) == b ? 1.0 : 0.0));
  CHECK_THROWS(bell_state("omega"));
  CHECK_THROWS(bell_fidelity(basis_vec(4, 0), "ghz"));
}

TEST_CASE("psd_sqrt clips small negative eigenvalues") {
  Gen g(7);
  Mat r = g.density(4, 2);
  Mat s = psd_sqrt(r);
  CHECK((s * s - r).cwiseAbs().maxCoeff() < 1e-10);
  Mat neg = r;
  neg(0, 0) -= 1e-13;
  CHECK(psd_sqrt(neg).allFinite());
}
