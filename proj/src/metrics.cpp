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

#include "rydgate/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

namespace rydgate {

void check_density(const Mat& rho, const char* who) {
  if (rho.rows() == 0 || rho.rows() != rho.cols()) {
    std::ostringstream os;
    os << who << ": density matrix must be square and non-empty";
    throw std::invalid_argument(os.str());
  }
  if (max_asymmetry(rho) > 1e-10) {
    std::ostringstream os;
    os << who << ": density matrix not Hermitian";
    throw std::invalid_argument(os.str());
  }
  cplx tr = rho.trace();
  if (std::abs(tr - 1.0) > 1e-8) {
    std::ostringstream os;
    os << who << ": trace " << tr.real() << " differs from 1";
    throw std::invalid_argument(os.str());
  }
  RVec ev = eig_hermitian(rho, 1e-10).values;
  if (ev.minCoeff() < -1e-8) {
    std::ostringstream os;
    os << who << ": negative eigenvalue " << ev.minCoeff();
    throw std::invalid_argument(os.str());
  }
}

Mat psd_sqrt(const Mat& a) {
  EigResult e = eig_hermitian(a, 1e-9);
  RVec s(e.values.size());
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    double v = e.values(k);
    if (v < -1e-12) v = -1e-12;
    s(k) = std::sqrt(std::max(v, 0.0));
  }
  return e.vectors * s.cast<cplx>().asDiagonal() * e.vectors.adjoint();
}

Mat pure_density(const Vec& psi) { return psi * psi.adjoint(); }

double state_fidelity(const Mat& rho, const Mat& rho_id) {
  check_density(rho, "state_fidelity");
  check_density(rho_id, "state_fidelity");
  if (rho.rows() != rho_id.rows())
    throw std::invalid_argument("state_fidelity: dimension mismatch");
  // Tr sqrt(sqrt(b) a sqrt(b)) is the trace norm of sqrt(a) sqrt(b). Taking
  // singular values directly keeps the result symmetric in its arguments.
  Mat prod = psd_sqrt(rho) * psd_sqrt(rho_id);
  Eigen::JacobiSVD<Mat> svd(prod);
  double tr = svd.singularValues().sum();
  return std::clamp(tr * tr, 0.0, 1.0);
}

double trace_distance_fidelity(const Mat& rho, const Mat& rho_id) {
  check_density(rho, "trace_distance_fidelity");
  check_density(rho_id, "trace_distance_fidelity");
  if (rho.rows() != rho_id.rows())
    throw std::invalid_argument("trace_distance_fidelity: dimension mismatch");
  RVec ev = eig_hermitian(rho - rho_id, 1e-9).values;
  double d = 0.5 * ev.cwiseAbs().sum();
  return std::clamp(1.0 - d, 0.0, 1.0);
}

TruthTable truth_table(const Mat& map) {
  TruthTable t(map.cols(), map.rows());
  for (Eigen::Index in = 0; in < map.cols(); ++in)
    for (Eigen::Index out = 0; out < map.rows(); ++out)
      t(in, out) = std::norm(map(out, in));
  return t;
}

double truth_table_fidelity(const TruthTable& realized,
                            const TruthTable& ideal) {
  if (realized.rows() != ideal.rows() || realized.cols() != ideal.cols())
    throw std::invalid_argument("truth_table_fidelity: dimension mismatch");
  return (ideal.transpose() * realized).trace() /
         static_cast<double>(ideal.rows());
}

double pedersen_fidelity(const Mat& m, const Mat& u) {
  if (m.rows() != u.rows() || m.cols() != u.cols() || m.rows() != m.cols())
    throw std::invalid_argument("pedersen_fidelity: dimension mismatch");
  const double n = static_cast<double>(u.rows());
  cplx tr = (u.adjoint() * m).trace();
  double second = (u.adjoint() * m * m.adjoint() * u).trace().real();
  return (std::norm(tr) + second) / (n * (n + 1.0));
}

Mat align_local_z(const Mat& m, const Mat& u) {
  if (m.rows() != 4 || m.cols() != 4 || u.rows() != 4 || u.cols() != 4)
    throw std::invalid_argument("align_local_z: 4x4 maps expected");
  if (!u.isDiagonal(1e-12)) throw std::invalid_argument("align_local_z: ideal must be diagonal");
  auto rel = [&](int k) {
    return std::arg(m(k, k) * std::conj(u(k, k))) - std::arg(m(0, 0) * std::conj(u(0, 0)));
  };
  const double a = rel(1), b = rel(2);
  Vec d(4);
  d << 1.0, std::exp(kI * a), std::exp(kI * b), std::exp(kI * (a + b));
  return d.asDiagonal() * u;
}

namespace {

Mat pauli(int k) {
  Mat p(2, 2);
  switch (k) {
    case 0: p << 1, 0, 0, 1; break;
    case 1: p << 0, 1, 1, 0; break;
    case 2: p << 0, -kI, kI, 0; break;
    default: p << 1, 0, 0, -1; break;
  }
  return p;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

double nielsen_fidelity(const Channel& channel, const Mat& u, int n_qubits) {
  if (n_qubits < 1 || n_qubits > 6)
    throw std::invalid_argument("nielsen_fidelity: 1..6 qubits supported");
  const int n = 1 << n_qubits;
  if (u.rows() != n || u.cols() != n)
    throw std::invalid_argument("nielsen_fidelity: ideal has wrong dimension");
  // Trace growth check on the maximally mixed state.
  Mat mixed = Mat::Identity(n, n) / static_cast<double>(n);
  double tr_out = channel(mixed).trace().real();
  if (tr_out > 1.0 + 1e-9) {
    std::ostringstream os;
    os << "nielsen_fidelity: channel is not trace non-increasing (trace "
       << tr_out << ")";
    throw std::invalid_argument(os.str());
  }
  const int terms = 1 << (2 * n_qubits);
  cplx sum = 0.0;
  for (int k = 0; k < terms; ++k) {
    Mat x = Mat::Identity(1, 1);
    int code = k;
    for (int q = 0; q < n_qubits; ++q) {
      x = kron(x, pauli(code & 3));
      code >>= 2;
    }
    sum += (u * x.adjoint() * u.adjoint() * channel(x)).trace();
  }
  const double nn = n;
  return 1.0 / (nn + 1.0) + sum.real() / (nn * nn * (nn + 1.0));
}

Channel unitary_channel(const Mat& u) {
  return [u](const Mat& x) -> Mat { return u * x * u.adjoint(); };
}

Vec bell_state(const std::string& label) {
  const double s = 1.0 / std::sqrt(2.0);
  Vec v = Vec::Zero(4);
  if (label == "phi+") v << s, 0, 0, s;
  else if (label == "phi-") v << s, 0, 0, -s;
  else if (label == "psi+") v << 0, s, s, 0;
  else if (label == "psi-") v << 0, s, -s, 0;
  else throw std::invalid_argument("unknown Bell label '" + label + "'");
  return v;
}

double bell_fidelity(const Vec& psi, const std::string& label) {
  if (psi.size() != 4)
    throw std::invalid_argument("bell_fidelity: two-qubit state expected");
  return std::norm(bell_state(label).dot(psi));
}

double bell_fidelity(const Mat& rho, const std::string& label) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw std::invalid_argument("bell_fidelity: two-qubit state expected");
  Vec b = bell_state(label);
  return (b.adjoint() * rho * b)(0, 0).real();
}

}  // namespace rydgate
