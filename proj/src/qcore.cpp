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

#include "rydgate/qcore.hpp"

#include <iostream>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "rydgate/detail/dopri.hpp"

namespace rydgate {

double max_asymmetry(const Mat& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

EigResult eig_hermitian(const Mat& h, double tol) {
  if (h.rows() == 0 || h.rows() != h.cols())
    throw std::invalid_argument("eig_hermitian: need a non-empty square matrix");
  double asym = max_asymmetry(h);
  double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (asym > tol * scale) {
    std::ostringstream os;
    os << "eig_hermitian: matrix is not Hermitian (max |A - A^+| = " << asym
       << ")";
    throw std::invalid_argument(os.str());
  }
  Mat sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(sym);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: decomposition failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

Mat expm_hermitian(const Mat& h, double t) {
  EigResult e = eig_hermitian(h, 1e-9);
  Vec ph(e.values.size());
  for (Eigen::Index k = 0; k < ph.size(); ++k)
    ph(k) = std::exp(-kI * e.values(k) * t);
  return e.vectors * ph.asDiagonal() * e.vectors.adjoint();
}

Mat expm_general(const Mat& h, double t) {
  Mat a = (-kI * t) * h;
  return a.exp();
}

Envelope Envelope::scaled(cplx s) const {
  if (constant_) return Envelope(value_ * s);
  auto f = f_;
  return Envelope([f, s](double t) { return s * f(t); });
}

Envelope Envelope::plus(const Envelope& o) const {
  if (constant_ && o.constant_) return Envelope(value_ + o.value_);
  Envelope a = *this, b = o;
  return Envelope([a, b](double t) { return a(t) + b(t); });
}

HamiltonianModel::HamiltonianModel(int dim)
    : dim_(dim), static_(Mat::Zero(dim, dim)) {
  if (dim < 1) throw std::invalid_argument("HamiltonianModel: dim < 1");
}

void HamiltonianModel::add_static(const Mat& m) {
  if (m.rows() != dim_ || m.cols() != dim_)
    throw std::invalid_argument("HamiltonianModel: dimension mismatch");
  static_ += m;
}

void HamiltonianModel::add_term(const Mat& op, Envelope coeff,
                                bool add_adjoint) {
  if (op.rows() != dim_ || op.cols() != dim_)
    throw std::invalid_argument("HamiltonianModel: dimension mismatch");
  if (coeff.is_constant()) {
    cplx c = coeff(0.0);
    static_ += c * op;
    if (add_adjoint) static_ += std::conj(c) * op.adjoint();
    return;
  }
  terms_.push_back({op, std::move(coeff), add_adjoint});
}

void HamiltonianModel::add_coupling(int upper, int lower, Envelope rabi) {
  if (upper < 0 || lower < 0 || upper >= dim_ || lower >= dim_ ||
      upper == lower)
    throw std::invalid_argument("HamiltonianModel: bad coupling indices");
  Mat op = Mat::Zero(dim_, dim_);
  op(upper, lower) = 0.5;
  add_term(op, std::move(rabi), true);
}

void HamiltonianModel::add_energy(int level, Envelope e) {
  if (level < 0 || level >= dim_)
    throw std::invalid_argument("HamiltonianModel: bad level index");
  Mat op = Mat::Zero(dim_, dim_);
  op(level, level) = 0.5;
  // c P/2 + conj(c) P/2 = Re(c) P
  add_term(op, std::move(e), true);
}

Mat HamiltonianModel::at(double t) const {
  Mat h = static_;
  for (const auto& term : terms_) {
    cplx c = term.coeff(t);
    if (c == cplx(0.0)) continue;
    h += c * term.op;
    if (term.add_adjoint) h += std::conj(c) * term.op.adjoint();
  }
  return h;
}

bool HamiltonianModel::is_constant() const { return terms_.empty(); }

bool HamiltonianModel::is_hermitian(double tol) const {
  if (max_asymmetry(static_) > tol) return false;
  for (const auto& term : terms_) {
    if (!term.add_adjoint && max_asymmetry(term.op) > tol) return false;
  }
  return true;
}

HamiltonianModel HamiltonianModel::with_decay(
    const std::vector<double>& rates) const {
  if (static_cast<int>(rates.size()) != dim_)
    throw std::invalid_argument("with_decay: one rate per basis state needed");
  HamiltonianModel out = *this;
  for (int k = 0; k < dim_; ++k) {
    if (rates[k] < 0.0)
      throw std::invalid_argument("with_decay: negative decay rate");
    out.static_(k, k) -= 0.5 * kI * rates[k];
  }
  return out;
}

void HamiltonianModel::remove_states(const std::vector<int>& states) {
  for (int k : states) {
    if (k < 0 || k >= dim_)
      throw std::invalid_argument("remove_states: index out of range");
    static_.row(k).setZero();
    static_.col(k).setZero();
    for (auto& t : terms_) {
      t.op.row(k).setZero();
      t.op.col(k).setZero();
    }
  }
}

Trajectory<Vec> evolve(const HamiltonianModel& h, const Vec& psi0, double t0,
                       double t1, const EvolveOptions& opt) {
  if (psi0.size() != h.dim())
    throw std::invalid_argument("evolve: state dimension mismatch");
  if (opt.rtol <= 0.0) throw std::invalid_argument("evolve: tol must be > 0");
  auto rhs = [&h](double t, const Vec& y, Vec& dy) {
    dy.noalias() = (-kI) * (h.at(t) * y);
  };
  return detail::dopri45<Vec>(rhs, psi0, t0, t1, opt);
}

Mat evolve_operator(const HamiltonianModel& h, const Mat& u0, double t0,
                    double t1, const EvolveOptions& opt) {
  if (u0.rows() != h.dim())
    throw std::invalid_argument("evolve_operator: dimension mismatch");
  auto rhs = [&h](double t, const Mat& y, Mat& dy) {
    dy.noalias() = (-kI) * (h.at(t) * y);
  };
  EvolveOptions o = opt;
  o.output_times.clear();
  o.record_steps = false;
  return detail::dopri45<Mat>(rhs, u0, t0, t1, o).final_state();
}

Mat propagator(const std::vector<ConstantSegment>& segments, int dim) {
  if (segments.empty()) {
    if (dim < 1)
      throw std::invalid_argument("propagator: empty schedule needs a dimension");
    std::clog << "warning: propagator of an empty schedule is the identity\n";
    return Mat::Identity(dim, dim);
  }
  const auto n = segments.front().h.rows();
  Mat u = Mat::Identity(n, n);
  for (const auto& s : segments) {
    if (s.h.rows() != n || s.h.cols() != n)
      throw std::invalid_argument("propagator: segment dimension mismatch");
    if (s.duration < 0.0)
      throw std::invalid_argument("propagator: negative duration");
    Mat step = (max_asymmetry(s.h) <= 1e-12 * std::max(1.0, s.h.cwiseAbs().maxCoeff()))
                   ? expm_hermitian(s.h, s.duration)
                   : expm_general(s.h, s.duration);
    u = step * u;
  }
  return u;
}

OpenResult evolve_open(const HamiltonianModel& h,
                       const std::vector<double>& rates, const Vec& psi0,
                       double t0, double t1, const EvolveOptions& opt) {
  HamiltonianModel hd = h.with_decay(rates);
  auto traj = evolve(hd, psi0, t0, t1, opt);
  OpenResult r;
  r.state = traj.final_state();
  r.survival = r.state.squaredNorm();
  return r;
}

Trajectory<Mat> evolve_lindblad(const HamiltonianModel& h,
                                const std::vector<Mat>& collapse,
                                const Mat& rho0, double t0, double t1,
                                const EvolveOptions& opt) {
  const int d = h.dim();
  if (d > kLindbladMaxDim) {
    std::ostringstream os;
    os << "evolve_lindblad: dimension " << d << " exceeds the dense limit "
       << kLindbladMaxDim;
    throw std::invalid_argument(os.str());
  }
  if (rho0.rows() != d || rho0.cols() != d)
    throw std::invalid_argument("evolve_lindblad: density matrix dimension");
  Mat ldl = Mat::Zero(d, d);
  for (const auto& l : collapse) {
    if (l.rows() != d || l.cols() != d)
      throw std::invalid_argument("evolve_lindblad: collapse operator dimension");
    ldl += l.adjoint() * l;
  }
  auto rhs = [&](double t, const Mat& rho, Mat& drho) {
    Mat heff = h.at(t) - 0.5 * kI * ldl;
    drho.noalias() = -kI * (heff * rho);
    drho.noalias() += kI * (rho * heff.adjoint());
    for (const auto& l : collapse) drho.noalias() += l * rho * l.adjoint();
  };
  return detail::dopri45<Mat>(rhs, rho0, t0, t1, opt);
}

Vec basis_vec(int d, int k) {
  Vec v = Vec::Zero(d);
  v(k) = 1.0;
  return v;
}

}  // namespace rydgate
