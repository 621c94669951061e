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

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace rydgate {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr cplx kI{0.0, 1.0};

// Largest entrywise |A - A^dagger|.
double max_asymmetry(const Mat& a);

struct EigResult {
  RVec values;   // ascending
  Mat vectors;   // orthonormal columns
};

// Throws std::invalid_argument (message carries the asymmetry) when the
// input is not Hermitian to within `tol`.
EigResult eig_hermitian(const Mat& h, double tol = 1e-12);

// exp(-i H t) for Hermitian H via eigendecomposition.
Mat expm_hermitian(const Mat& h, double t);

// exp(-i H t) for arbitrary square H (used with decay terms).
Mat expm_general(const Mat& h, double t);

// Scalar envelope of time. Constant envelopes are flagged so that solvers
// can use exact exponentials.
class Envelope {
 public:
  Envelope() : value_(0.0), constant_(true) {}
  Envelope(double v) : value_(v), constant_(true) {}  // NOLINT
  Envelope(cplx v) : value_(v), constant_(true) {}    // NOLINT
  explicit Envelope(std::function<cplx(double)> f)
      : f_(std::move(f)), constant_(false) {}

  static Envelope real(std::function<double(double)> f) {
    return Envelope([f = std::move(f)](double t) { return cplx(f(t), 0.0); });
  }

  cplx operator()(double t) const { return constant_ ? value_ : f_(t); }
  bool is_constant() const { return constant_; }
  bool is_zero() const { return constant_ && value_ == cplx(0.0); }
  // Product with a constant factor (phase twists, sqrt(N) enhancement).
  Envelope scaled(cplx s) const;
  // Sum of two envelopes.
  Envelope plus(const Envelope& o) const;

 private:
  std::function<cplx(double)> f_;
  cplx value_;
  bool constant_;
};

// H(t) = H_static + sum_k [ c_k(t) A_k (+ conj(c_k(t)) A_k^dagger) ].
class HamiltonianModel {
 public:
  HamiltonianModel() = default;
  explicit HamiltonianModel(int dim);

  int dim() const { return dim_; }
  const Mat& static_part() const { return static_; }

  void add_static(const Mat& m);
  void add_term(const Mat& op, Envelope coeff, bool add_adjoint);
  // (rabi/2)|upper><lower| + h.c.
  void add_coupling(int upper, int lower, Envelope rabi);
  // Re(e(t)) |level><level|.
  void add_energy(int level, Envelope e);

  Mat at(double t) const;
  bool is_constant() const;
  bool is_hermitian(double tol = 1e-12) const;

  // Returns a copy with -(i/2) Gamma_l |l><l| added to the static part.
  HamiltonianModel with_decay(const std::vector<double>& rates) const;

  // Zeroes every row and column of the listed basis states in all terms,
  // which removes them from the dynamics of the remaining states.
  void remove_states(const std::vector<int>& states);

 private:
  struct Term {
    Mat op;
    Envelope coeff;
    bool add_adjoint;
  };
  int dim_ = 0;
  Mat static_;
  std::vector<Term> terms_;
};

struct EvolveOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_min = 1e-13;
  long max_steps = 50'000'000;
  // Times at which to record the state (sorted, inside the span). When
  // empty the start and end states are recorded.
  std::vector<double> output_times;
  bool record_steps = false;
};

template <class State>
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  long accepted = 0;
  long rejected = 0;
  const State& final_state() const { return states.back(); }
};

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double last_time)
      : std::runtime_error(what), last_time_(last_time) {}
  double last_time() const { return last_time_; }

 private:
  double last_time_;
};

// Adaptive Dormand-Prince 5(4) integration of d psi/dt = -i H(t) psi.
Trajectory<Vec> evolve(const HamiltonianModel& h, const Vec& psi0, double t0,
                       double t1, const EvolveOptions& opt = {});

// Same integrator acting on a matrix of column states (propagators).
Mat evolve_operator(const HamiltonianModel& h, const Mat& u0, double t0,
                    double t1, const EvolveOptions& opt = {});

struct ConstantSegment {
  Mat h;
  double duration = 0.0;
};

// Ordered product of exact segment exponentials, last segment leftmost.
// An empty list yields the identity of dimension `dim` and a warning on
// std::clog.
Mat propagator(const std::vector<ConstantSegment>& segments, int dim = -1);

struct OpenResult {
  Vec state;
  double survival = 1.0;
};

OpenResult evolve_open(const HamiltonianModel& h,
                       const std::vector<double>& rates, const Vec& psi0,
                       double t0, double t1, const EvolveOptions& opt = {});

inline constexpr int kLindbladMaxDim = 256;

Trajectory<Mat> evolve_lindblad(const HamiltonianModel& h,
                                const std::vector<Mat>& collapse,
                                const Mat& rho0, double t0, double t1,
                                const EvolveOptions& opt = {});

// Basis vector |k> of dimension d.
Vec basis_vec(int d, int k);

}  // namespace rydgate
