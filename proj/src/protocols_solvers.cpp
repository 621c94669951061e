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
#include <cstdint>
#include <sstream>

#include <boost/math/differentiation/finite_difference.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "rydgate/metrics.hpp"
#include "rydgate/protocols.hpp"

namespace rydgate {

namespace {

double wrap_pi(double a) {
  double w = std::remainder(a, kTwoPi);
  if (w <= -kPi) w += kTwoPi;
  return w;
}

struct DetunedParts {
  double obar, t, ep, em, x11;
  cplx a;
  double alpha;
};

// x: bare Delta/Omega. v: V/Omega (infinite for the ideal blockade).
DetunedParts detuned_parts(double x, double v) {
  DetunedParts p;
  p.x11 = std::isinf(v) ? x : x - 0.5 / (v + x);
  p.obar = std::sqrt(p.x11 * p.x11 + 2.0);
  p.t = kTwoPi / p.obar;
  const double r = std::sqrt(1.0 + x * x);
  p.ep = 0.5 * (x + r);
  p.em = 0.5 * (x - r);
  p.a = p.em * std::exp(kI * p.t * p.ep) - p.ep * std::exp(kI * p.t * p.em);
  p.alpha = -2.0 * std::arg(p.a);
  return p;
}

double residual(double theta, double x, double v) {
  DetunedParts p = detuned_parts(x, v);
  return wrap_pi(2.0 * p.alpha + kTwoPi * (1.0 + p.x11 / p.obar) - theta);
}

PhaseGateSolution solve(double theta, std::optional<int> k, double x_max, double step,
                        double v) {
  if (!(theta > 0.0) || theta > kTwoPi + 1e-12)
    throw std::invalid_argument("detuned_phase_solve: theta must be in (0, 2 pi]");
  if (!(x_max > 0.0) || !(step > 0.0))
    throw std::invalid_argument("detuned_phase_solve: bad scan parameters");
  if (!(v > 0.0)) throw std::invalid_argument("detuned_phase_solve: V/Omega must be > 0");
  auto f = [theta, v](double x) { return residual(theta, x, v); };
  const int n = static_cast<int>(std::floor(x_max / step + 1e-9));
  double xa = step, fa = f(xa);
  for (int i = 2; i <= n; ++i) {
    double xb = i * step, fb = f(xb);
    if (fa == 0.0 || (fa * fb < 0.0 && std::abs(fa - fb) < 1.0)) {
      double root = xa;
      if (fa != 0.0) {
        std::uintmax_t iters = 200;
        auto r = boost::math::tools::toms748_solve(
            f, xa, xb, fa, fb, boost::math::tools::eps_tolerance<double>(52), iters);
        root = 0.5 * (r.first + r.second);
      }
      DetunedParts p = detuned_parts(root, v);
      PhaseGateSolution s;
      s.theta = theta;
      s.delta_over_omega = root;
      s.v_over_omega = v;
      s.t_omega = p.t;
      s.alpha = p.alpha - kTwoPi * std::ceil(p.alpha / kTwoPi);  // (-2pi, 0]
      if (s.alpha <= -kTwoPi) s.alpha += kTwoPi;
      s.beta = -kTwoPi * (1.0 + p.x11 / p.obar);
      s.k = static_cast<int>(
          std::lround((s.alpha - 0.5 * theta + kPi * (1.0 + p.x11 / p.obar)) / kPi));
      const cplx num = std::exp(kI * p.t * p.ep) - std::exp(kI * p.t * p.em);
      const cplx den = std::exp(-kI * p.t * p.ep) - std::exp(-kI * p.t * p.em);
      const cplx ratio = num / den * std::conj(p.a) / p.a;
      double xi = std::fmod(-std::arg(ratio), kTwoPi);
      if (xi < 0.0) xi += kTwoPi;
      s.xi = xi;
      s.xi_residual = std::abs(std::abs(ratio) - 1.0);
      s.closure_residual = std::abs(f(root));
      if (!k || *k == s.k) return s;
    }
    xa = xb;
    fa = fb;
  }
  std::ostringstream os;
  os << "detuned_phase_solve: no root";
  if (k) os << " on branch k=" << *k;
  os << " for theta=" << theta << " in scanned interval (0, " << x_max << "]";
  throw std::runtime_error(os.str());
}

}  // namespace

double detuned_phase_residual(double theta, double x) {
  return residual(theta, x, kInf);
}

PhaseGateSolution detuned_phase_solve(double theta, std::optional<int> k,
                                      double x_max, double step) {
  return solve(theta, k, x_max, step, kInf);
}

PhaseGateSolution detuned_phase_solve_blockaded(double theta, double v_over_omega,
                                                std::optional<int> k, double x_max,
                                                double step) {
  return solve(theta, k, x_max, step, v_over_omega);
}

TsdCondition tsd_condition_at(int k1, double ratio) {
  if (k1 < 1) throw std::invalid_argument("tsd_condition_at: k1 >= 1");
  TsdCondition c;
  c.k1 = k1;
  c.ratio = ratio;
  c.k2 = ratio * k1 / std::sqrt(2.0);
  c.k3 = (std::sqrt(ratio * ratio + 2.0) * std::sqrt(2.0) * k1 - 1.0) / 2.0;
  c.k2_residual = std::abs(c.k2 - std::round(c.k2));
  c.k3_residual = std::abs(c.k3 - std::round(c.k3));
  PulseSchedule s = tsd_cnot_one_shot(kTwoPi, ratio, k1);
  c.fidelity = pedersen_fidelity(simulate(s).comp_map, s.ideal);
  return c;
}

TsdCondition tsd_condition_search(int k1_max, double lo, double hi,
                                  TsdObjective obj) {
  if (k1_max < 1) throw std::invalid_argument("tsd_condition_search: k1_max >= 1");
  if (!(hi > lo) || !(lo > 0.0))
    throw std::invalid_argument("tsd_condition_search: empty ratio bracket");
  auto cost = [obj](int k1, double r) {
    if (obj == TsdObjective::Fidelity) return 1.0 - tsd_condition_at(k1, r).fidelity;
    double k2 = r * k1 / std::sqrt(2.0);
    double k3 = (std::sqrt(r * r + 2.0) * std::sqrt(2.0) * k1 - 1.0) / 2.0;
    double a = k2 - std::round(k2), b = k3 - std::round(k3);
    return a * a + b * b;
  };
  TsdCondition best;
  double best_cost = std::numeric_limits<double>::infinity();
  const int grid = 1500;
  for (int k1 = 1; k1 <= k1_max; ++k1) {
    int imin = 0;
    double cmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid; ++i) {
      double r = lo + (hi - lo) * i / grid;
      double c = cost(k1, r);
      if (c < cmin) {
        cmin = c;
        imin = i;
      }
    }
    double a = lo + (hi - lo) * std::max(imin - 1, 0) / grid;
    double b = lo + (hi - lo) * std::min(imin + 1, grid) / grid;
    std::uintmax_t iters = 200;
    auto res = boost::math::tools::brent_find_minima(
        [&](double r) { return cost(k1, r); }, a, b, 40, iters);
    double r = res.first, c = res.second;
    if (c > cmin) {
      r = lo + (hi - lo) * imin / grid;
      c = cmin;
    }
    if (c < best_cost - 1e-15) {
      best_cost = c;
      best = tsd_condition_at(k1, r);
    }
  }
  return best;
}

BerryPhases berry_phases(const BerryLoop& loop, double tol) {
  if (!loop.theta || !loop.phi) throw std::invalid_argument("berry_phases: empty loop");
  if (!(loop.s1 > loop.s0)) throw std::invalid_argument("berry_phases: s1 <= s0");
  const double dth = loop.theta(loop.s1) - loop.theta(loop.s0);
  const double dph = loop.phi(loop.s1) - loop.phi(loop.s0);
  const double wind = dph / kTwoPi;
  if (std::abs(dth) > 1e-9 || std::abs(wind - std::round(wind)) > 1e-9) {
    std::ostringstream os;
    os << "berry_phases: open loop (d theta = " << dth << ", d phi = " << dph << ")";
    throw std::invalid_argument(os.str());
  }
  auto dphi = [&](double s) {
    if (loop.dphi) return loop.dphi(s);
    return boost::math::differentiation::finite_difference_derivative(loop.phi, s);
  };
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  auto f1 = [&](double s) {
    double st = std::sin(loop.theta(s));
    return -st * st * dphi(s);
  };
  auto f2 = [&](double s) {
    double th = loop.theta(s);
    double c2 = std::cos(th) * std::cos(th), s2 = std::sin(th) * std::sin(th);
    return -s2 * c2 / (c2 * c2 + 2.0 * s2 * s2) * dphi(s);
  };
  BerryPhases out;
  out.phi1 = GK::integrate(f1, loop.s0, loop.s1, 15, tol);
  out.phi2 = GK::integrate(f2, loop.s0, loop.s1, 15, tol);
  return out;
}

}  // namespace rydgate
