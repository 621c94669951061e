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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rydgate/qcore.hpp"

namespace rydgate::detail {

// Dormand-Prince 5(4) with FSAL and PI-free standard step control.
// `rhs(t, y, dy)` fills dy. Recorded states go to `traj`.
template <class State, class Rhs>
Trajectory<State> dopri45(Rhs&& rhs, State y, double t0, double t1,
                          const EvolveOptions& opt) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                   a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                   a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                   b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  Trajectory<State> traj;
  std::vector<double> outs = opt.output_times;
  std::sort(outs.begin(), outs.end());
  if (outs.empty()) outs = {t0, t1};
  std::size_t next_out = 0;
  auto record = [&](double t, const State& s) {
    traj.times.push_back(t);
    traj.states.push_back(s);
  };
  while (next_out < outs.size() && outs[next_out] <= t0 + 1e-15) {
    record(t0, y);
    ++next_out;
  }
  const double span = t1 - t0;
  if (span <= 0.0) {
    while (next_out < outs.size()) {
      record(t0, y);
      ++next_out;
    }
    return traj;
  }

  State k1 = y, k2 = y, k3 = y, k4 = y, k5 = y, k6 = y, k7 = y, yt = y,
        ynew = y, err = y;
  double t = t0;
  rhs(t, y, k1);

  // Initial step from the scale of the derivative.
  double f0 = k1.cwiseAbs().maxCoeff();
  double y0 = y.cwiseAbs().maxCoeff();
  double h = (f0 > 0.0) ? 0.01 * std::max(y0, 1e-6) / f0 : span;
  h = std::min({h, span, 0.1 * span + 1e-300});
  if (h <= 0.0) h = span;

  long steps = 0;
  while (t < t1) {
    if (++steps > opt.max_steps) {
      std::ostringstream os;
      os << "step budget exhausted at t=" << t;
      throw IntegrationError(os.str(), t);
    }
    bool clamp_out = false;
    const double h_prop = h;
    double target = t1;
    if (next_out < outs.size() && outs[next_out] < t1) target = outs[next_out];
    if (t + h >= target) {
      h = target - t;
      clamp_out = true;
    }

    yt = y + h * (a21 * k1);
    rhs(t + c2 * h, yt, k2);
    yt = y + h * (a31 * k1 + a32 * k2);
    rhs(t + c3 * h, yt, k3);
    yt = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(t + c4 * h, yt, k4);
    yt = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(t + c5 * h, yt, k5);
    yt = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(t + h, yt, k6);
    ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    rhs(t + h, ynew, k7);
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double en = 0.0;
    {
      auto sc = (opt.atol + opt.rtol * y.cwiseAbs().array().max(
                                          ynew.cwiseAbs().array()))
                    .eval();
      en = (err.cwiseAbs().array() / sc).maxCoeff();
    }

    if (en <= 1.0 || h <= opt.h_min) {
      if (en > 1.0 && h <= opt.h_min) {
        std::ostringstream os;
        os << "step size underflow at t=" << t;
        throw IntegrationError(os.str(), t);
      }
      t = clamp_out ? target : t + h;
      y.swap(ynew);
      k1.swap(k7);
      ++traj.accepted;
      if (opt.record_steps && !(clamp_out && next_out < outs.size() &&
                                target == outs[next_out]))
        record(t, y);
      while (next_out < outs.size() && outs[next_out] <= t + 1e-15) {
        record(t, y);
        ++next_out;
      }
      double fac = (en > 0.0) ? 0.9 * std::pow(en, -0.2) : 5.0;
      fac = std::clamp(fac, 0.2, 5.0);
      // Keep the step proposed before clamping to an output time.
      h = clamp_out ? std::max(h * fac, h_prop) : h * fac;
    } else {
      ++traj.rejected;
      double fac = std::clamp(0.9 * std::pow(en, -0.2), 0.1, 1.0);
      h *= fac;
      if (h < opt.h_min) h = opt.h_min;
    }
  }
  while (next_out < outs.size()) {
    record(t, y);
    ++next_out;
  }
  return traj;
}

}  // namespace rydgate::detail
