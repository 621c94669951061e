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

#include "rydgate/interact.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace rydgate {

namespace {

namespace mp = boost::multiprecision;

int twice(double x, const char* what) {
  double t = 2.0 * x;
  double r = std::round(t);
  if (std::abs(t - r) > 1e-9) {
    std::ostringstream os;
    os << "clebsch_gordan: " << what << "=" << x
       << " is not an integer or half-integer";
    throw std::invalid_argument(os.str());
  }
  return static_cast<int>(r);
}

mp::cpp_int factorial(int n) {
  mp::cpp_int f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

void check_spin(int tj, int tm, const char* name) {
  if (tj < 0 || std::abs(tm) > tj || ((tj - tm) % 2) != 0) {
    std::ostringstream os;
    os << "clebsch_gordan: inconsistent spin " << name << " (2j=" << tj
       << ", 2m=" << tm << ")";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

double clebsch_gordan(double j1, double m1, double j2, double m2, double J,
                      double M) {
  const int tj1 = twice(j1, "j1"), tm1 = twice(m1, "m1");
  const int tj2 = twice(j2, "j2"), tm2 = twice(m2, "m2");
  const int tJ = twice(J, "J"), tM = twice(M, "M");
  check_spin(tj1, tm1, "j1");
  check_spin(tj2, tm2, "j2");
  check_spin(tJ, tM, "J");
  if (tM != tm1 + tm2) return 0.0;
  if (tJ < std::abs(tj1 - tj2) || tJ > tj1 + tj2) return 0.0;
  if (((tj1 + tj2 + tJ) % 2) != 0) return 0.0;

  // All factorial arguments below are integers.
  const int a = (tJ + tj1 - tj2) / 2, b = (tJ - tj1 + tj2) / 2,
            c = (tj1 + tj2 - tJ) / 2, d = (tj1 + tj2 + tJ) / 2 + 1;
  mp::cpp_rational pref(factorial(a) * factorial(b) * factorial(c),
                        factorial(d));
  pref *= (tJ + 1);
  pref *= factorial((tJ + tM) / 2) * factorial((tJ - tM) / 2) *
          factorial((tj1 - tm1) / 2) * factorial((tj1 + tm1) / 2) *
          factorial((tj2 - tm2) / 2) * factorial((tj2 + tm2) / 2);

  mp::cpp_rational sum = 0;
  for (int k = 0;; ++k) {
    const int f1 = c - k, f2 = (tj1 - tm1) / 2 - k, f3 = (tj2 + tm2) / 2 - k;
    const int f4 = (tJ - tj2 + tm1) / 2 + k, f5 = (tJ - tj1 - tm2) / 2 + k;
    if (f1 < 0 || f2 < 0 || f3 < 0) break;
    if (f4 < 0 || f5 < 0) continue;
    mp::cpp_int den = factorial(k) * factorial(f1) * factorial(f2) *
                      factorial(f3) * factorial(f4) * factorial(f5);
    mp::cpp_rational term(1, den);
    if (k % 2) sum -= term;
    else sum += term;
  }
  if (sum == 0) return 0.0;
  mp::cpp_rational sq = pref * sum * sum;
  mp::cpp_bin_float_50 val = mp::sqrt(mp::cpp_bin_float_50(sq));
  double out = val.convert_to<double>();
  return sum < 0 ? -out : out;
}

cplx spherical_tensor_rank2(int m, double theta, double phi) {
  const double ct = std::cos(theta), st = std::sin(theta);
  switch (m) {
    case 0:
      return 0.5 * (3.0 * ct * ct - 1.0);
    case 1:
      return -std::sqrt(1.5) * st * ct * std::exp(kI * phi);
    case -1:
      return std::sqrt(1.5) * st * ct * std::exp(-kI * phi);
    case 2:
      return std::sqrt(3.0 / 8.0) * st * st * std::exp(2.0 * kI * phi);
    case -2:
      return std::sqrt(3.0 / 8.0) * st * st * std::exp(-2.0 * kI * phi);
    default: {
      std::ostringstream os;
      os << "spherical_tensor_rank2: |M| = " << std::abs(m) << " > 2";
      throw std::invalid_argument(os.str());
    }
  }
}

double dipole_unit_rad_per_us() {
  constexpr double e = 1.602176634e-19;
  constexpr double a0 = 5.29177210903e-11;
  constexpr double eps0 = 8.8541878128e-12;
  constexpr double hbar = 1.054571817e-34;
  constexpr double um = 1e-6;
  double joule = e * e * a0 * a0 / (4.0 * kPi * eps0 * um * um * um);
  return joule / hbar * 1e-6;
}

namespace {

void check_selection(const AtomQN& bra, const AtomQN& ket, double red,
                     const char* atom) {
  if (std::abs(bra.l - ket.l) != 1 && red != 0.0) {
    std::ostringstream os;
    os << "dipole channel on atom " << atom << " violates dl = +-1 (l "
       << ket.l << " -> " << bra.l << ") with nonzero reduced element";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

cplx dipole_dipole_element(const ChannelSpec& ch, const Geometry& g) {
  if (!(g.L > 0.0))
    throw std::invalid_argument("dipole_dipole_element: L must be positive");
  check_selection(ch.bra.a, ch.ket.a, ch.reduced_a, "A");
  check_selection(ch.bra.b, ch.ket.b, ch.reduced_b, "B");
  if (ch.reduced_a == 0.0 || ch.reduced_b == 0.0) return 0.0;
  const AtomQN &A = ch.bra.a, &B = ch.bra.b, &a = ch.ket.a, &b = ch.ket.b;
  cplx sum = 0.0;
  for (int M = -2; M <= 2; ++M) {
    cplx psi = spherical_tensor_rank2(-M, g.theta, g.phi);
    double inner = 0.0;
    for (int al = -1; al <= 1; ++al) {
      int be = M - al;
      if (be < -1 || be > 1) continue;
      double c12 = clebsch_gordan(1, al, 1, be, 2, M);
      if (c12 == 0.0) continue;
      double ca = clebsch_gordan(a.j, a.m, 1, al, A.j, A.m);
      if (ca == 0.0) continue;
      double cb = clebsch_gordan(b.j, b.m, 1, be, B.j, B.m);
      inner += c12 * ca * cb;
    }
    sum += psi * inner;
  }
  double pref = -std::sqrt(6.0) * ch.reduced_a * ch.reduced_b *
                dipole_unit_rad_per_us() / (g.L * g.L * g.L);
  return pref * sum;
}

namespace {

auto nlj(const AtomQN& q) { return std::make_tuple(q.n, q.l, twice(q.j, "j")); }
auto full(const AtomQN& q) {
  return std::make_tuple(q.n, q.l, twice(q.j, "j"), twice(q.m, "m"));
}

}  // namespace

Mat vdw_matrix(const std::vector<PairQN>& pair_states,
               const std::vector<ChannelSpec>& channels, const Geometry& g) {
  const int n = static_cast<int>(pair_states.size());
  if (n == 0) throw std::invalid_argument("vdw_matrix: empty manifold");
  for (std::size_t c = 0; c < channels.size(); ++c) {
    if (channels[c].defect == 0.0) {
      std::ostringstream os;
      os << "vdw_matrix: channel " << c
         << " has zero energy defect (Foerster-degenerate, second order invalid)";
      throw std::invalid_argument(os.str());
    }
  }
  // Intermediate pair states keyed by full quantum numbers.
  using Key = std::tuple<std::tuple<int, int, int, int>, std::tuple<int, int, int, int>>;
  std::map<Key, std::size_t> index;
  struct Inter {
    PairQN qn;
    double defect;
  };
  std::vector<Inter> inter;
  std::vector<std::vector<std::pair<std::size_t, cplx>>> couplings(n);

  for (const auto& ch : channels) {
    const int tja = twice(ch.ket.a.j, "j"), tjb = twice(ch.ket.b.j, "j");
    for (int i = 0; i < n; ++i) {
      const PairQN& s = pair_states[i];
      if (nlj(s.a) != nlj(ch.bra.a) || nlj(s.b) != nlj(ch.bra.b)) continue;
      for (int tma = -tja; tma <= tja; tma += 2) {
        for (int tmb = -tjb; tmb <= tjb; tmb += 2) {
          ChannelSpec c = ch;
          c.bra = s;
          c.ket.a.m = 0.5 * tma;
          c.ket.b.m = 0.5 * tmb;
          cplx v = dipole_dipole_element(c, g);
          if (std::abs(v) == 0.0) continue;
          Key k{full(c.ket.a), full(c.ket.b)};
          auto it = index.find(k);
          std::size_t id;
          if (it == index.end()) {
            id = inter.size();
            index.emplace(k, id);
            inter.push_back({c.ket, ch.defect});
          } else {
            id = it->second;
          }
          couplings[i].push_back({id, v});
        }
      }
    }
  }
  Mat h = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (const auto& [ki, vi] : couplings[i])
        for (const auto& [kj, vj] : couplings[j])
          if (ki == kj) acc -= vi * std::conj(vj) / inter[ki].defect;
      h(i, j) = acc;
    }
  }
  return h;
}

double interaction_at(InteractionKind kind, double coefficient, double L) {
  if (!(L > 0.0)) throw std::invalid_argument("interaction_at: L must be positive");
  double p = kind == InteractionKind::VdwC6 ? std::pow(L, 6) : L * L * L;
  // GHz -> MHz, then 2 pi for rad/us.
  return kTwoPi * 1e3 * coefficient / p;
}

const std::vector<VdwFixture>& vdw_fixtures() {
  static const std::vector<VdwFixture> fx = [] {
    std::vector<VdwFixture> v;
    const std::vector<std::string> b4 = {"r+;r+", "r+;r-", "r-;r+", "r-;r-"};
    auto m4 = [](std::initializer_list<double> xs) {
      Eigen::MatrixXd m(4, 4);
      int k = 0;
      for (double x : xs) m(k / 4, k % 4) = x, ++k;
      return m;
    };
    v.push_back({"rb100s_theta0", b4, 0.0,
                 m4({56200, 0, 0, 0, 0, 56980, 1573, 0, 0, 1573, 56980, 0, 0,
                     0, 0, 56200})});
    v.push_back({"rb100s_theta_pi4", b4, kPi / 4,
                 m4({56790, 590, 590, -590, 590, 56400, 983, -590, 590, 983,
                     56400, -590, -590, -590, -590, 56790})});
    v.push_back({"rb100s_theta_pi2", b4, kPi / 2,
                 m4({57380, 0, 0, -1180, 0, 55800, 393, 0, 0, 393, 55800, 0,
                     -1180, 0, 0, 57380})});
    v.push_back({"rb100p_theta0", b4, 0.0,
                 m4({2108, 0, 0, 0, 0, -3492, -11200, 0, 0, -11200, -3492, 0,
                     0, 0, 0, 2108})});
    v.push_back({"rb100p_theta_pi2", b4, kPi / 2,
                 m4({-6292, 0, 0, 8400, 0, 4908, -2800, 0, 0, -2800, 4908, 0,
                     8400, 0, 0, -6292})});
    Eigen::MatrixXd v1 = m4({-89180, 0, 0, 0, 0, -59780, 58800, 0, 0, 58800,
                             -59780, 0, 0, 0, 0, -89180});
    Eigen::MatrixXd v2 =
        m4({-537, 0, 0, 0, 0, -375, 324, 0, 0, 324, -375, 0, 0, 0, 0, -537});
    Eigen::MatrixXd m8(8, 8);
    m8 << v1, v2, v2, v1;
    v.push_back({"rb97s_100s_theta0",
                 {"R+;r+", "R-;r+", "R+;r-", "R-;r-", "r+;R+", "r-;R+",
                  "r+;R-", "r-;R-"},
                 0.0,
                 m8});
    return v;
  }();
  return fx;
}

const VdwFixture& vdw_fixture(const std::string& name) {
  for (const auto& f : vdw_fixtures())
    if (f.name == name) return f;
  throw std::invalid_argument("unknown interaction fixture '" + name + "'");
}

Mat fixture_at(const VdwFixture& f, double L) {
  return f.matrix.cast<cplx>() * interaction_at(InteractionKind::VdwC6, 1.0, L);
}

namespace {

double parse_half(const std::string& tok) {
  auto slash = tok.find('/');
  if (slash == std::string::npos) return std::stod(tok);
  return std::stod(tok.substr(0, slash)) / std::stod(tok.substr(slash + 1));
}

std::string fmt_half(double x) {
  int t = static_cast<int>(std::lround(2.0 * x));
  if (t % 2 == 0) return std::to_string(t / 2);
  return std::to_string(t) + "/2";
}

}  // namespace

std::vector<ChannelSpec> read_channel_table(std::istream& in) {
  std::vector<ChannelSpec> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.size() != 19) {
      std::ostringstream os;
      os << "channel table line " << lineno << ": expected 19 columns, got "
         << tok.size();
      throw std::invalid_argument(os.str());
    }
    auto atom = [&](int k) {
      AtomQN q;
      q.n = std::stoi(tok[k]);
      q.l = std::stoi(tok[k + 1]);
      q.j = parse_half(tok[k + 2]);
      q.m = parse_half(tok[k + 3]);
      if (std::abs(q.m) > q.j + 1e-12) {
        std::ostringstream os;
        os << "channel table line " << lineno << ": |m| > j";
        throw std::invalid_argument(os.str());
      }
      return q;
    };
    ChannelSpec c;
    c.bra = {atom(0), atom(4)};
    c.ket = {atom(8), atom(12)};
    c.reduced_a = std::stod(tok[16]);
    c.reduced_b = std::stod(tok[17]);
    c.defect = kTwoPi * std::stod(tok[18]);
    out.push_back(c);
  }
  return out;
}

void write_channel_table(std::ostream& out,
                         const std::vector<ChannelSpec>& channels) {
  out << "# nA lA jA mA nB lB jB mB na la ja ma nb lb jb mb red_a red_b "
         "defect_MHz\n";
  auto atom = [&](const AtomQN& q) {
    out << q.n << ' ' << q.l << ' ' << fmt_half(q.j) << ' ' << fmt_half(q.m)
        << ' ';
  };
  out << std::setprecision(17);
  for (const auto& c : channels) {
    atom(c.bra.a);
    atom(c.bra.b);
    atom(c.ket.a);
    atom(c.ket.b);
    out << c.reduced_a << ' ' << c.reduced_b << ' ' << c.defect / kTwoPi
        << '\n';
  }
}

}  // namespace rydgate
