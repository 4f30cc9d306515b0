#include "gtn/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gtn/nelder_mead.hpp"

namespace gtn {

namespace {

const std::array<Matrix2, 3>& paulis() {
  static const std::array<Matrix2, 3> sigma = [] {
    std::array<Matrix2, 3> s;
    s[0] << 0.0, 1.0, 1.0, 0.0;
    s[1] << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    s[2] << 1.0, 0.0, 0.0, -1.0;
    return s;
  }();
  return sigma;
}

Matrix2 observable(const Direction& d) {
  const Eigen::Vector3d n = d.unit();
  const auto& s = paulis();
  return n.x() * s[0] + n.y() * s[1] + n.z() * s[2];
}

Matrix kron3(const Matrix2& a, const Matrix2& b, const Matrix2& c) {
  Matrix out(8, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      out(i, j) = a(i >> 2, j >> 2) * b((i >> 1) & 1, (j >> 1) & 1) * c(i & 1, j & 1);
    }
  }
  return out;
}

void require_three_qubits(const DensityMatrix& rho) {
  if (rho.qubits() != 3) throw InvalidState("tripartite measures need a 3-qubit state");
}

using Vec3 = std::array<double, 3>;

inline Vec3 unit_from(double theta, double phi) {
  const double st = std::sin(theta);
  return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

inline double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

// Given Bob's and Charlie's directions, x_i = T_i(b, c') + T_i(b', c) and
// y_i = T_i(b, c) - T_i(b', c'). Alice's optimum is |x + y| + |x - y|.
struct AliceTerms {
  Vec3 plus;   // x + y
  Vec3 minus;  // x - y
};

inline AliceTerms alice_terms(const std::array<double, 27>& t, const Vec3& b, const Vec3& bp,
                              const Vec3& c, const Vec3& cp) {
  AliceTerms out{};
  for (int i = 0; i < 3; ++i) {
    // P_k(u) = sum_j T_ijk u_j
    double pb[3] = {0, 0, 0}, pbp[3] = {0, 0, 0};
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        const double tv = t[9 * i + 3 * j + k];
        pb[k] += tv * b[j];
        pbp[k] += tv * bp[j];
      }
    }
    double x = 0.0, y = 0.0;
    for (int k = 0; k < 3; ++k) {
      x += pb[k] * cp[k] + pbp[k] * c[k];
      y += pb[k] * c[k] - pbp[k] * cp[k];
    }
    out.plus[i] = x + y;
    out.minus[i] = x - y;
  }
  return out;
}

struct BobCharlie {
  Vec3 b, bp, c, cp;
};

inline BobCharlie directions(const std::array<double, 8>& ang) {
  return {unit_from(ang[0], ang[1]), unit_from(ang[2], ang[3]), unit_from(ang[4], ang[5]),
          unit_from(ang[6], ang[7])};
}

Direction direction_of(const Vec3& v) {
  return Direction::from_vector(Eigen::Vector3d(v[0], v[1], v[2]));
}

}  // namespace

Eigen::Vector3d Direction::unit() const {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

Direction Direction::from_vector(const Eigen::Vector3d& v) {
  const double n = v.norm();
  if (n == 0.0) return {};
  return {std::acos(std::clamp(v.z() / n, -1.0, 1.0)), std::atan2(v.y(), v.x())};
}

double svetlichny_n(const XState& x) {
  return x.mu[0] - x.mu[1] - x.mu[2] + x.mu[3] - x.nu[3] + x.nu[2] + x.nu[1] - x.nu[0];
}

double svetlichny_x(const XState& x) {
  double wmax = 0.0;
  for (const auto& w : x.w) wmax = std::max(wmax, std::abs(w));
  return std::max(8.0 * std::numbers::sqrt2 * wmax, 4.0 * std::abs(svetlichny_n(x)));
}

double svetlichny_expectation(const DensityMatrix& rho, const SvetlichnySetting& s) {
  require_three_qubits(rho);
  const Matrix2 a = observable(s.a), ap = observable(s.a_prime);
  const Matrix2 b = observable(s.b), bp = observable(s.b_prime);
  const Matrix2 c = observable(s.c), cp = observable(s.c_prime);
  const Matrix op = kron3(a + ap, b, cp) + kron3(a + ap, bp, c) + kron3(a - ap, b, c) -
                    kron3(a - ap, bp, cp);
  return (op * rho.entries()).trace().real();
}

std::array<double, 27> correlation_tensor(const DensityMatrix& rho) {
  require_three_qubits(rho);
  const auto& s = paulis();
  std::array<double, 27> t{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        t[9 * i + 3 * j + k] = (kron3(s[i], s[j], s[k]) * rho.entries()).trace().real();
      }
    }
  }
  return t;
}

SvetlichnyOptimum svetlichny_bruteforce(const DensityMatrix& rho, const BruteforceOptions& opts) {
  const auto t = correlation_tensor(rho);
  auto objective = [&t](const std::array<double, 8>& ang) {
    const auto d = directions(ang);
    const auto terms = alice_terms(t, d.b, d.bp, d.c, d.cp);
    return -(norm3(terms.plus) + norm3(terms.minus));
  };

  constexpr double kLattice = std::numbers::pi / 6.0;  // 30 degrees
  constexpr int kRefined = 6;
  const int starts = std::max(1, opts.restarts);
  std::vector<detail::SimplexResult<8>> coarse;
  coarse.reserve(starts);
  for (int run = 0; run < starts; ++run) {
    std::seed_seq seq{static_cast<std::uint32_t>(opts.seed),
                      static_cast<std::uint32_t>(opts.seed >> 32),
                      static_cast<std::uint32_t>(run)};
    std::mt19937_64 rng(seq);
    std::array<double, 8> start{};
    if (run % 2 == 0) {
      // lattice seed: theta in {0..180}, phi in {0..330} degrees
      std::uniform_int_distribution<int> theta_step(0, 6), phi_step(0, 11);
      for (int k = 0; k < 8; k += 2) {
        start[k] = kLattice * theta_step(rng);
        start[k + 1] = kLattice * phi_step(rng);
      }
    } else {
      std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
      for (auto& a : start) a = angle(rng);
    }
    coarse.push_back(detail::nelder_mead<8>(objective, start, 0.4, 1e-6, 1e-2,
                                            opts.max_evaluations));
  }

  // Polish the most promising starts; restarting from the converged point
  // also guards against a collapsed simplex.
  const auto cut = coarse.begin() + std::min<std::ptrdiff_t>(kRefined, coarse.size());
  std::partial_sort(coarse.begin(), cut, coarse.end(),
                    [](const auto& l, const auto& r) { return l.value < r.value; });
  std::array<double, 8> best_angles = coarse.front().x;
  double best = -coarse.front().value;
  for (auto it = coarse.begin(); it != cut; ++it) {
    auto res = detail::nelder_mead<8>(objective, it->x, 0.05, opts.tolerance, 1e-8,
                                      opts.max_evaluations);
    res = detail::nelder_mead<8>(objective, res.x, 0.01, opts.tolerance, 1e-9,
                                 opts.max_evaluations);
    if (-res.value > best) {
      best = -res.value;
      best_angles = res.x;
    }
  }

  const auto d = directions(best_angles);
  const auto terms = alice_terms(t, d.b, d.bp, d.c, d.cp);
  SvetlichnyOptimum out;
  out.value = best;
  out.setting.a = direction_of(terms.plus);
  out.setting.a_prime = direction_of(terms.minus);
  out.setting.b = direction_of(d.b);
  out.setting.b_prime = direction_of(d.bp);
  out.setting.c = direction_of(d.c);
  out.setting.c_prime = direction_of(d.cp);
  return out;
}

double gtc_pure(const PureState& psi) {
  if (psi.qubits() != 3) throw InvalidState("genuine tripartite concurrence needs 3 qubits");
  const auto rho = DensityMatrix::from_pure(psi);
  double c = 1.0;
  for (Mode m : psi.labels()) {
    const Mode keep[] = {m};
    const Matrix single = partial_trace(rho, keep).entries();
    const double purity = (single * single).trace().real();
    c = std::min(c, std::sqrt(2.0 * std::max(0.0, 1.0 - purity)));
  }
  return c;
}

double gtc_x(const XState& x) {
  std::array<double, 4> geo{};
  for (int j = 0; j < 4; ++j) geo[j] = std::sqrt(std::max(0.0, x.mu[j] * x.nu[j]));
  double best = 0.0;
  for (int i = 0; i < 4; ++i) {
    double others = 0.0;
    for (int j = 0; j < 4; ++j) {
      if (j != i) others += geo[j];
    }
    best = std::max(best, std::abs(x.w[i]) - others);
  }
  return 2.0 * best;
}

bool is_classical_on(const DensityMatrix& rho, int position, double tol) {
  const int n = rho.qubits();
  const Eigen::Index bit = Eigen::Index{1} << (n - 1 - position);
  for (Eigen::Index i = 0; i < rho.dim(); ++i) {
    for (Eigen::Index j = 0; j < rho.dim(); ++j) {
      if (((i ^ j) & bit) && std::abs(rho(i, j)) > tol) return false;
    }
  }
  return true;
}

double genuine_concurrence(const DensityMatrix& rho, double tol) {
  require_three_qubits(rho);
  try {
    return gtc_x(as_x_state(rho, tol));
  } catch (const NotXForm&) {
    for (int k = 0; k < 3; ++k) {
      if (is_classical_on(rho, k, tol)) return 0.0;
    }
    throw;
  }
}

MeasureResult measure(const DensityMatrix& rho, const BruteforceOptions& opts, bool want_s,
                      bool want_c) {
  require_three_qubits(rho);
  MeasureResult out;
  std::optional<XState> x;
  try {
    x = as_x_state(rho, 1e-12);
  } catch (const NotXForm&) {
  }
  if (want_s) {
    if (x) {
      out.S = svetlichny_x(*x);
    } else {
      auto best = svetlichny_bruteforce(rho, opts);
      out.S = best.value;
      out.best_setting = best.setting;
    }
  }
  if (want_c) out.C = x ? gtc_x(*x) : genuine_concurrence(rho);
  return out;
}

}  // namespace gtn
