#pragma once

// Genuine tripartite nonlocality (maximal Svetlichny value S) and genuine
// tripartite entanglement (genuine tripartite concurrence C).

#include <array>
#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "gtn/qcore.hpp"

namespace gtn {

/// Local bound of the Svetlichny inequality; S > 4 signals GTN.
inline constexpr double kSvetlichnyLocalBound = 4.0;
/// 4 sqrt(2), the quantum maximum.
inline constexpr double kSvetlichnyMax = 5.65685424949238019520;

/// Unit vector stored as polar/azimuthal angles.
struct Direction {
  double theta = 0.0;
  double phi = 0.0;

  Eigen::Vector3d unit() const;
  static Direction from_vector(const Eigen::Vector3d& v);
};

struct SvetlichnySetting {
  Direction a, a_prime, b, b_prime, c, c_prime;
};

struct MeasureResult {
  double S = 0.0;
  double C = 0.0;
  std::optional<SvetlichnySetting> best_setting;
};

/// mu1 - mu2 - mu3 + mu4 - nu4 + nu3 + nu2 - nu1.
double svetlichny_n(const XState& x);

/// max{8 sqrt(2) max_i |w_i|, 4 |N|}.
double svetlichny_x(const XState& x);

/// tr(S rho) with the Svetlichny operator assembled from Pauli matrices.
double svetlichny_expectation(const DensityMatrix& rho, const SvetlichnySetting& setting);

/// Pauli correlation tensor T_ijk = tr(sigma_i x sigma_j x sigma_k rho),
/// flattened as 9*i + 3*j + k.
std::array<double, 27> correlation_tensor(const DensityMatrix& rho);

struct BruteforceOptions {
  int restarts = 200;
  double tolerance = 1e-12;  ///< per-start spread of simplex values
  std::uint64_t seed = 20240601;
  int max_evaluations = 20000;  ///< per start
};

struct SvetlichnyOptimum {
  double value = 0.0;
  SvetlichnySetting setting;
};

/// Multi-start Nelder–Mead search for max tr(S rho). Bob's and Charlie's
/// four directions are searched; Alice's pair is optimal in closed form
/// given them. Deterministic for a fixed seed.
SvetlichnyOptimum svetlichny_bruteforce(const DensityMatrix& rho,
                                        const BruteforceOptions& opts = {});

/// min over single-party bipartitions of sqrt(2 (1 - Tr rho_k^2)).
double gtc_pure(const PureState& psi);

/// 2 max_i max{0, |w_i| - sum_{j != i} sqrt(mu_j nu_j)}.
double gtc_x(const XState& x);

/// True when every entry coupling different computational-basis values of
/// the qubit at `position` is below `tol`, i.e. rho = sum_k |k><k| (x) sigma_k.
bool is_classical_on(const DensityMatrix& rho, int position, double tol = 1e-12);

/// X states use gtc_x. States classical on one party are biseparable and
/// return 0. Anything else throws NotXForm.
double genuine_concurrence(const DensityMatrix& rho, double tol = 1e-12);

/// S and C for a three-qubit state: closed forms when rho is X-form,
/// otherwise the Svetlichny search and genuine_concurrence().
MeasureResult measure(const DensityMatrix& rho, const BruteforceOptions& opts = {},
                      bool want_s = true, bool want_c = true);

}  // namespace gtn
