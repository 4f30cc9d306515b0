#pragma once

// Kruskal-mode dilation of Dirac modes near a Schwarzschild horizon.
// Natural units throughout (hbar = c = k_B = G = 1).

#include "gtn/qcore.hpp"

namespace gtn {

/// T = 1 / (8 pi M). Throws DomainError for M <= 0.
double hawking_temperature(double mass);

struct SpacetimeParams {
  double omega = 1.0;        ///< mode frequency
  double temperature = 0.0;  ///< Hawking temperature

  static SpacetimeParams from_mass(double omega, double mass);

  /// Throws DomainError unless omega > 0 and temperature >= 0.
  void validate() const;
};

struct InitialStateParams {
  double alpha = 0.0;
  void validate() const;
};

/// Amplitudes of the Kruskal vacuum c|00> + s|11> over (outside, inside).
struct KruskalAmplitudes {
  double c = 1.0;
  double s = 0.0;
  double cs = 0.0;  ///< c*s evaluated without cancellation
};

/// Temperatures below this multiple of omega use the exact T = 0 branch.
inline constexpr double kZeroTemperatureRatio = 1e-6;

KruskalAmplitudes kruskal_amplitudes(const SpacetimeParams& params);

/// Two-qubit (outside, inside) state of the Kruskal vacuum or the Kruskal
/// single-particle excitation.
PureState kruskal_mode_pair(const SpacetimeParams& params, bool excited,
                            Mode outside = Mode::B1, Mode inside = Mode::B2);

/// alpha|0>_A|0>_B|0>_C + sqrt(1 - alpha^2)|1>_A|1>_B|1>_C with Bob's and
/// Charlie's Kruskal modes expanded over (A, B1, B2, C1, C2).
PureState dilate_state(const InitialStateParams& init, const SpacetimeParams& st);

}  // namespace gtn
