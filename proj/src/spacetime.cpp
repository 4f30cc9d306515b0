#include "gtn/spacetime.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace gtn {

double hawking_temperature(double mass) {
  if (!(mass > 0.0)) {
    throw DomainError("black-hole mass must be positive, got " + std::to_string(mass));
  }
  return 1.0 / (8.0 * std::numbers::pi * mass);
}

SpacetimeParams SpacetimeParams::from_mass(double omega, double mass) {
  SpacetimeParams p{omega, hawking_temperature(mass)};
  p.validate();
  return p;
}

void SpacetimeParams::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw DomainError("mode frequency must be positive, got " + std::to_string(omega));
  }
  if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
    throw DomainError("Hawking temperature must be >= 0, got " +
                      std::to_string(temperature));
  }
}

void InitialStateParams::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError("state parameter alpha must lie in [0, 1], got " +
                      std::to_string(alpha));
  }
}

KruskalAmplitudes kruskal_amplitudes(const SpacetimeParams& params) {
  params.validate();
  if (params.temperature < kZeroTemperatureRatio * params.omega) return {};
  const double x = params.omega / params.temperature;
  // c^2 = (e^{-x} + 1)^{-1}, s^2 = (e^{x} + 1)^{-1}
  const double c2 = 1.0 / (std::exp(-x) + 1.0);
  const double s2 = 1.0 / (std::exp(x) + 1.0);
  return {std::sqrt(c2), std::sqrt(s2), 1.0 / std::sqrt(std::exp(x) + std::exp(-x) + 2.0)};
}

PureState kruskal_mode_pair(const SpacetimeParams& params, bool excited, Mode outside,
                            Mode inside) {
  Vector v = Vector::Zero(4);
  if (excited) {
    v(0b10) = 1.0;
  } else {
    const auto amp = kruskal_amplitudes(params);
    v(0b00) = amp.c;
    v(0b11) = amp.s;
  }
  return PureState(std::move(v), {outside, inside});
}

PureState dilate_state(const InitialStateParams& init, const SpacetimeParams& st) {
  init.validate();
  st.validate();
  const double alpha = init.alpha;
  const double beta = std::sqrt(std::max(0.0, 1.0 - alpha * alpha));

  const PureState zero_a = PureState::basis({Mode::A}, 0);
  const PureState one_a = PureState::basis({Mode::A}, 1);
  const auto vac_b = kruskal_mode_pair(st, false, Mode::B1, Mode::B2);
  const auto vac_c = kruskal_mode_pair(st, false, Mode::C1, Mode::C2);
  const auto exc_b = kruskal_mode_pair(st, true, Mode::B1, Mode::B2);
  const auto exc_c = kruskal_mode_pair(st, true, Mode::C1, Mode::C2);

  const Vector ground = tensor(tensor(zero_a, vac_b), vac_c).amplitudes();
  const Vector excited = tensor(tensor(one_a, exc_b), exc_c).amplitudes();
  return PureState(alpha * ground + beta * excited,
                   {Mode::A, Mode::B1, Mode::B2, Mode::C1, Mode::C2});
}

}  // namespace gtn
