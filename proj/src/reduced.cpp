#include "gtn/reduced.hpp"

#include <cmath>
#include <string>

namespace gtn {

namespace {

const std::array<std::string_view, 6> kSubsystemNames{"AB1C1", "AB1B2", "AC1C2",
                                                      "AB2C2", "AB1C2", "AB2C1"};

// Thermal factors of the tabulated entries, evaluated without overflow:
// c2 = 1/(1+e^{-x}), s2 = 1/(1+e^{x}), cs2 = 1/(2+e^{x}+e^{-x}) = sech^2(x/2)/4,
// c4 = 1/(1+e^{-x})^2 = e^{2x}/(1+e^{x})^2, s4 = 1/(1+e^{x})^2, cs = sqrt(cs2).
struct Thermal {
  double c2, s2, cs2, c4, s4, cs;
};

Thermal thermal(const ModelParams& mp) {
  const auto k = kruskal_amplitudes(mp.spacetime());
  const double c2 = k.c * k.c;
  const double s2 = k.s * k.s;
  return {c2, s2, k.cs * k.cs, c2 * c2, s2 * s2, k.cs};
}

// Normalization shared by the AB1C1, AB2C2 and AB1C2 forms.
double z_common(double a2, double r, double p, double f) {
  return f + (-1.0 + 2.0 * f) * (a2 * (-1.0 + r) - r * p);
}

struct Tabulated {
  XState x;  // unnormalized entries
  double z;
};

Tabulated tabulated_ab1c1(const ModelParams& mp, const Thermal& t) {
  const double a2 = mp.alpha * mp.alpha, r = mp.r, p = mp.p;
  const double f = mp.filter.effective_strength();
  const double kept = 1.0 + r * (-1.0 + p);
  Tabulated out;
  auto& x = out.x;
  x.mu[0] = a2 * t.c4 * (1.0 - f) * kept;
  x.mu[1] = x.mu[2] = a2 * (1.0 - f) * kept * t.cs2;
  x.mu[3] = (1.0 - f) * (r * p + a2 * (kept * t.s4 - r * p));
  x.nu[0] = a2 * r * f * (1.0 - p) * t.s4 + (1.0 - a2) * f * (1.0 - r * p);
  x.nu[1] = x.nu[2] = a2 * r * f * (1.0 - p) * t.cs2;
  x.nu[3] = a2 * r * f * (1.0 - p) * t.c4;
  x.w[0] = mp.alpha * std::sqrt(1.0 - a2) * std::sqrt(1.0 - r) * t.c2 *
           std::sqrt(f * (1.0 - f));
  out.z = z_common(a2, r, p, f);
  return out;
}

Tabulated tabulated_ab1b2(const ModelParams& mp, const Thermal& t) {
  const double a2 = mp.alpha * mp.alpha, r = mp.r, p = mp.p;
  const double f = mp.filter.effective_strength();
  Tabulated out;
  auto& x = out.x;
  x.mu[0] = (1.0 - f) * (a2 * (1.0 - r) * (1.0 - p) * t.c2 + a2 * p * t.c2);
  x.mu[1] = 0.0;
  x.mu[2] = (1.0 - a2) * r * (1.0 - f) * p;
  x.mu[3] = a2 * r * (1.0 - f) * p * t.s2;
  x.nu[0] = f * (a2 * (1.0 - p) * t.s2 + a2 * (1.0 - r) * p * t.s2);
  x.nu[1] = f * ((1.0 - a2) * (1.0 - p) + (1.0 - a2) * (1.0 - r) * p);
  x.nu[2] = 0.0;
  x.nu[3] = a2 * r * f * (1.0 - p) * t.c2;
  x.w[0] = std::sqrt(1.0 - f) * std::sqrt(f) *
           (a2 * std::sqrt(1.0 - r) * (1.0 - p) * t.cs + a2 * std::sqrt(1.0 - r) * p * t.cs);
  out.z = (f + r * p - 2.0 * r * f * p) * t.s2 + t.c2 * z_common(a2, r, p, f);
  return out;
}

Tabulated tabulated_ab2c2(const ModelParams& mp, const Thermal& t) {
  const double a2 = mp.alpha * mp.alpha, r = mp.r, p = mp.p;
  const double f = mp.filter.effective_strength();
  const double ab = mp.alpha * std::sqrt(1.0 - a2);
  Tabulated out;
  auto& x = out.x;
  x.mu[0] = (1.0 - f) * (a2 * (1.0 - r) * (1.0 - p) * t.c4 + (1.0 - a2) * r * p + a2 * p * t.c4);
  x.mu[1] = x.mu[2] = (1.0 - f) * (a2 * (1.0 - r) * (1.0 - p) * t.cs2 + a2 * p * t.cs2);
  x.mu[3] = (1.0 - f) * (a2 * (1.0 - r) * (1.0 - p) * t.s4 + a2 * p * t.s4);
  x.nu[0] = a2 * r * f * (1.0 - p) * t.s4;
  x.nu[1] = x.nu[2] = a2 * r * f * (1.0 - p) * t.cs2;
  x.nu[3] = f * ((1.0 - a2) * (1.0 - p) + a2 * r * (1.0 - p) * t.c4 + (1.0 - a2) * (1.0 - r) * p);
  x.w[3] = std::sqrt(1.0 - f) * std::sqrt(f) *
           (ab * std::sqrt(1.0 - r) * (1.0 - p) * t.s2 + ab * std::sqrt(1.0 - r) * p * t.s2);
  out.z = z_common(a2, r, p, f);
  return out;
}

Tabulated tabulated_ab1c2(const ModelParams& mp, const Thermal& t) {
  const double a2 = mp.alpha * mp.alpha, r = mp.r, p = mp.p;
  const double f = mp.filter.effective_strength();
  const double ab = mp.alpha * std::sqrt(1.0 - a2);
  Tabulated out;
  auto& x = out.x;
  x.mu[0] = (1.0 - f) * (a2 * (1.0 - r) * (1.0 - p) * t.c4 + a2 * p * t.c4);
  x.mu[1] = (1.0 - f) * (a2 * (1.0 - r) * (1.0 - p) * t.cs2 + a2 * p * t.cs2);
  x.mu[2] = (1.0 - f) * (a2 * (1.0 - r) * (1.0 - p) * t.cs2 + (1.0 - a2) * r * p + a2 * p * t.cs2);
  x.mu[3] = (1.0 - f) * (a2 * (1.0 - r) * (1.0 - p) * t.s4 + a2 * p * t.s4);
  x.nu[0] = a2 * r * f * (1.0 - p) * t.s4;
  x.nu[1] = f * ((1.0 - a2) * (1.0 - p) + a2 * r * (1.0 - p) * t.cs2 + (1.0 - a2) * (1.0 - r) * p);
  x.nu[2] = a2 * r * f * (1.0 - p) * t.cs2;
  x.nu[3] = a2 * r * f * (1.0 - p) * t.c4;
  x.w[1] = std::sqrt(1.0 - f) * std::sqrt(f) *
           (ab * std::sqrt(1.0 - r) * (1.0 - p) * t.cs + ab * std::sqrt(1.0 - r) * p * t.cs);
  out.z = z_common(a2, r, p, f);
  return out;
}

Tabulated tabulated(Subsystem sub, const ModelParams& mp) {
  mp.validate();
  const Thermal t = thermal(mp);
  switch (sub) {
    case Subsystem::AB1C1: return tabulated_ab1c1(mp, t);
    case Subsystem::AB1B2:
    case Subsystem::AC1C2: return tabulated_ab1b2(mp, t);
    case Subsystem::AB2C2: return tabulated_ab2c2(mp, t);
    case Subsystem::AB1C2:
    case Subsystem::AB2C1: return tabulated_ab1c2(mp, t);
  }
  throw LabelError("unknown subsystem");
}

Labels labels_of(Subsystem sub) {
  const auto m = modes_of(sub);
  return {m.begin(), m.end()};
}

}  // namespace

std::string_view to_string(Subsystem sub) {
  return kSubsystemNames[static_cast<std::size_t>(sub)];
}

Subsystem parse_subsystem(std::string_view text) {
  for (std::size_t k = 0; k < kSubsystemNames.size(); ++k) {
    if (kSubsystemNames[k] == text) return kAllSubsystems[k];
  }
  throw LabelError("unknown subsystem '" + std::string(text) + "'");
}

std::array<Mode, 3> modes_of(Subsystem sub) {
  switch (sub) {
    case Subsystem::AB1C1: return {Mode::A, Mode::B1, Mode::C1};
    case Subsystem::AB1B2: return {Mode::A, Mode::B1, Mode::B2};
    case Subsystem::AC1C2: return {Mode::A, Mode::C1, Mode::C2};
    case Subsystem::AB2C2: return {Mode::A, Mode::B2, Mode::C2};
    case Subsystem::AB1C2: return {Mode::A, Mode::B1, Mode::C2};
    case Subsystem::AB2C1: return {Mode::A, Mode::B2, Mode::C1};
  }
  throw LabelError("unknown subsystem");
}

void ModelParams::validate() const {
  initial().validate();
  spacetime().validate();
  gad().validate();
}

Evolved evolve_model(const ModelParams& mp) {
  mp.validate();
  return evolve(dilate_state(mp.initial(), mp.spacetime()), mp.gad(), mp.filter);
}

DensityMatrix reduce(const DensityMatrix& rho5, Subsystem sub) {
  switch (sub) {
    case Subsystem::AC1C2: {
      const auto mirrored = exchange_bob_charlie(rho5);
      return exchange_bob_charlie(reduce(mirrored, Subsystem::AB1B2));
    }
    case Subsystem::AB2C1: {
      const auto mirrored = exchange_bob_charlie(rho5);
      return exchange_bob_charlie(reduce(mirrored, Subsystem::AB1C2));
    }
    default: {
      const auto keep = modes_of(sub);
      return partial_trace(rho5, keep);
    }
  }
}

double closed_form_normalization(Subsystem sub, const ModelParams& mp) {
  return tabulated(sub, mp).z;
}

DensityMatrix closed_form(Subsystem sub, const ModelParams& mp) {
  const Tabulated pr = tabulated(sub, mp);
  if (!(pr.z > kAnnihilationThreshold)) throw FilterAnnihilation(pr.z);
  Matrix m = pr.x.to_matrix() / pr.z;
  switch (sub) {
    case Subsystem::AC1C2:
      return exchange_bob_charlie(DensityMatrix(std::move(m), labels_of(Subsystem::AB1B2)));
    case Subsystem::AB2C1:
      return exchange_bob_charlie(DensityMatrix(std::move(m), labels_of(Subsystem::AB1C2)));
    default:
      return DensityMatrix(std::move(m), labels_of(sub));
  }
}

double closed_form_discrepancy(Subsystem sub, const ModelParams& mp) {
  const auto pipeline = reduce(evolve_model(mp).rho, sub);
  const auto tabulated_form = closed_form(sub, mp);
  return (pipeline.entries() - tabulated_form.entries()).cwiseAbs().maxCoeff();
}

}  // namespace gtn
