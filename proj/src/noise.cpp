#include "gtn/noise.hpp"

#include <cmath>
#include <string>

namespace gtn {

namespace {

void check_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
  }
}

GadParams finish_bath(const BathParams& b, double gamma) {
  if (gamma < 0.0) throw FormulaDomainError(gamma);
  const double r = 1.0 - std::exp(-gamma * b.storage_time);
  const double p = 1.0 / (1.0 + std::exp(-b.omega / b.temperature));
  return {r, p};
}

}  // namespace

void GadParams::validate() const {
  check_unit_interval(r, "decoherence strength r");
  check_unit_interval(p, "GAD parameter p");
}

void BathParams::validate() const {
  if (!(gamma0 >= 0.0)) throw DomainError("gamma0 must be >= 0");
  if (!(storage_time >= 0.0)) throw DomainError("storage time must be >= 0");
  if (!(omega > 0.0)) throw DomainError("transition frequency must be > 0");
  if (!(temperature > 0.0)) throw DomainError("environment temperature must be > 0");
}

FilterParams FilterParams::strength(double f) {
  if (!(f > 0.0 && f < 1.0)) {
    throw DomainError("filter strength must lie in (0, 1), got " + std::to_string(f));
  }
  FilterParams out;
  out.f_ = f;
  return out;
}

double FilterParams::f() const {
  if (!f_) throw DomainError("filter is inactive");
  return *f_;
}

KrausSet gad_kraus(const GadParams& g) {
  g.validate();
  const double sp = std::sqrt(g.p);
  const double sq = std::sqrt(1.0 - g.p);
  const double sr = std::sqrt(g.r);
  const double sd = std::sqrt(1.0 - g.r);
  Matrix2 e0, e1, e2, e3;
  e0 << sp, 0.0, 0.0, sp * sd;
  e1 << 0.0, sp * sr, 0.0, 0.0;
  e2 << sq * sd, 0.0, 0.0, sq;
  e3 << 0.0, 0.0, sq * sr, 0.0;
  return KrausSet({e0, e1, e2, e3});
}

GadParams gad_from_bath(const BathParams& b) {
  b.validate();
  const double gamma = (2.0 / (std::exp(-b.omega / b.temperature) - 1.0) + 1.0) * b.gamma0;
  return finish_bath(b, gamma);
}

GadParams gad_from_bath_thermal(const BathParams& b) {
  b.validate();
  const double gamma = (2.0 / std::expm1(b.omega / b.temperature) + 1.0) * b.gamma0;
  return finish_bath(b, gamma);
}

Matrix2 filter_operator(const FilterParams& f) {
  const double s = f.f();
  Matrix2 m;
  m << std::sqrt(1.0 - s), 0.0, 0.0, std::sqrt(s);
  return m;
}

Evolved evolve(const PureState& psi5, const GadParams& g, const FilterParams& f) {
  const Labels expected{Mode::A, Mode::B1, Mode::B2, Mode::C1, Mode::C2};
  if (psi5.labels() != expected) {
    throw LabelError("evolve expects a register over (A, B1, B2, C1, C2)");
  }
  DensityMatrix rho = apply_single_qubit_kraus(DensityMatrix::from_pure(psi5),
                                               gad_kraus(g), Mode::A);
  if (!f.active()) return {std::move(rho), 1.0};

  const DensityMatrix filtered =
      apply_single_qubit_kraus(rho, KrausSet({filter_operator(f)}), Mode::A);
  const double z = filtered.trace();
  if (!(z > kAnnihilationThreshold)) throw FilterAnnihilation(z);
  return {filtered.normalize(), z};
}

}  // namespace gtn
