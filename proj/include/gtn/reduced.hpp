#pragma once

// Tripartite reductions of the evolved five-mode state, by partial trace and
// by closed-form matrix entries.

#include <array>
#include <string_view>
#include <vector>

#include "gtn/noise.hpp"
#include "gtn/spacetime.hpp"

namespace gtn {

enum class Subsystem { AB1C1, AB1B2, AC1C2, AB2C2, AB1C2, AB2C1 };

inline constexpr std::array<Subsystem, 6> kAllSubsystems{
    Subsystem::AB1C1, Subsystem::AB1B2, Subsystem::AC1C2,
    Subsystem::AB2C2, Subsystem::AB1C2, Subsystem::AB2C1};

std::string_view to_string(Subsystem sub);
Subsystem parse_subsystem(std::string_view text);
std::array<Mode, 3> modes_of(Subsystem sub);

/// Full physical parameter tuple.
struct ModelParams {
  double alpha = 0.70710678118654752440;
  double omega = 1.0;
  double temperature = 0.0;
  double r = 0.0;
  double p = 1.0;
  FilterParams filter = FilterParams::none();

  InitialStateParams initial() const { return {alpha}; }
  SpacetimeParams spacetime() const { return {omega, temperature}; }
  GadParams gad() const { return {r, p}; }
  void validate() const;
};

/// dilate_state followed by evolve.
Evolved evolve_model(const ModelParams& mp);

/// Partial trace of the normalized five-mode state onto `sub` (labels in
/// global order). AC1C2 and AB2C1 go through the Bob/Charlie exchange.
DensityMatrix reduce(const DensityMatrix& rho5, Subsystem sub);

/// Closed-form reduced matrices, with the damping strength r and bath
/// weight p entering the tabulated entries, divided by their normalization
/// Z1. An inactive filter is evaluated at f = 1/2. AC1C2 and AB2C1 reuse
/// the AB1B2 and AB1C2 forms through the exchange symmetry.
///
/// The AB1B2 form is a valid state but does not agree with reduce(); see
/// closed_form_discrepancy().
DensityMatrix closed_form(Subsystem sub, const ModelParams& mp);

/// Normalization Z1 of the closed form for `sub` (before division).
double closed_form_normalization(Subsystem sub, const ModelParams& mp);

/// Max entrywise |closed_form - reduce| at one parameter tuple.
double closed_form_discrepancy(Subsystem sub, const ModelParams& mp);

}  // namespace gtn
