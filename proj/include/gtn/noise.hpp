#pragma once

// Alice-side decoherence: generalized amplitude damping followed by an
// optional local filter and renormalization.

#include <optional>

#include "gtn/qcore.hpp"

namespace gtn {

/// Generalized amplitude damping: strength r and mixing p, both in [0, 1].
/// p = 1 is plain amplitude damping.
struct GadParams {
  double r = 0.0;
  double p = 1.0;
  void validate() const;
};

/// Thermal bath description from which (r, p) can be derived.
struct BathParams {
  double gamma0 = 0.0;        ///< base relaxation rate
  double storage_time = 0.0;  ///< t
  double omega = 1.0;         ///< transition frequency
  double temperature = 1.0;   ///< environment temperature
  void validate() const;
};

class FilterParams {
 public:
  /// The filter step is skipped.
  static FilterParams none() { return FilterParams{}; }
  /// Throws DomainError unless 0 < f < 1.
  static FilterParams strength(double f);
  /// Parses the CSV convention: negative means none.
  static FilterParams from_csv(double f) { return f < 0.0 ? none() : strength(f); }

  bool active() const { return f_.has_value(); }
  /// Strength; throws DomainError when inactive.
  double f() const;
  /// f, or -1 when the filter is skipped.
  double csv_value() const { return f_.value_or(-1.0); }
  /// Strength used where an inactive filter must be expressed as a value:
  /// f = 1/2 is proportional to the identity.
  double effective_strength() const { return f_.value_or(0.5); }

  friend bool operator==(const FilterParams&, const FilterParams&) = default;

 private:
  std::optional<double> f_;
};

KrausSet gad_kraus(const GadParams& g);

/// r = 1 - exp(-gamma t), gamma = [2 / (exp(-omega/T) - 1) + 1] gamma0,
/// p = 1 / (1 + exp(-omega/T)). The bracket is negative for every
/// omega/T > 0, so any positive gamma0 raises FormulaDomainError.
GadParams gad_from_bath(const BathParams& b);

/// Same relation with the thermal occupation factor 2/(exp(+omega/T) - 1),
/// i.e. gamma = coth(omega / 2T) gamma0, which is always nonnegative.
GadParams gad_from_bath_thermal(const BathParams& b);

/// diag(sqrt(1 - f), sqrt(f)); throws DomainError for an inactive filter.
Matrix2 filter_operator(const FilterParams& f);

struct Evolved {
  DensityMatrix rho;  ///< normalized five-mode state
  double z = 1.0;     ///< filter success probability (1 without a filter)
};

inline constexpr double kAnnihilationThreshold = 1e-15;

/// GAD on mode A, then the filter on mode A (if active) and division by its
/// success probability. Throws FilterAnnihilation when Z <= 1e-15.
Evolved evolve(const PureState& psi5, const GadParams& g, const FilterParams& f);

}  // namespace gtn
