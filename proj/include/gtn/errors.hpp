#pragma once

#include <stdexcept>
#include <string>

namespace gtn {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two registers being combined share a mode label.
struct LabelCollision : Error {
  using Error::Error;
};

/// A mode label is missing, duplicated, or out of global order.
struct LabelError : Error {
  using Error::Error;
};

/// Amplitudes or matrix entries violate a state invariant.
struct InvalidState : Error {
  using Error::Error;
};

/// A parameter lies outside its admissible domain.
struct DomainError : Error {
  using Error::Error;
};

/// An 8x8 matrix has weight outside the diagonal and anti-diagonal.
struct NotXForm : Error {
  NotXForm(int row, int col, double magnitude)
      : Error("matrix is not X-form: |rho(" + std::to_string(row) + "," +
              std::to_string(col) + ")| = " + std::to_string(magnitude)),
        row(row), col(col), magnitude(magnitude) {}
  int row;
  int col;
  double magnitude;
};

/// The bath-to-GAD relation produced a negative relaxation rate.
struct FormulaDomainError : Error {
  explicit FormulaDomainError(double gamma)
      : Error("relaxation rate evaluates negative: gamma = " +
              std::to_string(gamma)),
        gamma(gamma) {}
  double gamma;
};

/// The filter removed (numerically) all weight from the state.
struct FilterAnnihilation : Error {
  explicit FilterAnnihilation(double z, std::string where = {})
      : Error("filter success probability " + std::to_string(z) +
              " is below 1e-15" + (where.empty() ? "" : " at " + where)),
        z(z) {}
  double z;
};

/// A root finder's bracket does not straddle the target.
///
/// `below_target` is true when both ends lie at or below the target (the
/// quantity is already absent), false when both ends lie above it (it never
/// dies inside the bracket).
struct NoCrossing : Error {
  NoCrossing(bool below_target, double at_lo, double at_hi)
      : Error(std::string("no crossing in bracket: ") +
              (below_target ? "already absent" : "never dies") + " (" +
              std::to_string(at_lo) + ", " + std::to_string(at_hi) + ")"),
        below_target(below_target), at_lo(at_lo), at_hi(at_hi) {}
  bool below_target;
  double at_lo;
  double at_hi;
};

struct UnknownPreset : Error {
  using Error::Error;
};

}  // namespace gtn
