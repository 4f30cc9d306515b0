#pragma once

// Dense linear algebra on small labelled qubit registers.
//
// Registers are ordered by the global mode order (A, B1, B2, C1, C2); the
// first label is the most significant bit of a basis index.

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gtn/errors.hpp"

namespace gtn {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Matrix2 = Eigen::Matrix2cd;

enum class Mode : std::uint8_t { A = 0, B1, B2, C1, C2 };

inline constexpr std::array<Mode, 5> kAllModes{Mode::A, Mode::B1, Mode::B2,
                                               Mode::C1, Mode::C2};

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

using Labels = std::vector<Mode>;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kPositivityTolerance = 1e-10;
inline constexpr int kMaxQubits = 8;

class PureState {
 public:
  /// Throws InvalidState unless the amplitudes have unit norm (1e-12).
  PureState(Vector amplitudes, Labels labels);

  static PureState basis(Labels labels, std::size_t index);

  const Vector& amplitudes() const { return amplitudes_; }
  const Labels& labels() const { return labels_; }
  int qubits() const { return static_cast<int>(labels_.size()); }
  Complex amplitude(std::size_t index) const { return amplitudes_(index); }

 private:
  Vector amplitudes_;
  Labels labels_;
};

namespace detail {
struct Access;
}

class DensityMatrix {
 public:
  /// Validates dimension, labels, Hermiticity, positivity and, when
  /// `normalized`, unit trace.
  DensityMatrix(Matrix entries, Labels labels, bool normalized = true);

  static DensityMatrix from_pure(const PureState& psi);

  const Matrix& entries() const { return entries_; }
  const Labels& labels() const { return labels_; }
  bool normalized() const { return normalized_; }
  int qubits() const { return static_cast<int>(labels_.size()); }
  Eigen::Index dim() const { return entries_.rows(); }
  Complex operator()(Eigen::Index row, Eigen::Index col) const {
    return entries_(row, col);
  }

  double trace() const;
  double min_eigenvalue() const;

  /// Divides by the trace. Throws InvalidState on a vanishing trace.
  DensityMatrix normalize() const;

 private:
  struct Trusted {};
  DensityMatrix(Trusted, Matrix entries, Labels labels, bool normalized);
  friend struct detail::Access;

  Matrix entries_;
  Labels labels_;
  bool normalized_;
};

/// Single-qubit Kraus operators. `trace_preserving` is derived from the
/// completeness relation sum E^dagger E = I (1e-12).
struct KrausSet {
  explicit KrausSet(std::vector<Matrix2> ops);

  std::vector<Matrix2> ops;
  bool trace_preserving;

  /// Max entrywise deviation of sum E^dagger E from the identity.
  double completeness_error() const;
};

PureState tensor(const PureState& a, const PureState& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Keeps the listed modes (in the register's own order). Throws LabelError
/// when `keep` is empty or names a mode not in the register.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const Mode> keep);

DensityMatrix apply_single_qubit_kraus(const DensityMatrix& rho,
                                       const KrausSet& ops, Mode target);

/// Reinterprets qubit k of `rho` as mode `labels[k]` and reorders the
/// register into global order.
DensityMatrix permute_to_global_order(const DensityMatrix& rho, const Labels& labels);

/// Exchanges Bob's and Charlie's modes (B1<->C1, B2<->C2).
DensityMatrix exchange_bob_charlie(const DensityMatrix& rho);

/// Three-qubit X state. Diagonal is (mu1..mu4, nu4..nu1); w_i sits at
/// (i-1, 8-i) and its conjugate at the mirrored position.
struct XState {
  std::array<double, 4> mu{};
  std::array<double, 4> nu{};
  std::array<Complex, 4> w{};

  Matrix to_matrix() const;
  /// Throws InvalidState when the diagonal does not sum to one (1e-10) or a
  /// block violates |w_i|^2 <= mu_i nu_i.
  void validate() const;
};

XState as_x_state(const DensityMatrix& rho, double tol = 1e-12);

}  // namespace gtn
