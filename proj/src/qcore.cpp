#include "gtn/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace gtn {

namespace detail {
struct Access {
  static DensityMatrix make(Matrix entries, Labels labels, bool normalized) {
    return DensityMatrix(DensityMatrix::Trusted{}, std::move(entries),
                         std::move(labels), normalized);
  }
};
}  // namespace detail

namespace {

constexpr std::array<std::string_view, 5> kModeNames{"A", "B1", "B2", "C1", "C2"};

int order_of(Mode m) { return static_cast<int>(m); }

void check_labels(const Labels& labels) {
  if (labels.empty() || labels.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw LabelError("register must hold 1.." + std::to_string(kMaxQubits) +
                     " modes, got " + std::to_string(labels.size()));
  }
  for (std::size_t k = 1; k < labels.size(); ++k) {
    if (order_of(labels[k - 1]) >= order_of(labels[k])) {
      throw LabelError("labels must be unique and in global order (A,B1,B2,C1,C2)");
    }
  }
}

std::size_t dim_for(std::size_t qubits) { return std::size_t{1} << qubits; }

// Bit mask of qubit `pos` in an n-qubit register (position 0 is the MSB).
std::size_t bit_of(int pos, int n) { return std::size_t{1} << (n - 1 - pos); }

// new_index[i] for reordering qubits so that new qubit k is old qubit from[k].
std::vector<std::size_t> reorder_map(const std::vector<int>& from) {
  const int n = static_cast<int>(from.size());
  const std::size_t dim = dim_for(from.size());
  std::vector<std::size_t> map(dim);
  for (std::size_t old_index = 0; old_index < dim; ++old_index) {
    std::size_t new_index = 0;
    for (int k = 0; k < n; ++k) {
      if (old_index & bit_of(from[k], n)) new_index |= bit_of(k, n);
    }
    map[old_index] = new_index;
  }
  return map;
}

// Order in which to read the qubits of a register labelled `labels` so the
// result is in global order.
std::vector<int> sorting_order(const Labels& labels) {
  std::vector<int> from(labels.size());
  std::iota(from.begin(), from.end(), 0);
  std::sort(from.begin(), from.end(), [&](int x, int y) {
    return order_of(labels[x]) < order_of(labels[y]);
  });
  return from;
}

Labels sorted_labels(const Labels& labels, const std::vector<int>& from) {
  Labels out;
  out.reserve(labels.size());
  for (int k : from) out.push_back(labels[k]);
  return out;
}

void check_disjoint(const Labels& a, const Labels& b) {
  for (Mode m : a) {
    if (std::find(b.begin(), b.end(), m) != b.end()) {
      throw LabelCollision("mode " + std::string(to_string(m)) +
                           " appears in both registers");
    }
  }
}

Labels concat(const Labels& a, const Labels& b) {
  Labels out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

std::string_view to_string(Mode mode) { return kModeNames[order_of(mode)]; }

Mode parse_mode(std::string_view text) {
  for (std::size_t k = 0; k < kModeNames.size(); ++k) {
    if (kModeNames[k] == text) return kAllModes[k];
  }
  throw LabelError("unknown mode label '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------

PureState::PureState(Vector amplitudes, Labels labels)
    : amplitudes_(std::move(amplitudes)), labels_(std::move(labels)) {
  check_labels(labels_);
  if (static_cast<std::size_t>(amplitudes_.size()) != dim_for(labels_.size())) {
    throw InvalidState("amplitude vector has length " +
                       std::to_string(amplitudes_.size()) + ", expected 2^" +
                       std::to_string(labels_.size()));
  }
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTolerance) {
    throw InvalidState("pure state norm^2 = " + std::to_string(norm2));
  }
}

PureState PureState::basis(Labels labels, std::size_t index) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim_for(labels.size())));
  if (index >= static_cast<std::size_t>(v.size())) {
    throw InvalidState("basis index out of range");
  }
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(std::move(v), std::move(labels));
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(Trusted, Matrix entries, Labels labels, bool normalized)
    : entries_(std::move(entries)), labels_(std::move(labels)), normalized_(normalized) {}

DensityMatrix::DensityMatrix(Matrix entries, Labels labels, bool normalized)
    : entries_(std::move(entries)), labels_(std::move(labels)), normalized_(normalized) {
  check_labels(labels_);
  const auto dim = static_cast<Eigen::Index>(dim_for(labels_.size()));
  if (entries_.rows() != dim || entries_.cols() != dim) {
    throw InvalidState("density matrix must be " + std::to_string(dim) + "x" +
                       std::to_string(dim));
  }
  const double asym = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTolerance) {
    throw InvalidState("matrix is not Hermitian (max |rho - rho^dagger| = " +
                       std::to_string(asym) + ")");
  }
  if (normalized_ && std::abs(trace() - 1.0) > kNormTolerance) {
    throw InvalidState("normalized density matrix has trace " + std::to_string(trace()));
  }
  const double lowest = min_eigenvalue();
  if (lowest < -kPositivityTolerance) {
    throw InvalidState("matrix is not positive semidefinite (min eigenvalue " +
                       std::to_string(lowest) + ")");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  const Vector& v = psi.amplitudes();
  return detail::Access::make(v * v.adjoint(), psi.labels(), true);
}

double DensityMatrix::trace() const { return entries_.trace().real(); }

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

DensityMatrix DensityMatrix::normalize() const {
  const double tr = trace();
  if (!(tr > 0.0)) {
    throw InvalidState("cannot normalize a matrix with trace " + std::to_string(tr));
  }
  return detail::Access::make(entries_ / tr, labels_, true);
}

// ---------------------------------------------------------------------------

KrausSet::KrausSet(std::vector<Matrix2> operators) : ops(std::move(operators)) {
  if (ops.empty()) throw InvalidState("Kraus set must hold at least one operator");
  trace_preserving = completeness_error() <= kNormTolerance;
}

double KrausSet::completeness_error() const {
  Matrix2 sum = Matrix2::Zero();
  for (const auto& e : ops) sum += e.adjoint() * e;
  return (sum - Matrix2::Identity()).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------

PureState tensor(const PureState& a, const PureState& b) {
  check_disjoint(a.labels(), b.labels());
  const Vector& va = a.amplitudes();
  const Vector& vb = b.amplitudes();
  Vector joint(va.size() * vb.size());
  for (Eigen::Index i = 0; i < va.size(); ++i) {
    joint.segment(i * vb.size(), vb.size()) = va(i) * vb;
  }
  const Labels labels = concat(a.labels(), b.labels());
  const auto from = sorting_order(labels);
  const auto map = reorder_map(from);
  Vector out(joint.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    out(static_cast<Eigen::Index>(map[i])) = joint(static_cast<Eigen::Index>(i));
  }
  return PureState(std::move(out), sorted_labels(labels, from));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  check_disjoint(a.labels(), b.labels());
  const Matrix& ma = a.entries();
  const Matrix& mb = b.entries();
  Matrix joint(ma.rows() * mb.rows(), ma.cols() * mb.cols());
  for (Eigen::Index i = 0; i < ma.rows(); ++i) {
    for (Eigen::Index j = 0; j < ma.cols(); ++j) {
      joint.block(i * mb.rows(), j * mb.cols(), mb.rows(), mb.cols()) = ma(i, j) * mb;
    }
  }
  auto product = detail::Access::make(std::move(joint), concat(a.labels(), b.labels()),
                                      a.normalized() && b.normalized());
  return permute_to_global_order(product, product.labels());
}

DensityMatrix permute_to_global_order(const DensityMatrix& rho, const Labels& labels) {
  if (labels.size() != rho.labels().size()) {
    throw LabelError("relabelling must name every qubit of the register");
  }
  const auto from = sorting_order(labels);
  Labels target = sorted_labels(labels, from);
  check_labels(target);
  const auto map = reorder_map(from);
  const Matrix& m = rho.entries();
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < map.size(); ++i) {
    for (std::size_t j = 0; j < map.size(); ++j) {
      out(static_cast<Eigen::Index>(map[i]), static_cast<Eigen::Index>(map[j])) =
          m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return detail::Access::make(std::move(out), std::move(target), rho.normalized());
}

DensityMatrix exchange_bob_charlie(const DensityMatrix& rho) {
  Labels swapped;
  swapped.reserve(rho.labels().size());
  for (Mode m : rho.labels()) {
    switch (m) {
      case Mode::B1: swapped.push_back(Mode::C1); break;
      case Mode::B2: swapped.push_back(Mode::C2); break;
      case Mode::C1: swapped.push_back(Mode::B1); break;
      case Mode::C2: swapped.push_back(Mode::B2); break;
      case Mode::A: swapped.push_back(Mode::A); break;
    }
  }
  return permute_to_global_order(rho, swapped);
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const Mode> keep) {
  const Labels& labels = rho.labels();
  const int n = rho.qubits();
  if (keep.empty()) throw LabelError("partial trace must keep at least one mode");
  std::vector<bool> kept(labels.size(), false);
  for (Mode m : keep) {
    auto it = std::find(labels.begin(), labels.end(), m);
    if (it == labels.end()) {
      throw LabelError("mode " + std::string(to_string(m)) + " is not in the register");
    }
    kept[static_cast<std::size_t>(it - labels.begin())] = true;
  }
  std::vector<int> keep_pos, trace_pos;
  Labels out_labels;
  for (int k = 0; k < n; ++k) {
    if (kept[k]) {
      keep_pos.push_back(k);
      out_labels.push_back(labels[k]);
    } else {
      trace_pos.push_back(k);
    }
  }
  auto scatter = [n](const std::vector<int>& pos, std::size_t local) {
    std::size_t full = 0;
    const int m = static_cast<int>(pos.size());
    for (int k = 0; k < m; ++k) {
      if (local & bit_of(k, m)) full |= bit_of(pos[k], n);
    }
    return full;
  };
  const std::size_t kd = dim_for(keep_pos.size());
  const std::size_t td = dim_for(trace_pos.size());
  std::vector<std::size_t> kidx(kd), tidx(td);
  for (std::size_t i = 0; i < kd; ++i) kidx[i] = scatter(keep_pos, i);
  for (std::size_t t = 0; t < td; ++t) tidx[t] = scatter(trace_pos, t);

  const Matrix& m = rho.entries();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(kd), static_cast<Eigen::Index>(kd));
  for (std::size_t i = 0; i < kd; ++i) {
    for (std::size_t j = 0; j < kd; ++j) {
      Complex acc = 0.0;
      for (std::size_t t = 0; t < td; ++t) {
        acc += m(static_cast<Eigen::Index>(kidx[i] | tidx[t]),
                 static_cast<Eigen::Index>(kidx[j] | tidx[t]));
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
  }
  return detail::Access::make(std::move(out), std::move(out_labels), rho.normalized());
}

DensityMatrix apply_single_qubit_kraus(const DensityMatrix& rho, const KrausSet& set,
                                       Mode target) {
  const Labels& labels = rho.labels();
  auto it = std::find(labels.begin(), labels.end(), target);
  if (it == labels.end()) {
    throw LabelError("Kraus target " + std::string(to_string(target)) +
                     " is not in the register");
  }
  const int n = rho.qubits();
  const std::size_t bit = bit_of(static_cast<int>(it - labels.begin()), n);
  const Eigen::Index dim = rho.dim();
  const Matrix& m = rho.entries();

  Matrix out = Matrix::Zero(dim, dim);
  Matrix left(dim, dim);
  for (const Matrix2& e : set.ops) {
    // left = (E on target) * rho
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (static_cast<std::size_t>(i) & bit) continue;
      const Eigen::Index i1 = i | static_cast<Eigen::Index>(bit);
      left.row(i) = e(0, 0) * m.row(i) + e(0, 1) * m.row(i1);
      left.row(i1) = e(1, 0) * m.row(i) + e(1, 1) * m.row(i1);
    }
    // out += left * (E on target)^dagger
    const Matrix2 ed = e.adjoint();
    for (Eigen::Index j = 0; j < dim; ++j) {
      if (static_cast<std::size_t>(j) & bit) continue;
      const Eigen::Index j1 = j | static_cast<Eigen::Index>(bit);
      out.col(j) += left.col(j) * ed(0, 0) + left.col(j1) * ed(1, 0);
      out.col(j1) += left.col(j) * ed(0, 1) + left.col(j1) * ed(1, 1);
    }
  }
  // Kill rounding asymmetry so downstream Hermiticity checks see exact symmetry.
  Matrix herm = 0.5 * (out + out.adjoint());
  return detail::Access::make(std::move(herm), labels,
                              rho.normalized() && set.trace_preserving);
}

// ---------------------------------------------------------------------------

Matrix XState::to_matrix() const {
  Matrix m = Matrix::Zero(8, 8);
  for (int i = 0; i < 4; ++i) {
    m(i, i) = mu[i];
    m(7 - i, 7 - i) = nu[i];
    m(i, 7 - i) = w[i];
    m(7 - i, i) = std::conj(w[i]);
  }
  return m;
}

void XState::validate() const {
  double total = 0.0;
  for (int i = 0; i < 4; ++i) total += mu[i] + nu[i];
  if (std::abs(total - 1.0) > 1e-10) {
    throw InvalidState("X state diagonal sums to " + std::to_string(total));
  }
  for (int i = 0; i < 4; ++i) {
    if (mu[i] < -kPositivityTolerance || nu[i] < -kPositivityTolerance ||
        std::norm(w[i]) > mu[i] * nu[i] + kPositivityTolerance) {
      throw InvalidState("X state block " + std::to_string(i + 1) + " is not positive");
    }
  }
}

XState as_x_state(const DensityMatrix& rho, double tol) {
  if (rho.dim() != 8) throw InvalidState("X-form extraction needs a 3-qubit matrix");
  if (!rho.normalized()) throw InvalidState("X-form extraction needs a normalized matrix");
  const Matrix& m = rho.entries();
  int worst_row = -1, worst_col = -1;
  double worst = -1.0;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      if (i == j || i + j == 7) continue;
      const double mag = std::abs(m(i, j));
      if (mag > worst) {
        worst = mag;
        worst_row = i;
        worst_col = j;
      }
    }
  }
  if (worst > tol) throw NotXForm(worst_row, worst_col, worst);

  XState x;
  for (int i = 0; i < 4; ++i) {
    x.mu[i] = m(i, i).real();
    x.nu[i] = m(7 - i, 7 - i).real();
    x.w[i] = m(i, 7 - i);
  }
  return x;
}

}  // namespace gtn
