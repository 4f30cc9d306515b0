#pragma once

#include <random>

#include "gtn/qcore.hpp"

namespace gtn::testing {

inline Vector random_vector(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> g;
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex(g(rng), g(rng));
  return v.normalized();
}

/// Mixed state from a Ginibre matrix G: G G^dagger / tr.
inline DensityMatrix random_density(std::mt19937_64& rng, const Labels& labels) {
  const Eigen::Index dim = Eigen::Index{1} << labels.size();
  std::normal_distribution<double> g;
  Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = Complex(g(rng), g(rng));
  Matrix rho = m * m.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(rho, labels);
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline const Labels kABC{Mode::A, Mode::B1, Mode::C1};

}  // namespace gtn::testing
