#include <doctest.h>

#include <cmath>

#include "gtn/errors.hpp"
#include "gtn/noise.hpp"
#include "gtn/qcore.hpp"
#include "support.hpp"

using namespace gtn;
using gtn::testing::max_abs;

namespace {

PureState ket(std::initializer_list<Complex> amps, Labels labels) {
  Vector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (auto a : amps) v(i++) = a;
  return PureState(v, std::move(labels));
}

}  // namespace

TEST_SUITE("qcore") {
  TEST_CASE("mode labels round-trip") {
    for (Mode m : kAllModes) CHECK(parse_mode(to_string(m)) == m);
    CHECK_THROWS_AS(parse_mode("D1"), LabelError);
  }

  TEST_CASE("pure state validation") {
    CHECK_THROWS_AS(ket({1.0, 1.0}, {Mode::A}), InvalidState);
    CHECK_THROWS_AS(ket({1.0, 0.0, 0.0, 0.0}, {Mode::B1, Mode::A}), LabelError);
    CHECK_THROWS_AS(ket({1.0, 0.0, 0.0, 0.0}, {Mode::A, Mode::A}), LabelError);
    CHECK_NOTHROW(ket({0.6, Complex(0.0, 0.8)}, {Mode::C2}));
  }

  TEST_CASE("density matrix validation") {
    Matrix bad(2, 2);
    bad << 0.5, 0.1, 0.2, 0.5;
    CHECK_THROWS_AS(DensityMatrix(bad, {Mode::A}), InvalidState);
    Matrix neg(2, 2);
    neg << 1.5, 0.0, 0.0, -0.5;
    CHECK_THROWS_AS(DensityMatrix(neg, {Mode::A}), InvalidState);
    Matrix half(2, 2);
    half << 0.25, 0.0, 0.0, 0.25;
    CHECK_THROWS_AS(DensityMatrix(half, {Mode::A}), InvalidState);
    CHECK_NOTHROW(DensityMatrix(half, {Mode::A}, false));
    CHECK(DensityMatrix(half, {Mode::A}, false).normalize().trace() == doctest::Approx(1.0));
  }

  TEST_CASE("tensor of basis kets") {
    const auto a = PureState::basis({Mode::A}, 0);
    const auto b = PureState::basis({Mode::B1}, 0);
    const auto ab = tensor(a, b);
    Vector want = Vector::Zero(4);
    want(0) = 1.0;
    CHECK(max_abs(ab.amplitudes() - want) < 1e-15);
  }

  TEST_CASE("tensor of plus and one") {
    const double h = 1.0 / std::sqrt(2.0);
    const auto plus = ket({h, h}, {Mode::A});
    const auto one = PureState::basis({Mode::B1}, 1);
    Vector want(4);
    want << 0.0, h, 0.0, h;
    CHECK(max_abs(tensor(plus, one).amplitudes() - want) < 1e-15);
  }

  TEST_CASE("tensor reorders into global order") {
    const auto c = PureState::basis({Mode::C1}, 1);
    const auto a = PureState::basis({Mode::A}, 0);
    const auto ca = tensor(c, a);
    CHECK(ca.labels() == Labels{Mode::A, Mode::C1});
    CHECK(std::abs(ca.amplitude(1)) == doctest::Approx(1.0));
  }

  TEST_CASE("tensor of maximally mixed qubits") {
    const Matrix half = Matrix::Identity(2, 2) / 2.0;
    const auto rho = tensor(DensityMatrix(half, {Mode::A}), DensityMatrix(half, {Mode::B2}));
    CHECK(max_abs(rho.entries() - Matrix::Identity(4, 4) / 4.0) < 1e-15);
  }

  TEST_CASE("tensor rejects overlapping labels") {
    const auto a = PureState::basis({Mode::A}, 0);
    CHECK_THROWS_AS(tensor(a, a), LabelCollision);
  }

  TEST_CASE("partial trace of product and Bell states") {
    const auto zz = DensityMatrix::from_pure(PureState::basis({Mode::A, Mode::B1}, 0));
    const Mode keep_a[] = {Mode::A};
    Matrix zero = Matrix::Zero(2, 2);
    zero(0, 0) = 1.0;
    CHECK(max_abs(partial_trace(zz, keep_a).entries() - zero) < 1e-15);

    const double h = 1.0 / std::sqrt(2.0);
    const auto bell = DensityMatrix::from_pure(ket({h, 0.0, 0.0, h}, {Mode::A, Mode::B1}));
    CHECK(max_abs(partial_trace(bell, keep_a).entries() - Matrix::Identity(2, 2) / 2.0) < 1e-15);

    const Mode missing[] = {Mode::C1};
    CHECK_THROWS_AS(partial_trace(bell, missing), LabelError);
    CHECK_THROWS_AS(partial_trace(bell, std::span<const Mode>{}), LabelError);
  }

  TEST_CASE("kraus: identity, full relaxation, partial transfer") {
    std::mt19937_64 rng(3);
    const auto rho = gtn::testing::random_density(rng, {Mode::A});
    const KrausSet id({Matrix2::Identity()});
    CHECK(max_abs(apply_single_qubit_kraus(rho, id, Mode::A).entries() - rho.entries()) < 1e-15);

    const auto ground = apply_single_qubit_kraus(rho, gad_kraus({1.0, 1.0}), Mode::A);
    CHECK(std::abs(ground(0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(ground(1, 1)) < 1e-12);

    const auto one = DensityMatrix::from_pure(PureState::basis({Mode::A}, 1));
    const auto out = apply_single_qubit_kraus(one, gad_kraus({0.4, 1.0}), Mode::A);
    CHECK(out(0, 0).real() == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(out(1, 1).real() == doctest::Approx(0.6).epsilon(1e-14));
  }

  TEST_CASE("as_x_state on simple inputs") {
    Matrix d = Matrix::Zero(8, 8);
    d(0, 0) = 1.0;
    const auto x = as_x_state(DensityMatrix(d, gtn::testing::kABC));
    CHECK(x.mu[0] == 1.0);
    for (int i = 1; i < 4; ++i) CHECK(x.mu[i] == 0.0);
    for (double n : x.nu) CHECK(n == 0.0);

    Matrix ghz = Matrix::Zero(8, 8);
    ghz(0, 0) = ghz(7, 7) = ghz(0, 7) = ghz(7, 0) = 0.5;
    const auto g = as_x_state(DensityMatrix(ghz, gtn::testing::kABC));
    CHECK(g.mu[0] == 0.5);
    CHECK(g.nu[0] == 0.5);
    CHECK(std::abs(g.w[0] - 0.5) < 1e-15);
  }

  TEST_CASE("as_x_state reports the offending entry") {
    Matrix m = Matrix::Identity(8, 8) / 8.0;
    m(1, 2) = m(2, 1) = 0.01;
    try {
      as_x_state(DensityMatrix(m, gtn::testing::kABC));
      FAIL("expected NotXForm");
    } catch (const NotXForm& e) {
      CHECK(e.magnitude == doctest::Approx(0.01));
      CHECK(((e.row == 1 && e.col == 2) || (e.row == 2 && e.col == 1)));
    }
  }

  TEST_CASE("exchange_bob_charlie is an involution") {
    std::mt19937_64 rng(5);
    const auto rho = gtn::testing::random_density(rng, {Mode::A, Mode::B1, Mode::C2});
    const auto once = exchange_bob_charlie(rho);
    CHECK(once.labels() == Labels{Mode::A, Mode::B2, Mode::C1});
    CHECK(max_abs(exchange_bob_charlie(once).entries() - rho.entries()) < 1e-15);
  }
}

TEST_SUITE("qcore properties") {
  TEST_CASE("partial trace undoes tensor") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 50; ++k) {
      const auto r1 = gtn::testing::random_density(rng, {Mode::A, Mode::C1});
      const auto r2 = gtn::testing::random_density(rng, {Mode::B1, Mode::B2});
      const auto both = tensor(r1, r2);
      const Mode keep[] = {Mode::A, Mode::C1};
      CHECK(max_abs(partial_trace(both, keep).entries() - r1.entries()) < 1e-12);
    }
  }

  TEST_CASE("trace-preserving kraus keeps trace and positivity") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> target(0, 2);
    for (int k = 0; k < 100; ++k) {
      const auto rho = gtn::testing::random_density(rng, gtn::testing::kABC);
      const auto out = apply_single_qubit_kraus(rho, gad_kraus({u(rng), u(rng)}),
                                                gtn::testing::kABC[target(rng)]);
      CHECK(std::abs(out.trace() - 1.0) < 1e-12);
      CHECK(out.min_eigenvalue() >= -1e-10);
    }
  }

  TEST_CASE("x-state extraction round-trips") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
      XState x;
      double total = 0.0;
      for (int i = 0; i < 4; ++i) {
        x.mu[i] = u(rng);
        x.nu[i] = u(rng);
        total += x.mu[i] + x.nu[i];
      }
      for (int i = 0; i < 4; ++i) {
        x.mu[i] /= total;
        x.nu[i] /= total;
        x.w[i] = std::polar(u(rng) * std::sqrt(x.mu[i] * x.nu[i]), 6.0 * u(rng));
      }
      const Matrix m = x.to_matrix();
      const auto back = as_x_state(DensityMatrix(m, gtn::testing::kABC));
      CHECK(max_abs(back.to_matrix() - m) < 1e-12);
    }
  }
}
