#include <doctest.h>

#include <cmath>
#include <random>

#include "linalg.hpp"

using namespace commsplit;
using doctest::Approx;

namespace {
const Complex I(0.0, 1.0);
}

TEST_CASE("pauli algebra") {
  Matrix x = pauli_x(), y = pauli_y(), z = pauli_z();
  Matrix id = Matrix::Identity(2, 2);
  CHECK(spectral_norm(x * x - id) < 1e-15);
  CHECK(spectral_norm(commutator(x, y) - 2.0 * I * z) < 1e-15);
  CHECK(spectral_norm(commutator(y, z) - 2.0 * I * x) < 1e-15);
  CHECK(spectral_norm(anticommutator(x, y)) < 1e-15);
  CHECK(spectral_norm(kron(x, z) * kron(x, z) - Matrix::Identity(4, 4)) < 1e-15);
}

TEST_CASE("projectors") {
  Matrix p = basis_projector(4, 2);
  CHECK(spectral_norm(p * p - p) < 1e-15);
  CHECK(p(2, 2) == Complex(1.0, 0.0));
  CHECK(std::abs(p.trace() - Complex(1.0, 0.0)) < 1e-15);

  Matrix q = plus_projector(4);
  CHECK(spectral_norm(q * q - q) < 1e-14);
  CHECK(std::abs(q.trace() - Complex(1.0, 0.0)) < 1e-14);
  CHECK(q(0, 3).real() == Approx(0.25).epsilon(1e-14));
}

TEST_CASE("hermiticity and unitarity predicates") {
  Matrix x = pauli_x();
  CHECK(is_hermitian(x));
  CHECK(is_anti_hermitian(I * x));
  CHECK_FALSE(is_hermitian(I * x));
  CHECK(is_unitary(x));
  CHECK_FALSE(is_unitary(2.0 * x));
}

TEST_CASE("spectral norm") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = Complex(0.0, -4.0);
  CHECK(spectral_norm(d) == Approx(4.0).epsilon(1e-14));
  CHECK(spectral_norm(Matrix::Zero(3, 3)) == Approx(0.0));
  // norm of a rank-1 outer product uv^H is |u||v|
  Matrix u(2, 1), v(2, 1);
  u << 1.0, 2.0;
  v << 2.0, 1.0;
  CHECK(spectral_norm(u * v.adjoint()) == Approx(5.0).epsilon(1e-13));
}

TEST_CASE("expm basics") {
  CHECK(spectral_norm(expm(Matrix::Zero(3, 3)) - Matrix::Identity(3, 3)) < 1e-15);

  std::mt19937_64 rng(11);
  Matrix a = random_antihermitian(4, rng);
  Matrix e = expm(a);
  CHECK(is_unitary(e, 1e-12));
  CHECK(spectral_norm(expm(-a) * e - Matrix::Identity(4, 4)) < 1e-12);
  // commuting inputs: e^a e^a = e^{2a}
  CHECK(spectral_norm(e * e - expm(2.0 * a)) < 1e-12);
}

TEST_CASE("expm closed forms for involutions and projectors") {
  // M^2 = -t^2 I  =>  cos(t) I + sin(t)/t M
  double t = 0.7;
  Matrix m = I * t * pauli_y();
  Matrix want = std::cos(t) * Matrix::Identity(2, 2) + I * std::sin(t) * pauli_y();
  CHECK(spectral_norm(expm(m) - want) < 1e-14);

  // M = c P with P a projector: e^M = I + (e^c - 1) P
  Matrix p = plus_projector(8);
  Complex c(0.0, 1.3);
  Matrix wantp = Matrix::Identity(8, 8) + (std::exp(c) - 1.0) * p;
  CHECK(spectral_norm(expm(c * p) - wantp) < 1e-13);

  // large-norm anti-Hermitian input still lands on the unit circle
  Matrix big = I * 50.0 * pauli_x();
  CHECK(is_unitary(expm(big), 1e-11));
  CHECK(spectral_norm(expm(big) - (std::cos(50.0) * Matrix::Identity(2, 2) +
                                   I * std::sin(50.0) * pauli_x())) < 1e-11);
}

TEST_CASE("nested commutator over a slot binding") {
  OperatorSet ops;
  ops.k = 2;
  ops.ops = {{0, pauli_x()}, {1, pauli_y()}, {2, pauli_z()}};
  Matrix want = commutator(pauli_z(), commutator(pauli_y(), pauli_x()));
  CHECK(spectral_norm(nested_z(ops) - want) < 1e-14);

  OperatorSet one;
  one.k = 1;
  one.ops = {{0, pauli_x()}, {1, pauli_z()}};
  CHECK(spectral_norm(nested_z(one) - commutator(pauli_z(), pauli_x())) < 1e-14);
}

TEST_CASE("operator set norms") {
  OperatorSet ops;
  ops.k = 1;
  ops.ops = {{0, 3.0 * pauli_x()}, {1, pauli_z()}};
  CHECK(ops.dim() == 2);
  CHECK(ops.effective_lambda() == Approx(6.0).epsilon(1e-13));
  ops.lambda = 10.0;
  CHECK(ops.effective_lambda() == Approx(10.0));
}

TEST_CASE("anticommutator dilation") {
  std::mt19937_64 rng(3);
  for (int dim : {2, 4, 8}) {
    Matrix a = random_hermitian(dim, rng);
    Matrix b = random_hermitian(dim, rng);
    auto [ap, bp] = dilate_anticomm(a, b);
    Matrix want = kron(-I * anticommutator(a, b), pauli_z());
    CHECK(spectral_norm(commutator(ap, bp) - want) < 1e-13);
  }
}

TEST_CASE("product dilation base case") {
  Matrix a = pauli_z();
  OperatorSet ops = dilate_product({{a, 2}});  // k = 1, A_1 = A_0 =sigma_z
  REQUIRE(ops.k == 1);
  Matrix z1 = nested_z(ops);
  Matrix want = -2.0 * I * kron(a * a, pauli_z());
  CHECK(spectral_norm(z1 - want) < 1e-13);
}

TEST_CASE("product dilation matches the parity rule for k up to 4") {
  // commuting Hermitian factors: polynomials in one random Hermitian seed
  std::mt19937_64 rng(5);
  Matrix h = random_hermitian(2, rng);
  Matrix id = Matrix::Identity(2, 2);
  std::vector<Matrix> fac = {h, h * h + 0.5 * id, 2.0 * h - id, h * h * h, h + 3.0 * id};
  for (int k = 1; k <= 4; ++k) {
    std::vector<std::pair<Matrix, int>> factors;
    Matrix prod = id;
    for (int j = 0; j <= k; ++j) {
      factors.push_back({fac[j], 1});
      prod = prod * fac[j];
    }
    OperatorSet ops = dilate_product(factors);
    Matrix zk = nested_z(ops);
    double scale = std::pow(2.0, k);
    Matrix want = k % 2 == 1 ? Matrix(-I * scale * kron(prod, pauli_z()))
                             : Matrix(scale * kron(prod, pauli_x()));
    CHECK(spectral_norm(zk - want) < 1e-10);
  }
}

TEST_CASE("product dilation rejects non-commuting factors") {
  CHECK_THROWS_AS(dilate_product({{pauli_x(), 1}, {pauli_z(), 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(dilate_product({{I * pauli_x(), 1}, {pauli_x(), 1}}),
                  std::invalid_argument);
}

TEST_CASE("random anti-Hermitian draws are unit norm") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 4; ++i) {
    Matrix m = random_antihermitian(3, rng);
    CHECK(is_anti_hermitian(m));
    CHECK(spectral_norm(m) == Approx(1.0).epsilon(1e-12));
  }
}
