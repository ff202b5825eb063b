#include "support.hpp"

#include <cmath>

#include "qmaxent/correlation.hpp"
#include "qmaxent/fixtures.hpp"
#include "qmaxent/random.hpp"
#include "qmaxent/states.hpp"

using namespace qmaxent;
using qmaxent::test::max_abs;

namespace {

CVector basis_vector(Eigen::Index d, Eigen::Index i) {
  CVector e = CVector::Zero(d);
  e(i) = 1;
  return e;
}

// Reduced state on the first two qubits of three, by explicit index sums.
CMatrix trace_out_last_qubit(const CMatrix& rho) {
  CMatrix out = CMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 2; ++k) out(i, j) += rho(2 * i + k, 2 * j + k);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("density_from_vector") {
  const auto e1 = density_from_vector(basis_vector(3, 0));
  CHECK(e1.matrix()(0, 0) == Complex(1, 0));
  CHECK(max_abs(CMatrix(e1.matrix() - basis_vector(3, 0) * basis_vector(3, 0).adjoint())) == 0.0);

  const CVector v1 = fixtures::circle_generator(1.0);
  const auto p1 = density_from_vector(v1);
  CMatrix expect = CMatrix::Zero(3, 3);
  expect.topLeftCorner(2, 2).setConstant(0.5);
  CHECK(max_abs(CMatrix(p1.matrix() - expect)) < 1e-15);

  // top eigenvector of u_1 - eps u_2; the first row forces the third entry -eps x(eps)
  const double eps = 0.1;
  const double xi = std::sqrt(0.81 + 0.02);
  const double x = (xi + eps - 1) / (eps * eps);
  CVector w(3);
  w << 1, 1, -eps * x;
  const auto rho = density_from_vector(normalized(w));
  const auto u = fixtures::limit_of_extremal_points();
  const CMatrix m = u[0] - eps * u[1];
  CHECK((m * rho.matrix() - xi * rho.matrix()).norm() < 1e-12);
  CHECK(von_neumann_entropy(rho) < 1e-10);
  CHECK(max_abs(CMatrix(density_from_vector(fixtures::limit_vector(eps)).matrix() - rho.matrix())) < 1e-14);

  CHECK_THROWS_AS(density_from_vector(CVector::Zero(2)), ValidationError);
  CHECK_THROWS_AS(normalized(CVector::Zero(2)), ValidationError);
}

TEST_CASE("DensityMatrix validation") {
  CMatrix bad = CMatrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix{bad}, ValidationError);
  CMatrix neg = CMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix{neg}, ValidationError);
  CMatrix nonherm = CMatrix::Identity(2, 2) / 2.0;
  nonherm(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix{nonherm}, ValidationError);
  CHECK(DensityMatrix().dim() == 1);
  CHECK(std::abs(DensityMatrix::maximally_mixed(4).matrix().trace() - 1.0) < 1e-15);
}

TEST_CASE("von_neumann_entropy") {
  Rng rng(4);
  CHECK(von_neumann_entropy(density_from_vector(random_unit_vector(5, rng))) < 1e-10);
  const DensityMatrix half(fixtures::limit_face_projection() / 2.0);
  CHECK(std::abs(von_neumann_entropy(half) - std::log(2.0)) < 1e-14);
  CHECK(std::abs(von_neumann_entropy(DensityMatrix::maximally_mixed(8)) - std::log(8.0)) < 1e-13);

  for (int rep = 0; rep < 10; ++rep) {
    const auto rho = random_state(4, rng);
    const CMatrix uu = random_unitary(4, rng);
    const auto rotated = DensityMatrix::from_numerical(uu * rho.matrix() * uu.adjoint());
    const double s = von_neumann_entropy(rho);
    CHECK(std::abs(von_neumann_entropy(rotated) - s) < 1e-9);
    CHECK(s >= 0.0);
    CHECK(s <= std::log(4.0) + 1e-12);
  }
}

TEST_CASE("tensor") {
  const CMatrix zz = tensor(pauli(3), pauli(3));
  CMatrix diag = CMatrix::Zero(4, 4);
  diag.diagonal() << 1, -1, -1, 1;
  CHECK(max_abs(CMatrix(zz - diag)) == 0.0);

  CMatrix n(2, 2);
  n << 0, 2, 0, 0;
  const CMatrix dd = tensor(CMatrix::Identity(2, 2), n);
  CHECK(max_abs(CMatrix(dd - fixtures::doubled_disk())) == 0.0);
  CHECK(dd(0, 1) == Complex(2, 0));
  CHECK(dd(2, 3) == Complex(2, 0));

  const CMatrix x11 = tensor({pauli(1), CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)});
  // sigma_1 on the leftmost factor flips the most significant bit
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) CHECK(x11(i, j) == Complex((i ^ j) == 4 ? 1.0 : 0.0, 0));
  }
}

TEST_CASE("partial_trace examples") {
  Rng rng(8);
  const auto a = random_state(2, rng);
  const auto b = random_state(3, rng);
  const DensityMatrix ab(tensor(a.matrix(), b.matrix()));
  CHECK(max_abs(CMatrix(partial_trace(ab, {2, 3}, {0}).matrix() - a.matrix())) < 1e-14);
  CHECK(max_abs(CMatrix(partial_trace(ab, {2, 3}, {1}).matrix() - b.matrix())) < 1e-14);

  const auto ghz = density_from_vector(ghz_vector(Complex(1.0 / std::sqrt(2.0), 0)));
  CMatrix expect = CMatrix::Zero(4, 4);
  expect(0, 0) = 0.5;
  expect(3, 3) = 0.5;
  CHECK(max_abs(CMatrix(partial_trace(ghz, {2, 2, 2}, {0, 1}).matrix() - expect)) < 1e-15);

  for (double eps : {0.3, 1.0, 2.0}) {
    const auto model = h_epsilon_model(eps);
    const CMatrix direct = trace_out_last_qubit(model.ground_state.matrix());
    CAPTURE(eps);
    CHECK(max_abs(CMatrix(partial_trace(model.ground_state, {2, 2, 2}, {0, 1}).matrix() - direct)) < 1e-14);
    CHECK(max_abs(CMatrix(model.marginal_ab_closed_form - direct)) < 1e-12);
  }

  CHECK_THROWS_AS(partial_trace(ghz, {2, 2}, {0}), ValidationError);
  CHECK_THROWS_AS(partial_trace(ghz, {2, 2, 2}, {}), ValidationError);
  CHECK_THROWS_AS(partial_trace(ghz, {2, 2, 2}, {3}), ValidationError);
}

TEST_CASE("partial_trace: pairing identity, positivity and tower property") {
  Rng rng(31);
  for (int rep = 0; rep < 100; ++rep) {
    const auto rho = random_state(8, rng);
    const auto ab = partial_trace(rho, {2, 2, 2}, {0, 1});
    CHECK(std::abs(ab.matrix().trace() - 1.0) < 1e-12);
    CHECK(ab.eigenvalues().minCoeff() >= -1e-12);
    const auto a_direct = partial_trace(rho, {2, 2, 2}, {0});
    const auto a_tower = partial_trace(ab, {2, 2}, {0});
    CHECK(max_abs(CMatrix(a_direct.matrix() - a_tower.matrix())) < 1e-10);
  }
  const auto rho = random_state(8, rng);
  const auto ab = partial_trace(rho, {2, 2, 2}, {0, 1});
  const auto ac = partial_trace(rho, {2, 2, 2}, {2, 0});
  for (int rep = 0; rep < 20; ++rep) {
    const CMatrix x = random_hermitian(2, rng), y = random_hermitian(2, rng);
    const CMatrix id = CMatrix::Identity(2, 2);
    const Complex lhs = (ab.matrix() * tensor(x, y)).trace();
    const Complex rhs = (rho.matrix() * tensor({x, y, id})).trace();
    CHECK(std::abs(lhs - rhs) < 1e-10);
    const Complex lhs2 = (ac.matrix() * tensor(x, y)).trace();
    const Complex rhs2 = (rho.matrix() * tensor({x, id, y})).trace();
    CHECK(std::abs(lhs2 - rhs2) < 1e-10);
  }
}

TEST_CASE("pauli") {
  CMatrix s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, Complex(0, -1), Complex(0, 1), 0;
  s3 << 1, 0, 0, -1;
  CHECK(pauli(1) == s1);
  CHECK(pauli(2) == s2);
  CHECK(pauli(3) == s3);
  CHECK_THROWS(pauli(0));
  CHECK_THROWS(pauli(4));
  CHECK(max_abs(CMatrix(pauli(1) * pauli(2) - Complex(0, 1) * pauli(3))) == 0.0);
}

TEST_CASE("binary_entropy") {
  CHECK(std::abs(binary_entropy(0.5) - std::log(2.0)) < 1e-15);
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(std::abs(binary_entropy(0.25) - (-0.25 * std::log(0.25) - 0.75 * std::log(0.75))) < 1e-15);
  for (double e : {0.01, 0.2, 0.37, 0.49}) CHECK(std::abs(binary_entropy(e) - binary_entropy(1 - e)) < 1e-15);
  CHECK_THROWS_AS(binary_entropy(-0.1), ValidationError);
  CHECK_THROWS_AS(binary_entropy(1.1), ValidationError);
}

TEST_CASE("trace_distance") {
  Rng rng(12);
  const auto rho = random_state(3, rng);
  CHECK(trace_distance(rho, rho) < 1e-15);
  // v v* against p/2: in the basis (v, (1,-1,0)/sqrt 2) the difference is diag(1/2, -1/2)
  const auto limit = density_from_vector(fixtures::circle_generator(1.0));
  const DensityMatrix half(fixtures::limit_face_projection() / 2.0);
  CHECK(std::abs(trace_distance(limit, half) - 0.5) < 1e-14);
  CHECK(std::abs(trace_distance(density_from_vector(basis_vector(2, 0)), density_from_vector(basis_vector(2, 1))) - 1.0) <
        1e-15);
  CHECK_THROWS(trace_distance(rho, random_state(2, rng)));
  for (int rep = 0; rep < 10; ++rep) {
    const auto s = random_state(3, rng);
    const double t = trace_distance(rho, s);
    CHECK(t >= 0.0);
    CHECK(t <= 1.0 + 1e-12);
    CHECK(std::abs(t - trace_distance(s, rho)) < 1e-14);
  }
}
