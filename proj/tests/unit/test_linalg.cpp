#include "support.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "qmaxent/correlation.hpp"
#include "qmaxent/fixtures.hpp"
#include "qmaxent/random.hpp"

using namespace qmaxent;
using qmaxent::test::max_abs;

namespace {

// Largest root of det(lambda - m) for a real symmetric 3 x 3 matrix, by
// Newton from above on the characteristic cubic.
double largest_root_3x3(const Eigen::Matrix3d& m) {
  const double c2 = -m.trace();
  const double c1 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) +
                    m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  const double c0 = -m.determinant();
  double x = 1.0 + m.cwiseAbs().sum();
  for (int i = 0; i < 200; ++i) {
    const double f = ((x + c2) * x + c1) * x + c0;
    const double df = (3 * x + 2 * c2) * x + c1;
    const double nx = x - f / df;
    if (std::abs(nx - x) < 1e-16) break;
    x = nx;
  }
  return x;
}

CMatrix power_series_exp(const CMatrix& h) {
  CMatrix out = CMatrix::Identity(h.rows(), h.cols());
  CMatrix term = out;
  for (int k = 1; k < 60; ++k) {
    term = term * h / static_cast<double>(k);
    out += term;
  }
  return out;
}

bool is_projection(const Projection& p) {
  return (p.matrix - p.matrix.adjoint()).norm() < 1e-10 && (p.matrix * p.matrix - p.matrix).norm() < 1e-10 &&
         std::abs(p.matrix.trace().real() - p.rank) < 1e-8;
}

}  // namespace

TEST_CASE("hermitian_eig: small closed forms") {
  const auto s3 = hermitian_eig(pauli(3));
  CHECK(std::abs(s3.values(0) + 1) < 1e-15);
  CHECK(std::abs(s3.values(1) - 1) < 1e-15);

  const auto u = fixtures::limit_of_extremal_points();
  const auto e1 = hermitian_eig(u[0]);
  CHECK(max_abs(RVector(e1.values - test::vec({-1, 1, 1}))) < 1e-14);

  const CMatrix m = u[0] - 0.1 * u[1];
  const double xi = std::sqrt(0.81 + 0.02);
  CHECK(std::abs(max_eigenvalue(m) - xi) < 1e-13);
  CHECK(std::abs(largest_root_3x3(m.real()) - xi) < 1e-12);
}

TEST_CASE("hermitian_eig: agrees with an independent eigensolver") {
  Rng rng(11);
  for (int d : {1, 2, 3, 5, 8, 16}) {
    for (int rep = 0; rep < 5; ++rep) {
      const CMatrix h = random_hermitian(d, rng);
      const auto eig = hermitian_eig(h);
      Eigen::SelfAdjointEigenSolver<CMatrix> oracle(h);
      CAPTURE(d);
      CHECK(max_abs(RVector(eig.values - oracle.eigenvalues())) < 1e-10 * (1 + h.norm()));
      const CMatrix rec = eig.vectors * eig.values.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
      CHECK((rec - h).norm() <= 1e-10 * std::max(1.0, h.norm()));
      CHECK((eig.vectors.adjoint() * eig.vectors - CMatrix::Identity(d, d)).norm() < 1e-10);
      for (Eigen::Index i = 1; i < d; ++i) CHECK(eig.values(i) >= eig.values(i - 1));
    }
  }
}

TEST_CASE("hermitian_eig: deterministic and phase fixed") {
  Rng rng(5);
  const CMatrix h = random_hermitian(6, rng);
  const auto a = hermitian_eig(h);
  const auto b = hermitian_eig(h);
  CHECK(a.values == b.values);
  CHECK(a.vectors == b.vectors);
  for (Eigen::Index k = 0; k < 6; ++k) {
    Eigen::Index i = 0;
    a.vectors.col(k).cwiseAbs().maxCoeff(&i);
    CHECK(std::abs(a.vectors(i, k).imag()) < 1e-14);
    CHECK(a.vectors(i, k).real() > 0);
  }
}

TEST_CASE("hermitian_eig: rejects non-Hermitian input") {
  CMatrix m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(hermitian_eig(m), ValidationError);
  CHECK_THROWS_AS(hermitian_eig(CMatrix(2, 3)), ValidationError);
}

TEST_CASE("matrix_exp_hermitian") {
  CHECK(max_abs(CMatrix(matrix_exp_hermitian(CMatrix::Zero(3, 3)) - CMatrix::Identity(3, 3))) < 1e-15);
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = std::log(2.0);
  CMatrix expect = CMatrix::Zero(2, 2);
  expect(0, 0) = 2;
  expect(1, 1) = 1;
  CHECK(max_abs(CMatrix(matrix_exp_hermitian(d) - expect)) < 1e-14);
  const CMatrix closed = std::cosh(1.0) * CMatrix::Identity(2, 2) + std::sinh(1.0) * pauli(1);
  CHECK(max_abs(CMatrix(matrix_exp_hermitian(pauli(1)) - closed)) < 1e-14);
  CHECK(max_abs(CMatrix(power_series_exp(pauli(1)) - closed)) < 1e-14);

  Rng rng(3);
  const CMatrix h = random_hermitian(4, rng);
  const CMatrix e = matrix_exp_hermitian(h);
  CHECK((e - power_series_exp(h)).norm() < 1e-10 * e.norm());
  CHECK(hermitian_eig(hermitian_part(e)).values(0) > 0);
}

TEST_CASE("entropy_of_spectrum") {
  CHECK(entropy_of_spectrum(test::vec({1, 0, 0})) == 0.0);
  CHECK(std::abs(entropy_of_spectrum(test::vec({0.5, 0.5, 0})) - std::log(2.0)) < 1e-15);
  CHECK(std::abs(entropy_of_spectrum(test::vec({0.25, 0.25, 0.25, 0.25})) - std::log(4.0)) < 1e-15);
  CHECK(entropy_of_spectrum(test::vec({1 + 5e-11, -5e-11})) >= 0.0);
  CHECK_THROWS_AS(entropy_of_spectrum(test::vec({1.1, -0.1})), ValidationError);
  CHECK_THROWS_AS(entropy_of_spectrum(test::vec({0.5, 0.4})), ValidationError);
}

TEST_CASE("entropy of a normalized exponential matches the Gibbs formula") {
  Rng rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    const CMatrix h = random_hermitian(5, rng);
    const CMatrix e = matrix_exp_hermitian(h);
    const RVector lam = hermitian_eig(hermitian_part(e / e.trace().real())).values;
    // S = ln Z - <h> for rho = e^h / Z
    const RVector hv = hermitian_eig(h).values;
    const double z = hv.array().exp().sum();
    const double mean = (hv.array() * hv.array().exp()).sum() / z;
    CHECK(std::abs(entropy_of_spectrum(lam) - (std::log(z) - mean)) < 1e-8);
  }
}

TEST_CASE("spectral_projection_max") {
  const auto u = fixtures::limit_of_extremal_points();
  const auto p = spectral_projection_max(u[0]);
  CHECK(p.rank == 2);
  CHECK(max_abs(CMatrix(p.matrix - fixtures::limit_face_projection())) < 1e-12);
  CHECK(is_projection(p));

  const auto p3 = spectral_projection_max(pauli(3));
  CHECK(p3.rank == 1);
  CHECK(std::abs(p3.matrix(0, 0) - 1.0) < 1e-15);

  const auto model = h_epsilon_model(1.0);
  const auto ph = spectral_projection_max(model.hamiltonian);
  CHECK(ph.rank == 1);
  CHECK(std::abs(max_eigenvalue(model.hamiltonian) - 4.0) < 1e-12);

  Rng rng(9);
  for (int rep = 0; rep < 10; ++rep) {
    const CMatrix h = random_hermitian(4, rng);
    const auto q = spectral_projection_max(h, 0.5);
    CHECK(is_projection(q));
    CHECK((q.matrix * h - h * q.matrix).norm() < 1e-9);
  }
}

TEST_CASE("compress and embed") {
  const auto u = fixtures::limit_of_extremal_points();
  const auto p = spectral_projection_max(u[0]);
  CHECK(max_abs(CMatrix(compress(CMatrix::Identity(3, 3), p) - CMatrix::Identity(2, 2))) < 1e-14);
  CHECK(max_abs(CMatrix(compress(u[0], p) - CMatrix::Identity(2, 2))) < 1e-14);

  CMatrix cols = CMatrix::Zero(4, 2);
  cols(0, 0) = 1;
  cols(1, 1) = 1;
  const auto first_two = projection_from_columns(cols);
  CMatrix b(2, 2);
  b << 0, 2, 0, 0;
  CHECK(max_abs(CMatrix(compress(fixtures::doubled_disk(), first_two) - b)) < 1e-15);

  Rng rng(2);
  const CMatrix x = random_complex(3, 3, rng), y = random_complex(3, 3, rng);
  CHECK(max_abs(CMatrix(compress(x + y, p) - compress(x, p) - compress(y, p))) <= 1e-12);
  const CMatrix c = compress(x, p);
  CHECK(max_abs(CMatrix(compress(embed(c, p), p) - c)) < 1e-14);
  CHECK(projection_from_columns(CMatrix::Zero(3, 1)).rank == 0);
}

TEST_CASE("generated star algebra dimension") {
  CHECK(generated_star_algebra_dim({pauli(1), pauli(2)}) == 4);
  const auto thm = fixtures::pair_from_matrix(fixtures::disk_with_eigenvalue());
  CHECK(generated_star_algebra_dim(thm.observables()) == 5);
  CHECK(generated_star_algebra_dim(fixtures::limit_of_extremal_points().observables()) == 9);
  CHECK(generated_star_algebra_dim({}) == 1);
}

TEST_CASE("commutant basis") {
  CHECK(commutant_basis({pauli(1), pauli(2)}).size() == 1);
  CHECK(commutant_basis({fixtures::doubled_disk()}).size() == 4);
  CHECK(commutant_basis({CMatrix::Identity(3, 3)}).size() == 9);
  for (const auto& x : commutant_basis({fixtures::disk_with_eigenvalue()})) {
    const CMatrix a = fixtures::disk_with_eigenvalue();
    CHECK((x * a - a * x).norm() < 1e-10);
    CHECK((x * a.adjoint() - a.adjoint() * x).norm() < 1e-10);
  }
}

TEST_CASE("full algebra exactly when the commutant is trivial") {
  Rng rng(23);
  for (int rep = 0; rep < 20; ++rep) {
    const int d = 3 + rep % 2;
    CMatrix g1 = random_hermitian(d, rng), g2 = random_hermitian(d, rng);
    if (rep % 4 >= 2) {
      // block-diagonal pair hidden by a random unitary
      g1.topRightCorner(1, d - 1).setZero();
      g1.bottomLeftCorner(d - 1, 1).setZero();
      g2.topRightCorner(1, d - 1).setZero();
      g2.bottomLeftCorner(d - 1, 1).setZero();
      const CMatrix t = random_unitary(d, rng);
      g1 = hermitian_part(t.adjoint() * g1 * t);
      g2 = hermitian_part(t.adjoint() * g2 * t);
    }
    const bool full = generated_star_algebra_dim({g1, g2}) == static_cast<std::size_t>(d * d);
    const bool trivial = commutant_basis({g1, g2}).size() == 1;
    CAPTURE(rep);
    CHECK(full == trivial);
    CHECK(full == (rep % 4 < 2));
  }
}

TEST_CASE("null spaces, ranks and traceless bases") {
  RMatrix m(2, 3);
  m << 1, 0, 0, 0, 1, 0;
  const RMatrix n = real_null_space(m);
  CHECK(n.cols() == 1);
  CHECK(std::abs(std::abs(n(2, 0)) - 1) < 1e-14);
  CHECK(numerical_rank(m, 1e-8) == 2);

  const auto basis = traceless_hermitian_basis(3);
  CHECK(basis.size() == 8);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    CHECK(std::abs(basis[i].trace()) < 1e-14);
    CHECK(is_hermitian(basis[i]));
    for (std::size_t j = 0; j < basis.size(); ++j) {
      CHECK(std::abs((basis[i] * basis[j]).trace().real() - (i == j ? 1.0 : 0.0)) < 1e-14);
    }
  }
}
