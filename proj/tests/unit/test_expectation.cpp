#include "support.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "qmaxent/correlation.hpp"
#include "qmaxent/expectation.hpp"
#include "qmaxent/fixtures.hpp"
#include "qmaxent/random.hpp"

using namespace qmaxent;
using qmaxent::test::max_abs;
using qmaxent::test::vec;

namespace {

// Coefficients of a traceless three-qubit Hamiltonian in the two-local basis.
RVector two_local_coefficients(const CMatrix& h) {
  const auto basis = two_local_basis();
  RVector theta(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    theta(static_cast<Eigen::Index>(i)) = (basis[i].matrix * h).trace().real() / 8.0;
  }
  return theta;
}

CMatrix remove_trace(const CMatrix& h) {
  return h - h.trace() / static_cast<double>(h.rows()) * CMatrix::Identity(h.rows(), h.cols());
}

}  // namespace

TEST_CASE("expected_values examples") {
  const auto pauli3 = fixtures::pauli_triple();
  CHECK(max_abs(expected_values(pauli3, DensityMatrix::maximally_mixed(2))) < 1e-15);

  const auto u = fixtures::limit_of_extremal_points();
  const DensityMatrix half(fixtures::limit_face_projection() / 2.0);
  CHECK(max_abs(RVector(expected_values(u, half) - vec({1, 1, 0.5}))) < 1e-15);
  CVector e2 = CVector::Zero(3);
  e2(1) = 1;
  CHECK(max_abs(RVector(expected_values(u, density_from_vector(e2)) - vec({1, 1, 0}))) < 1e-15);

  CHECK_THROWS_AS(expected_values(u, DensityMatrix::maximally_mixed(2)), ValidationError);
}

TEST_CASE("expected_values along alpha(eps) match the closed form") {
  const auto u = fixtures::limit_of_extremal_points();
  for (double eps : {0.5, 0.1, 1e-3}) {
    const auto rho = density_from_vector(fixtures::limit_vector(eps));
    CHECK(max_abs(RVector(expected_values(u, rho) - fixtures::limit_alpha(eps))) < 1e-12);
  }
}

TEST_CASE("pencil") {
  const auto u = fixtures::limit_of_extremal_points();
  CHECK(max_abs(pencil(u, RVector::Zero(3))) == 0.0);
  CHECK(max_abs(CMatrix(pencil(u, vec({1, -0.1, 0})) - (u[0] - 0.1 * u[1]))) < 1e-15);
  for (Eigen::Index i = 0; i < 3; ++i) {
    RVector e = RVector::Zero(3);
    e(i) = 1;
    CHECK(max_abs(CMatrix(pencil(u, e) - u[i])) == 0.0);
  }
  CHECK_THROWS_AS(pencil(u, RVector::Zero(2)), ValidationError);

  const auto two_local = two_local_observables();
  for (double eps : {0.25, 0.5, 1.0}) {
    const CMatrix h = h_epsilon_model(eps).hamiltonian;
    const RVector theta = two_local_coefficients(h);
    CHECK(max_abs(CMatrix(pencil(two_local, theta) - remove_trace(h))) < 1e-14);
  }
}

TEST_CASE("support_function examples") {
  Rng rng(1);
  const auto pauli3 = fixtures::pauli_triple();
  const auto thm = fixtures::pair_from_matrix(fixtures::disk_with_eigenvalue());
  for (int rep = 0; rep < 20; ++rep) {
    CHECK(std::abs(support_function(pauli3, random_direction(3, rng)) - 1.0) < 1e-12);
    CHECK(std::abs(support_function(thm, random_direction(2, rng)) - 1.0) < 1e-12);
  }
  CHECK(std::abs(support_function(fixtures::limit_of_extremal_points(), vec({1, 0, 0})) - 1.0) < 1e-14);
  CHECK_THROWS_AS(support_function(pauli3, RVector::Zero(3)), ValidationError);
}

TEST_CASE("support_function bounds every state and is homogeneous") {
  Rng rng(2);
  const auto u = fixtures::limit_of_extremal_points();
  for (int rep = 0; rep < 20; ++rep) {
    const RVector lambda = random_direction(3, rng);
    const double h = support_function(u, lambda);
    for (int k = 0; k < 20; ++k) {
      CHECK(lambda.dot(expected_values(u, random_state(3, rng))) <= h + 1e-10);
    }
    for (double t : {0.1, 2.0, 17.0}) CHECK(std::abs(support_function(u, t * lambda) - t * h) < 1e-10 * (1 + t));
  }
}

TEST_CASE("E is affine on mixtures") {
  Rng rng(3);
  const auto u = fixtures::limit_of_extremal_points();
  for (int rep = 0; rep < 20; ++rep) {
    const auto rho = random_state(3, rng), sigma = random_state(3, rng);
    const double t = std::uniform_real_distribution<double>(0, 1)(rng);
    const DensityMatrix mix = DensityMatrix::from_numerical(t * rho.matrix() + (1 - t) * sigma.matrix());
    const RVector lhs = expected_values(u, mix);
    const RVector rhs = t * expected_values(u, rho) + (1 - t) * expected_values(u, sigma);
    CHECK(max_abs(RVector(lhs - rhs)) < 1e-10);
  }
}

TEST_CASE("pure-state expectations stay inside the convex support") {
  Rng rng(4);
  const ObservableSet u({random_hermitian(4, rng), random_hermitian(4, rng), random_hermitian(4, rng)});
  std::vector<RVector> dirs;
  std::vector<double> h;
  for (int k = 0; k < 100; ++k) {
    dirs.push_back(random_direction(3, rng));
    h.push_back(support_function(u, dirs.back()));
  }
  double worst = -1e300;
  for (int s = 0; s < 1000; ++s) {
    const RVector p = expected_values(u, density_from_vector(random_unit_vector(4, rng)));
    for (std::size_t k = 0; k < dirs.size(); ++k) worst = std::max(worst, dirs[k].dot(p) - h[k]);
  }
  CHECK(worst <= 1e-8);
  // the support value is attained by a top eigenvector
  for (std::size_t k = 0; k < 10; ++k) {
    const auto eig = hermitian_eig(pencil(u, dirs[k]));
    const RVector p = expected_values(u, density_from_vector(eig.vectors.col(3)));
    CHECK(std::abs(dirs[k].dot(p) - h[k]) < 1e-10);
  }
}

TEST_CASE("exposed_face examples") {
  const auto u = fixtures::limit_of_extremal_points();
  const auto f = exposed_face(u, vec({1, 0, 0}));
  CHECK(f.projection.rank == 2);
  CHECK(max_abs(CMatrix(f.projection.matrix - fixtures::limit_face_projection())) < 1e-12);
  CHECK(f.dim == 1);
  CHECK(!f.whole_body());

  const auto b = exposed_face(fixtures::pauli_triple(), vec({0, 0, 1}));
  CHECK(b.projection.rank == 1);
  CHECK(std::abs(b.projection.matrix(0, 0) - 1.0) < 1e-14);
  CHECK(b.dim == 0);

  const auto h0 = exposed_face(two_local_observables(), two_local_coefficients(h0_hamiltonian()));
  CMatrix p = CMatrix::Zero(8, 8);
  p(0, 0) = 1;
  p(7, 7) = 1;
  CHECK(h0.projection.rank == 2);
  CHECK(max_abs(CMatrix(h0.projection.matrix - p)) < 1e-10);
  CHECK(h0.dim == 1);

  CHECK_THROWS_AS(exposed_face(u, RVector::Zero(3)), ValidationError);
}

TEST_CASE("exposed faces: projection commutes with the pencil and points attain the support value") {
  Rng rng(6);
  const auto u = fixtures::limit_of_extremal_points();
  for (int rep = 0; rep < 20; ++rep) {
    const RVector lambda = random_direction(3, rng);
    const auto f = exposed_face(u, lambda);
    const CMatrix m = pencil(u, lambda);
    CHECK((f.projection.matrix * m - m * f.projection.matrix).norm() < 1e-9);
    const DensityMatrix rho = DensityMatrix::from_numerical(f.projection.matrix / f.projection.rank);
    CHECK(support_function(u, lambda) - lambda.dot(expected_values(u, rho)) <= 1e-7);
  }
  CHECK(body_dimension(u) == 3);
  CHECK(body_dimension(fixtures::pauli_triple()) == 3);
  CHECK(body_dimension(fixtures::pair_from_matrix(fixtures::normal_triangle())) == 2);
}

TEST_CASE("transform_observables") {
  Rng rng(7);
  const auto u = fixtures::limit_of_extremal_points();
  const auto shifted = transform_observables(u, ShiftByIdentity{vec({0.5, 0, 0})});
  const auto rho = random_state(3, rng);
  CHECK(max_abs(RVector(expected_values(shifted, rho) - expected_values(u, rho) - vec({0.5, 0, 0}))) < 1e-14);

  const auto same = transform_observables(u, Recombination{RMatrix::Identity(3, 3)});
  for (Eigen::Index i = 0; i < 3; ++i) CHECK(max_abs(CMatrix(same[i] - u[i])) == 0.0);

  const auto pair = fixtures::pauli_pair();
  const CMatrix t = random_unitary(2, rng);
  const auto conj = transform_observables(pair, UnitaryConjugation{t});
  for (int rep = 0; rep < 20; ++rep) {
    const RVector lambda = random_direction(2, rng);
    CHECK(std::abs(support_function(conj, lambda) - support_function(pair, lambda)) < 1e-9);
  }
  const auto conj3 = transform_observables(u, UnitaryConjugation{random_unitary(3, rng)});
  for (int rep = 0; rep < 20; ++rep) {
    const RVector lambda = random_direction(3, rng);
    CHECK(std::abs(support_function(conj3, lambda) - support_function(u, lambda)) < 1e-9);
  }

  CHECK_THROWS_AS(transform_observables(u, Recombination{RMatrix::Zero(3, 3)}), ValidationError);
  CHECK_THROWS_AS(transform_observables(pair, UnitaryConjugation{2.0 * CMatrix::Identity(2, 2)}), ValidationError);
  CHECK_THROWS_AS(transform_observables(u, ShiftByIdentity{vec({1, 2})}), ValidationError);
}

TEST_CASE("observable JSON round trip and validation") {
  const auto u = fixtures::limit_of_extremal_points();
  const auto back = observables_from_json(observables_to_json(u));
  CHECK(back.r() == 3);
  for (Eigen::Index i = 0; i < 3; ++i) CHECK(max_abs(CMatrix(back[i] - u[i])) == 0.0);

  const auto j = nlohmann::json::parse(R"({"d": 2, "observables": [[[0, [1, 1]], [[1, -1], 0]]]})");
  const auto v = observables_from_json(j);
  CHECK(v[0](0, 1) == Complex(1, 1));

  const auto non_herm = nlohmann::json::parse(R"({"d": 2, "observables": [[[0, 1], [0, 0]]]})");
  CHECK_THROWS_AS(observables_from_json(non_herm), ValidationError);
  const auto wrong_d = nlohmann::json::parse(R"({"d": 3, "observables": [[[0, 1], [1, 0]]]})");
  CHECK_THROWS_AS(observables_from_json(wrong_d), ValidationError);
  CHECK_THROWS_AS(observables_from_json(nlohmann::json::parse(R"({"observables": 3})")), ValidationError);
  CHECK_THROWS_AS(ObservableSet({pauli(1), CMatrix::Identity(3, 3)}), ValidationError);
}
