#include "qmaxent/fixtures.hpp"

#include <cmath>

#include "qmaxent/correlation.hpp"

namespace qmaxent::fixtures {

ObservableSet pair_from_matrix(const CMatrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) throw ValidationError("matrix must be square");
  const CMatrix re = (a + a.adjoint()) / 2.0;
  const CMatrix im = (a - a.adjoint()) / Complex(0.0, 2.0);
  return ObservableSet({re, im});
}

CMatrix matrix_from_pair(const ObservableSet& u) {
  if (u.r() != 2) throw ValidationError("expected exactly two observables");
  return u[0] + Complex(0.0, 1.0) * u[1];
}

ObservableSet pauli_triple() { return ObservableSet({pauli(1), pauli(2), pauli(3)}); }
ObservableSet pauli_pair() { return ObservableSet({pauli(1), pauli(2)}); }

ObservableSet limit_of_extremal_points() {
  CMatrix u1(3, 3), u2(3, 3), u3(3, 3);
  u1 << 1, 0, 0, 0, 1, 0, 0, 0, -1;
  u2 << 1, 0, 1, 0, 1, 1, 1, 1, -1;
  u3 << 1, 0, 1, 0, 0, 1, 1, 1, -1;
  return ObservableSet({u1, u2, u3});
}

double limit_xi(double eps) { return std::sqrt((1 - eps) * (1 - eps) + 2 * eps * eps); }

double limit_x(double eps) {
  if (eps == 0.0) return 1.0;
  // (xi + eps - 1) / eps^2 without cancellation: xi - (1 - eps) = 2 eps^2 / (xi + 1 - eps)
  return 2.0 / (limit_xi(eps) + 1.0 - eps);
}

CVector limit_vector(double eps) {
  CVector v(3);
  v << 1.0, 1.0, -eps * limit_x(eps);
  return normalized(v);
}

RVector limit_alpha(double eps) {
  const double x = limit_x(eps);
  const double c = x / (2.0 - (1.0 - eps) * x);
  RVector a(3);
  a << c * (1 - eps), c * (1 - 3 * eps), c * (1 - 3 * eps);
  a(2) -= 1.0 / (2.0 + (eps * x) * (eps * x));
  return a;
}

CMatrix limit_face_projection() {
  CMatrix p = CMatrix::Zero(3, 3);
  p(0, 0) = 1.0;
  p(1, 1) = 1.0;
  return p;
}

CMatrix disk_with_eigenvalue() {
  CMatrix a = CMatrix::Zero(3, 3);
  a(0, 1) = 2.0;
  a(2, 2) = 1.0;
  return a;
}

CMatrix doubled_disk() {
  CMatrix b = CMatrix::Zero(2, 2);
  b(0, 1) = 2.0;
  return tensor(CMatrix::Identity(2, 2), b);
}

CMatrix normal_triangle() {
  CMatrix a = CMatrix::Zero(3, 3);
  a(0, 0) = 1.0;
  a(1, 1) = Complex(0.0, 1.0);
  return a;
}

CMatrix disk_and_exterior_point() {
  CMatrix a = CMatrix::Zero(3, 3);
  a(0, 1) = 1.0;
  a(2, 2) = 1.0;
  return a;
}

CVector circle_generator(Complex alpha) {
  CVector v(3);
  v << 1.0, alpha, 0.0;
  return v / std::sqrt(2.0);
}

std::vector<std::string> observable_fixture_names() {
  return {"example-5-2", "thm-3x3", "disk-4x4", "triangle", "disk-and-point", "bloch", "pauli-pair",
          "two-local"};
}

ObservableSet named_observables(const std::string& name) {
  if (name == "example-5-2") return limit_of_extremal_points();
  if (name == "thm-3x3") return pair_from_matrix(disk_with_eigenvalue());
  if (name == "disk-4x4") return pair_from_matrix(doubled_disk());
  if (name == "triangle") return pair_from_matrix(normal_triangle());
  if (name == "disk-and-point") return pair_from_matrix(disk_and_exterior_point());
  if (name == "bloch") return pauli_triple();
  if (name == "pauli-pair") return pauli_pair();
  if (name == "two-local") return two_local_observables();
  throw ValidationError("unknown fixture: " + name);
}

}  // namespace qmaxent::fixtures
