#pragma once

// Small named observable sets with known geometry.

#include <string>
#include <vector>

#include "qmaxent/expectation.hpp"

namespace qmaxent::fixtures {

/// u_1 = Re A, u_2 = Im A, so that W(u_1 + i u_2) = W(A).
ObservableSet pair_from_matrix(const CMatrix& a);
CMatrix matrix_from_pair(const ObservableSet& u);

ObservableSet pauli_triple();
ObservableSet pauli_pair();

// The 3x3 triple whose convex support has extremal points alpha(eps)
// converging to the mid-point (1, 1, 1/2) of a segment.
ObservableSet limit_of_extremal_points();
/// sqrt((1 - eps)^2 + 2 eps^2), the top eigenvalue of u_1 - eps u_2.
double limit_xi(double eps);
/// (xi + eps - 1) / eps^2, continued by 1 at eps = 0.
double limit_x(double eps);
/// Unit top eigenvector of u_1 - eps u_2, proportional to (1, 1, -eps x(eps)).
CVector limit_vector(double eps);
/// Closed form of E(limit_vector(eps) limit_vector(eps)*).
RVector limit_alpha(double eps);
/// e_1 e_1* + e_2 e_2*.
CMatrix limit_face_projection();

/// [[0, 2], [0, 0]] + [1]: W(A) is the unit disk and 1 its only multiply
/// generated round boundary point.
CMatrix disk_with_eigenvalue();
/// 1_2 (x) [[0, 2], [0, 0]]: every circle point is multiply generated.
CMatrix doubled_disk();
/// diag(1, i, 0), a triangle.
CMatrix normal_triangle();
/// [[0, 1], [0, 0]] + [1]: conv of the disk of radius 1/2 and the point 1.
CMatrix disk_and_exterior_point();

/// (1, alpha, 0) / sqrt(2) for |alpha| = 1.
CVector circle_generator(Complex alpha);

/// Names accepted by named_observables().
std::vector<std::string> observable_fixture_names();
ObservableSet named_observables(const std::string& name);

}  // namespace qmaxent::fixtures
