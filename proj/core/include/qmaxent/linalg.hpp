#pragma once

// Dense complex / Hermitian linear algebra shared by every other module.
//
// Matrices are plain Eigen::MatrixXcd values. Functions that need a Hermitian
// argument validate it (entrywise, TOL_HERM) and throw ValidationError.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qmaxent {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Raised when an argument violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kDegeneracyTol = 1e-8;

bool is_hermitian(const CMatrix& m, double tol = kHermitianTol);

/// Throws ValidationError naming `what` unless `m` is square and Hermitian.
void require_hermitian(const CMatrix& m, const std::string& what = "matrix");

/// Symmetrizes roundoff away: (m + m*) / 2.
CMatrix hermitian_part(const CMatrix& m);

/// Eigenvalues ascending; columns of `vectors` orthonormal and phase fixed so
/// the largest-modulus entry of each column is real positive.
struct SpectralDecomposition {
  RVector values;
  CMatrix vectors;
};

/// Cyclic complex Jacobi. Deterministic for identical input.
SpectralDecomposition hermitian_eig(const CMatrix& h);

/// Largest eigenvalue only (still via the full Jacobi sweep).
double max_eigenvalue(const CMatrix& h);

/// V diag(f(lambda)) V* for a real function f.
template <typename F>
CMatrix spectral_function(const SpectralDecomposition& eig, F&& f) {
  const auto n = eig.values.size();
  CMatrix out = CMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out += f(eig.values(k)) * eig.vectors.col(k) * eig.vectors.col(k).adjoint();
  }
  return out;
}

CMatrix matrix_exp_hermitian(const CMatrix& h);

/// -sum l ln l with 0 ln 0 = 0. Entries in [-1e-10, 0) are clamped to zero.
double entropy_of_spectrum(std::span<const double> eigenvalues);
double entropy_of_spectrum(const RVector& eigenvalues);

/// Orthogonal projection together with the orthonormal basis of its range
/// that compress() uses.
struct Projection {
  CMatrix matrix;
  CMatrix basis;  // dim x rank, orthonormal columns
  int rank = 0;

  [[nodiscard]] Eigen::Index dim() const { return matrix.rows(); }
};

/// Projection onto the span of the given columns (Gram-Schmidt, in order).
Projection projection_from_columns(const CMatrix& columns, double drop_tol = 1e-10);

/// Spectral projection onto eigenvalues >= lambda_max - degeneracy_tol.
Projection spectral_projection_max(const CMatrix& h, double degeneracy_tol = kDegeneracyTol);

/// The rank(p) x rank(p) matrix of p a p in p.basis.
CMatrix compress(const CMatrix& a, const Projection& p);

/// Inverse of compress for operators supported on range(p).
CMatrix embed(const CMatrix& compressed, const Projection& p);

/// Orthonormal (Frobenius) basis of the complex *-algebra generated by the
/// identity, the generators and their adjoints.
std::vector<CMatrix> generated_star_algebra_basis(const std::vector<CMatrix>& generators);

std::size_t generated_star_algebra_dim(const std::vector<CMatrix>& generators);

/// Frobenius distance from `m` to the span of an orthonormal matrix basis.
double distance_to_span(const CMatrix& m, const std::vector<CMatrix>& orthonormal_basis);

/// Basis of {X : XG = GX and XG* = G*X for every generator G}.
std::vector<CMatrix> commutant_basis(const std::vector<CMatrix>& generators);

/// Orthonormal basis (columns) of the null space of a real matrix, counting
/// singular values <= rel_tol * max(1, sigma_max) as zero.
RMatrix real_null_space(const RMatrix& m, double rel_tol = 1e-9);

/// Number of singular values >= abs_tol.
int numerical_rank(const RMatrix& m, double abs_tol);

/// Orthonormal basis of traceless Hermitian k x k matrices w.r.t. tr(ab).
std::vector<CMatrix> traceless_hermitian_basis(Eigen::Index k);

double frobenius_distance(const CMatrix& a, const CMatrix& b);

}  // namespace qmaxent
