#pragma once

// Density matrices, pure states, entropies, tensor products and partial traces.
//
// Tensor products use the leftmost-slowest convention: |i>|j> -> i*dim_b + j.
// Entropies are in nats.

#include <vector>

#include "qmaxent/linalg.hpp"

namespace qmaxent {

inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdSlack = 1e-9;

/// A validated trace-one positive semidefinite Hermitian matrix.
class DensityMatrix {
 public:
  /// The unique state of the one-dimensional algebra.
  DensityMatrix() : rho_(CMatrix::Identity(1, 1)) {}

  /// Validates Hermiticity (1e-12), trace (1e-10) and the PSD slack (-1e-9).
  explicit DensityMatrix(CMatrix entries);

  /// Symmetrizes, clamps eigenvalues in [-slack, 0) and renormalizes. For
  /// solver outputs that carry roundoff; still rejects genuinely invalid input.
  static DensityMatrix from_numerical(const CMatrix& m, double slack = kPsdSlack);

  static DensityMatrix maximally_mixed(Eigen::Index dim);

  [[nodiscard]] const CMatrix& matrix() const { return rho_; }
  [[nodiscard]] Eigen::Index dim() const { return rho_.rows(); }
  [[nodiscard]] RVector eigenvalues() const;

 private:
  CMatrix rho_;
};

/// Factor dimensions of a tensor-product space, e.g. {2, 2, 2}.
using SystemDims = std::vector<int>;

/// Normalizes a non-zero vector (throws on a zero vector).
CVector normalized(const CVector& x);

/// xx* for a unit vector x (unit norm within 1e-12).
DensityMatrix density_from_vector(const CVector& x);

double von_neumann_entropy(const DensityMatrix& rho);

CMatrix tensor(const CMatrix& a, const CMatrix& b);
CMatrix tensor(std::initializer_list<CMatrix> factors);

/// Reduced state on the factors listed in `keep` (any order, no repeats);
/// the output keeps the factors in ascending index order.
DensityMatrix partial_trace(const DensityMatrix& rho, const SystemDims& dims,
                            const std::vector<int>& keep);

/// Pauli matrix sigma_i for i in {1, 2, 3}.
CMatrix pauli(int i);

/// -eta ln eta - (1 - eta) ln(1 - eta).
double binary_entropy(double eta);

/// Half the trace norm of rho - sigma.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_distance(const CMatrix& rho, const CMatrix& sigma);

}  // namespace qmaxent
