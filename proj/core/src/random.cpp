#include "qmaxent/random.hpp"

#include <cmath>

namespace qmaxent {

CMatrix random_complex(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal;
  CMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  }
  return g;
}

CMatrix random_hermitian(Eigen::Index d, Rng& rng) { return hermitian_part(random_complex(d, d, rng)); }

CMatrix random_unitary(Eigen::Index d, Rng& rng) {
  const CMatrix g = random_complex(d, d, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < d; ++k) {
    const Complex diag = r(k, k);
    if (std::abs(diag) > 0.0) q.col(k) *= diag / std::abs(diag);
  }
  return q;
}

CVector random_unit_vector(Eigen::Index d, Rng& rng) {
  return normalized(random_complex(d, 1, rng).col(0));
}

DensityMatrix random_state(Eigen::Index d, Rng& rng) {
  const CMatrix g = random_complex(d, d, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::from_numerical(rho);
}

RVector random_direction(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> normal;
  RVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(rng);
  return v / v.norm();
}

}  // namespace qmaxent
