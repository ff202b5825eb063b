#include "qmaxent/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace qmaxent {

DensityMatrix::DensityMatrix(CMatrix entries) : rho_(std::move(entries)) {
  require_hermitian(rho_, "density matrix");
  const Complex tr = rho_.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw ValidationError("density matrix trace differs from one");
  }
  if (hermitian_eig(rho_).values(0) < -kPsdSlack) {
    throw ValidationError("density matrix is not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::from_numerical(const CMatrix& m, double slack) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ValidationError("density matrix must be square");
  }
  const auto eig = hermitian_eig(hermitian_part(m));
  if (eig.values(0) < -slack) throw ValidationError("state has a negative eigenvalue");
  RVector v = eig.values.cwiseMax(0.0);
  const double total = v.sum();
  if (!(total > 0.0)) throw ValidationError("state has zero trace");
  v /= total;
  CMatrix out = eig.vectors * v.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  return DensityMatrix(hermitian_part(out));
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

RVector DensityMatrix::eigenvalues() const { return hermitian_eig(rho_).values; }

CVector normalized(const CVector& x) {
  const double n = x.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw ValidationError("cannot normalize a zero vector");
  return x / n;
}

DensityMatrix density_from_vector(const CVector& x) {
  const double n = x.norm();
  if (n == 0.0) throw ValidationError("pure state from a zero vector");
  if (std::abs(n - 1.0) > 1e-12) throw ValidationError("pure state vector is not a unit vector");
  return DensityMatrix(hermitian_part(x * x.adjoint()));
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_of_spectrum(rho.eigenvalues());
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix tensor(std::initializer_list<CMatrix> factors) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (const auto& f : factors) out = tensor(out, f);
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const SystemDims& dims,
                            const std::vector<int>& keep) {
  if (dims.empty()) throw ValidationError("partial_trace: empty system dims");
  long total = 1;
  for (int f : dims) {
    if (f <= 0) throw ValidationError("partial_trace: factor dims must be positive");
    total *= f;
  }
  if (total != rho.dim()) throw ValidationError("partial_trace: dims inconsistent with state");
  if (keep.empty()) throw ValidationError("partial_trace: keep set is empty");
  const std::set<int> kept(keep.begin(), keep.end());
  if (kept.size() != keep.size() || *kept.begin() < 0 ||
      *kept.rbegin() >= static_cast<int>(dims.size())) {
    throw ValidationError("partial_trace: invalid keep set");
  }

  const auto n = dims.size();
  // strides, leftmost slowest
  std::vector<long> stride(n, 1);
  for (std::size_t k = n - 1; k > 0; --k) stride[k - 1] = stride[k] * dims[k];

  long out_dim = 1;
  for (int k : kept) out_dim *= dims[static_cast<std::size_t>(k)];
  CMatrix out = CMatrix::Zero(out_dim, out_dim);

  auto split = [&](long index, long& kept_index, long& traced_index) {
    kept_index = 0;
    traced_index = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const long digit = (index / stride[k]) % dims[k];
      if (kept.count(static_cast<int>(k))) {
        kept_index = kept_index * dims[k] + digit;
      } else {
        traced_index = traced_index * dims[k] + digit;
      }
    }
  };

  std::vector<long> kept_of(static_cast<std::size_t>(total));
  std::vector<long> traced_of(static_cast<std::size_t>(total));
  for (long i = 0; i < total; ++i) split(i, kept_of[i], traced_of[i]);

  const CMatrix& m = rho.matrix();
  for (long i = 0; i < total; ++i) {
    for (long j = 0; j < total; ++j) {
      if (traced_of[i] == traced_of[j]) out(kept_of[i], kept_of[j]) += m(i, j);
    }
  }
  return DensityMatrix::from_numerical(out);
}

CMatrix pauli(int i) {
  CMatrix s(2, 2);
  switch (i) {
    case 1:
      s << 0, 1, 1, 0;
      break;
    case 2:
      s << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    case 3:
      s << 1, 0, 0, -1;
      break;
    default:
      throw ValidationError("pauli index must be 1, 2 or 3");
  }
  return s;
}

double binary_entropy(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ValidationError("binary_entropy: eta outside [0, 1]");
  auto term = [](double x) { return x > 0.0 ? -x * std::log(x) : 0.0; };
  return term(eta) + term(1.0 - eta);
}

double trace_distance(const CMatrix& rho, const CMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw ValidationError("trace_distance: dimension mismatch");
  }
  const auto eig = hermitian_eig(hermitian_part(rho - sigma));
  return 0.5 * eig.values.cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return trace_distance(rho.matrix(), sigma.matrix());
}

}  // namespace qmaxent
