#include "qmaxent/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qmaxent {

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    for (Eigen::Index k = j; k < m.cols(); ++k) {
      if (std::abs(m(j, k) - std::conj(m(k, j))) > tol) return false;
    }
  }
  return true;
}

void require_hermitian(const CMatrix& m, const std::string& what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ValidationError(what + " must be a non-empty square matrix");
  }
  if (!m.allFinite()) throw ValidationError(what + " has non-finite entries");
  if (!is_hermitian(m)) throw ValidationError(what + " is not Hermitian");
}

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

namespace {

double off_diagonal_norm2(const CMatrix& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.rows(); ++j) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (j != k) s += std::norm(a(j, k));
    }
  }
  return s;
}

// One complex Jacobi rotation annihilating a(p, q).
void rotate(CMatrix& a, CMatrix& v, Eigen::Index p, Eigen::Index q) {
  const Complex apq = a(p, q);
  const double b = std::abs(apq);
  if (b == 0.0) return;
  const Complex phase = std::conj(apq) / b;  // e^{-i phi}
  const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * b);
  const double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                              : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const Complex jpp = c;
  const Complex jpq = s;
  const Complex jqp = -s * phase;
  const Complex jqq = c * phase;

  const CVector ap = a.col(p);
  const CVector aq = a.col(q);
  a.col(p) = ap * jpp + aq * jqp;
  a.col(q) = ap * jpq + aq * jqq;

  const Eigen::RowVectorXcd rp = a.row(p);
  const Eigen::RowVectorXcd rq = a.row(q);
  a.row(p) = std::conj(jpp) * rp + std::conj(jqp) * rq;
  a.row(q) = std::conj(jpq) * rp + std::conj(jqq) * rq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  const CVector vp = v.col(p);
  const CVector vq = v.col(q);
  v.col(p) = vp * jpp + vq * jqp;
  v.col(q) = vp * jpq + vq * jqq;
}

void fix_phase(CMatrix& v) {
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    double best = 0.0;
    for (Eigen::Index j = 0; j < v.rows(); ++j) best = std::max(best, std::abs(v(j, k)));
    for (Eigen::Index j = 0; j < v.rows(); ++j) {
      const double m = std::abs(v(j, k));
      if (m >= best * (1.0 - 1e-10)) {
        v.col(k) *= std::conj(v(j, k)) / m;
        v(j, k) = m;
        break;
      }
    }
  }
}

}  // namespace

SpectralDecomposition hermitian_eig(const CMatrix& h) {
  require_hermitian(h, "hermitian_eig input");
  const Eigen::Index n = h.rows();
  CMatrix a = hermitian_part(h);
  CMatrix v = CMatrix::Identity(n, n);

  const double scale = std::max(a.norm(), std::numeric_limits<double>::min());
  constexpr int kMaxSweeps = 100;
  double previous = std::numeric_limits<double>::infinity();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double off = off_diagonal_norm2(a);
    if (off <= 1e-32 * scale * scale || off >= previous) break;
    previous = off;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) > 1e-300) rotate(a, v, p, q);
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() < a(y, y).real(); });

  SpectralDecomposition out{RVector(n), CMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }
  fix_phase(out.vectors);
  return out;
}

double max_eigenvalue(const CMatrix& h) { return hermitian_eig(h).values.maxCoeff(); }

CMatrix matrix_exp_hermitian(const CMatrix& h) {
  return spectral_function(hermitian_eig(h), [](double x) { return std::exp(x); });
}

double entropy_of_spectrum(std::span<const double> eigenvalues) {
  double sum = 0.0;
  double s = 0.0;
  for (double l : eigenvalues) {
    if (!std::isfinite(l)) throw ValidationError("entropy_of_spectrum: non-finite eigenvalue");
    if (l < -1e-10) throw ValidationError("entropy_of_spectrum: negative eigenvalue");
    const double x = std::max(l, 0.0);
    sum += x;
    if (x > 0.0) s -= x * std::log(x);
  }
  if (std::abs(sum - 1.0) > 1e-8) {
    throw ValidationError("entropy_of_spectrum: eigenvalues do not sum to one");
  }
  return std::max(s, 0.0);
}

double entropy_of_spectrum(const RVector& eigenvalues) {
  return entropy_of_spectrum(std::span<const double>(eigenvalues.data(),
                                                     static_cast<std::size_t>(eigenvalues.size())));
}

Projection projection_from_columns(const CMatrix& columns, double drop_tol) {
  const Eigen::Index n = columns.rows();
  std::vector<CVector> kept;
  for (Eigen::Index k = 0; k < columns.cols(); ++k) {
    CVector x = columns.col(k);
    const double norm0 = x.norm();
    if (norm0 == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : kept) x -= e * e.dot(x);
    }
    const double r = x.norm();
    if (r > drop_tol * std::max(1.0, norm0)) kept.push_back(x / r);
  }
  Projection p;
  p.rank = static_cast<int>(kept.size());
  p.basis = CMatrix(n, p.rank);
  for (int k = 0; k < p.rank; ++k) p.basis.col(k) = kept[static_cast<std::size_t>(k)];
  p.matrix = p.basis * p.basis.adjoint();
  return p;
}

Projection spectral_projection_max(const CMatrix& h, double degeneracy_tol) {
  if (!(degeneracy_tol > 0.0)) throw ValidationError("degeneracy tolerance must be positive");
  const auto eig = hermitian_eig(h);
  const Eigen::Index n = eig.values.size();
  const double top = eig.values(n - 1);
  Eigen::Index first = n - 1;
  while (first > 0 && eig.values(first - 1) >= top - degeneracy_tol) --first;
  // top eigenvalue first, then descending
  CMatrix cols(n, n - first);
  for (Eigen::Index k = n - 1, c = 0; k >= first; --k, ++c) cols.col(c) = eig.vectors.col(k);
  return projection_from_columns(cols);
}

CMatrix compress(const CMatrix& a, const Projection& p) {
  if (p.rank == 0) throw ValidationError("compress: rank-zero projection");
  if (a.rows() != p.dim() || a.cols() != p.dim()) {
    throw ValidationError("compress: dimension mismatch");
  }
  return p.basis.adjoint() * a * p.basis;
}

CMatrix embed(const CMatrix& compressed, const Projection& p) {
  if (compressed.rows() != p.rank || compressed.cols() != p.rank) {
    throw ValidationError("embed: dimension mismatch");
  }
  return p.basis * compressed * p.basis.adjoint();
}

namespace {

Complex frob(const CMatrix& a, const CMatrix& b) { return (a.adjoint() * b).trace(); }

// Adds m to the orthonormal basis if it is independent; returns true if added.
bool extend_basis(std::vector<CMatrix>& basis, CMatrix m) {
  const double n0 = m.norm();
  if (n0 == 0.0) return false;
  m /= n0;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) m -= frob(b, m) * b;
  }
  const double r = m.norm();
  if (r < 1e-9) return false;
  basis.push_back(m / r);
  return true;
}

}  // namespace

std::vector<CMatrix> generated_star_algebra_basis(const std::vector<CMatrix>& generators) {
  if (generators.empty()) return {};
  const Eigen::Index d = generators.front().rows();
  std::vector<CMatrix> letters;
  for (const auto& g : generators) {
    if (g.rows() != d || g.cols() != d) {
      throw ValidationError("generated_star_algebra: generators must be square of equal size");
    }
    letters.push_back(g);
    letters.push_back(g.adjoint());
  }
  std::vector<CMatrix> basis;
  extend_basis(basis, CMatrix::Identity(d, d));
  for (const auto& g : letters) extend_basis(basis, g);

  const auto cap = static_cast<std::size_t>(d * d);
  // Closing under left multiplication by the letters yields the span of all words.
  for (std::size_t i = 0; i < basis.size() && basis.size() < cap; ++i) {
    for (const auto& g : letters) {
      extend_basis(basis, g * basis[i]);
      if (basis.size() >= cap) break;
    }
  }
  return basis;
}

std::size_t generated_star_algebra_dim(const std::vector<CMatrix>& generators) {
  if (generators.empty()) return 1;
  return generated_star_algebra_basis(generators).size();
}

double distance_to_span(const CMatrix& m, const std::vector<CMatrix>& orthonormal_basis) {
  CMatrix r = m;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : orthonormal_basis) r -= frob(b, r) * b;
  }
  return r.norm();
}

std::vector<CMatrix> commutant_basis(const std::vector<CMatrix>& generators) {
  if (generators.empty()) return {};
  const Eigen::Index d = generators.front().rows();
  const Eigen::Index dd = d * d;
  const CMatrix id = CMatrix::Identity(d, d);
  std::vector<CMatrix> blocks;
  for (const auto& g : generators) {
    if (g.rows() != d || g.cols() != d) throw ValidationError("commutant_basis: size mismatch");
    for (const CMatrix& x : {g, CMatrix(g.adjoint())}) {
      // vec(XG - GX) = (G^T (x) I - I (x) G) vec(X), column-major vec
      CMatrix k = CMatrix::Zero(dd, dd);
      for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) {
          k.block(a * d, b * d, d, d) += x(b, a) * id;
          k.block(a * d, b * d, d, d) -= id(a, b) * x;
        }
      }
      blocks.push_back(std::move(k));
    }
  }
  CMatrix system(dd * static_cast<Eigen::Index>(blocks.size()), dd);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    system.block(static_cast<Eigen::Index>(i) * dd, 0, dd, dd) = blocks[i];
  }
  Eigen::JacobiSVD<CMatrix> svd(system, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double tol = 1e-9 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  std::vector<CMatrix> out;
  for (Eigen::Index k = 0; k < dd; ++k) {
    const double s = k < sv.size() ? sv(k) : 0.0;
    if (s <= tol) {
      out.push_back(Eigen::Map<const CMatrix>(svd.matrixV().col(k).data(), d, d));
    }
  }
  return out;
}

RMatrix real_null_space(const RMatrix& m, double rel_tol) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0) return RMatrix::Identity(n, n);
  Eigen::JacobiSVD<RMatrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double tol = rel_tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double s = k < sv.size() ? sv(k) : 0.0;
    if (s <= tol) cols.push_back(k);
  }
  RMatrix out(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out.col(static_cast<Eigen::Index>(i)) = svd.matrixV().col(cols[i]);
  }
  return out;
}

int numerical_rank(const RMatrix& m, double abs_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<RMatrix> svd(m);
  int r = 0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
    if (svd.singularValues()(k) >= abs_tol) ++r;
  }
  return r;
}

std::vector<CMatrix> traceless_hermitian_basis(Eigen::Index k) {
  std::vector<CMatrix> out;
  const double r2 = std::sqrt(0.5);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index l = j + 1; l < k; ++l) {
      CMatrix x = CMatrix::Zero(k, k);
      x(j, l) = r2;
      x(l, j) = r2;
      out.push_back(x);
      CMatrix y = CMatrix::Zero(k, k);
      y(j, l) = Complex(0.0, -r2);
      y(l, j) = Complex(0.0, r2);
      out.push_back(y);
    }
  }
  for (Eigen::Index m = 1; m < k; ++m) {
    CMatrix z = CMatrix::Zero(k, k);
    const double norm = std::sqrt(static_cast<double>(m * (m + 1)));
    for (Eigen::Index j = 0; j < m; ++j) z(j, j) = 1.0 / norm;
    z(m, m) = -static_cast<double>(m) / norm;
    out.push_back(z);
  }
  return out;
}

double frobenius_distance(const CMatrix& a, const CMatrix& b) { return (a - b).norm(); }

}  // namespace qmaxent
