#include "qmaxent/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace qmaxent {

namespace {

// Eigenvalues of a Gibbs state below this are treated as outside its support.
constexpr double kSupportFloor = 1e-9;
constexpr double kArmijo = 1e-4;
constexpr double kHessianShift = 1e-12;

struct Evaluation {
  double log_z = 0.0;
  double top = 0.0;  // lambda_max(u(theta))
  RVector mean;
  SpectralDecomposition eig;
  RVector weights;  // eigenvalues of the Gibbs state, same order as eig
  CMatrix rho;
};

Evaluation evaluate(const ObservableSet& u, const RVector& theta) {
  Evaluation ev;
  ev.eig = hermitian_eig(pencil(u, theta));
  ev.top = ev.eig.values.maxCoeff();
  ev.weights = (ev.eig.values.array() - ev.top).exp().matrix();
  const double z = ev.weights.sum();
  ev.weights /= z;
  ev.log_z = ev.top + std::log(z);
  ev.rho = ev.eig.vectors * ev.weights.cast<Complex>().asDiagonal() * ev.eig.vectors.adjoint();
  ev.rho = hermitian_part(ev.rho);
  ev.mean = expected_values(u, ev.rho);
  return ev;
}

// Covariance via divided differences of exp in the eigenbasis of u(theta).
RMatrix covariance(const ObservableSet& u, const Evaluation& ev) {
  const auto d = ev.eig.values.size();
  const auto r = u.r();
  RMatrix sqrt_k(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      const double la = ev.eig.values(a);
      const double lb = ev.eig.values(b);
      const double delta = std::abs(la - lb);
      const double base = std::max(ev.weights(a), ev.weights(b));
      const double dd = delta > 0.0 ? base * (-std::expm1(-delta)) / delta : base;
      sqrt_k(a, b) = std::sqrt(dd);
    }
  }
  CMatrix x(d * d, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    CMatrix ui = ev.eig.vectors.adjoint() * u[i] * ev.eig.vectors;
    ui.array() *= sqrt_k.cast<Complex>().array();
    x.col(i) = Eigen::Map<const CVector>(ui.data(), d * d);
  }
  RMatrix h = (x.adjoint() * x).real() - ev.mean * ev.mean.transpose();
  return 0.5 * (h + h.transpose());
}

double inf_norm(const RVector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

double observable_scale(const ObservableSet& u) {
  double s = 0.0;
  for (const auto& m : u.observables()) s = std::max(s, m.cwiseAbs().maxCoeff());
  return std::max(1.0, s);
}

// Splits R^r into directions lambda with u(lambda) proportional to the
// identity and their orthogonal complement.
struct IdentitySplit {
  RMatrix scalar;      // r x s
  RMatrix effective;   // r x q
};

IdentitySplit split_identity_directions(const ObservableSet& u) {
  const auto d = u.d();
  const auto r = u.r();
  RMatrix t(2 * d * d, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    CMatrix m = u[i];
    m.diagonal().array() -= u[i].trace() / static_cast<double>(d);
    const Eigen::Map<const CVector> v(m.data(), d * d);
    t.col(i).head(d * d) = v.real();
    t.col(i).tail(d * d) = v.imag();
  }
  Eigen::JacobiSVD<RMatrix> svd(t, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  // Tight on purpose: near-scalar compressions of ill-conditioned faces must
  // stay visible to Newton.
  const double cut = 1e-13 * std::max(1.0, s.size() ? s(0) : 0.0);
  int rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) rank += s(k) > cut ? 1 : 0;
  IdentitySplit out;
  out.effective = svd.matrixV().leftCols(rank);
  out.scalar = svd.matrixV().rightCols(r - rank);
  return out;
}

void check_coordinate_bounds(const ObservableSet& u, const RVector& alpha) {
  const double slack = 1e-9 * (1.0 + inf_norm(alpha));
  for (Eigen::Index i = 0; i < u.r(); ++i) {
    const auto eig = hermitian_eig(u[i]);
    const double lo = eig.values(0);
    const double hi = eig.values(eig.values.size() - 1);
    RVector dir = RVector::Zero(u.r());
    if (alpha(i) > hi + slack) {
      dir(i) = 1.0;
      throw InfeasibleError("expected value " + std::to_string(i + 1) + " exceeds the largest eigenvalue",
                            dir, alpha(i) - hi);
    }
    if (alpha(i) < lo - slack) {
      dir(i) = -1.0;
      throw InfeasibleError("expected value " + std::to_string(i + 1) + " is below the smallest eigenvalue",
                            dir, lo - alpha(i));
    }
  }
}

void check_scalar_directions(const ObservableSet& u, const RVector& alpha, const RMatrix& scalar) {
  const double slack = 1e-13 * (1.0 + inf_norm(alpha)) * observable_scale(u);
  for (Eigen::Index k = 0; k < scalar.cols(); ++k) {
    const RVector n = scalar.col(k);
    const double value = (pencil(u, n).trace().real()) / static_cast<double>(u.d());
    const double miss = n.dot(alpha) - value;
    if (std::abs(miss) > slack) {
      throw InfeasibleError("expected values violate a linear relation between observables",
                            miss > 0 ? RVector(n) : RVector(-n), std::abs(miss));
    }
  }
}

DualState make_dual(const RVector& alpha, const RVector& theta, const Evaluation& ev) {
  return DualState{theta, ev.log_z, ev.mean - alpha, DensityMatrix::from_numerical(ev.rho)};
}

}  // namespace

LogPartition log_partition(const ObservableSet& u, const RVector& theta, bool with_hessian) {
  if (theta.size() != u.r()) throw ValidationError("log_partition: theta length mismatch");
  if (!theta.allFinite()) throw ValidationError("log_partition: theta must be finite");
  const Evaluation ev = evaluate(u, theta);
  LogPartition out;
  out.value = ev.log_z;
  out.gradient = ev.mean;
  if (with_hessian) out.hessian = covariance(u, ev);
  return out;
}

DensityMatrix gibbs_state(const ObservableSet& u, const RVector& theta) {
  if (theta.size() != u.r()) throw ValidationError("gibbs_state: theta length mismatch");
  return DensityMatrix::from_numerical(evaluate(u, theta).rho);
}

InteriorResult maxent_interior(const ObservableSet& u, const RVector& alpha, const SolverOptions& options) {
  if (alpha.size() != u.r()) throw ValidationError("alpha length does not match the observable count");
  if (!alpha.allFinite()) throw ValidationError("alpha must be finite");
  if (!(options.tol > 0.0) || !(options.theta_max > 0.0)) {
    throw ValidationError("solver tolerances must be positive");
  }

  check_coordinate_bounds(u, alpha);
  const IdentitySplit split = split_identity_directions(u);
  check_scalar_directions(u, alpha, split.scalar);
  const RMatrix& q = split.effective;

  RVector theta = RVector::Zero(u.r());
  Evaluation ev = evaluate(u, theta);
  if (q.cols() == 0) return make_dual(alpha, theta, ev);

  const double alpha_scale = 1.0 + inf_norm(alpha);
  auto psi_of = [&](const Evaluation& e, const RVector& th) { return e.log_z - th.dot(alpha); };

  BoundaryEscape escape;
  double psi = psi_of(ev, theta);
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    const RVector g = ev.mean - alpha;
    const double tnorm = theta.norm();

    // Weak duality: psi >= S(rho*) >= 0 for feasible alpha, and
    // psi >= h(theta) - theta.alpha.
    if (tnorm > 0.0) {
      const double gap = (ev.top - theta.dot(alpha)) / tnorm;
      if (psi < -1e-10 * alpha_scale * std::max(1.0, tnorm) || gap < -1e-8 * alpha_scale) {
        throw InfeasibleError("expected values lie outside the convex support", theta / tnorm, -gap);
      }
    }

    const RVector gq = q.transpose() * g;
    const double gnorm = inf_norm(g);
    const double min_weight = ev.weights.minCoeff();
    if (gnorm <= options.tol && min_weight >= kSupportFloor) {
      return make_dual(alpha, theta, ev);
    }
    if (tnorm > options.theta_max) {
      escape.reason = "dual coordinates exceeded the escape radius";
      break;
    }

    RMatrix hq = q.transpose() * covariance(u, ev) * q;
    hq.diagonal().array() += kHessianShift;
    RVector step = -(hq.ldlt().solve(gq));
    double slope = gq.dot(step);
    if (!step.allFinite() || !(slope < 0.0)) {
      step = -gq;
      slope = -gq.squaredNorm();
    }
    if (slope == 0.0) {
      escape.reason = "gradient vanished in floating point";
      break;
    }

    double t = 1.0;
    bool accepted = false;
    RVector trial_theta;
    Evaluation trial;
    double trial_psi = 0.0;
    for (; t > 1e-14; t *= 0.5) {
      trial_theta = theta + q * (t * step);
      trial = evaluate(u, trial_theta);
      trial_psi = psi_of(trial, trial_theta);
      if (trial_psi <= psi + kArmijo * t * slope) {
        accepted = true;
        break;
      }
      // Close to the optimum the predicted decrease is below the roundoff of psi.
      if (trial_psi <= psi + 1e-14 * (1.0 + std::abs(psi)) && inf_norm(trial.mean - alpha) <= 0.5 * gnorm) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      escape.reason = "line search stalled";
      break;
    }
    // Along an escape ray psi keeps decreasing; doubling reaches the escape
    // radius in logarithmically many steps.
    if (t == 1.0) {
      for (int k = 0; k < 40 && trial_theta.norm() < 2.0 * options.theta_max; ++k) {
        const RVector longer_theta = theta + q * (2.0 * t * step);
        Evaluation longer = evaluate(u, longer_theta);
        const double longer_psi = psi_of(longer, longer_theta);
        if (!(longer_psi < trial_psi - 1e-10 * (1.0 + std::abs(trial_psi)))) break;
        t *= 2.0;
        trial_theta = longer_theta;
        trial = std::move(longer);
        trial_psi = longer_psi;
      }
    }
    theta = trial_theta;
    ev = std::move(trial);
    psi = trial_psi;
  }
  if (escape.reason.empty()) escape.reason = "iteration limit reached";

  const double tnorm = theta.norm();
  escape.theta = theta;
  escape.direction = tnorm > 0.0 ? RVector(theta / tnorm) : RVector(RVector::Zero(u.r()));
  escape.last_state = ev.rho;
  escape.iterations = it;
  escape.gradient_norm = inf_norm(ev.mean - alpha);
  return escape;
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::interior:
      return "interior";
    case SolveStatus::face_compressed:
      return "face-compressed";
    case SolveStatus::singleton_fiber:
      return "singleton-fiber";
  }
  return "unknown";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::continuous:
      return "continuous-along-curve";
    case Verdict::discontinuous:
      return "discontinuous-along-curve";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

std::pair<CVector, double> fit_pure_state(const ObservableSet& u, const RVector& alpha,
                                          const CVector& start, int max_iterations) {
  if (start.size() != u.d()) throw ValidationError("fit_pure_state: start vector has the wrong size");
  const auto d = u.d();
  const auto r = u.r();
  auto values = [&](const CVector& x) {
    RVector e(r);
    for (Eigen::Index i = 0; i < r; ++i) e(i) = x.dot(u[i] * x).real();
    return e;
  };
  CVector x = normalized(start);
  RVector res = values(x) - alpha;
  double mu = 1e-3;
  const double stop = 1e-15 * observable_scale(u);
  for (int it = 0; it < max_iterations && inf_norm(res) > stop; ++it) {
    RMatrix jac(r, 2 * d);
    const RVector e = res + alpha;
    for (Eigen::Index i = 0; i < r; ++i) {
      const CVector y = u[i] * x - e(i) * x;
      jac.row(i).head(d) = 2.0 * y.real().transpose();
      jac.row(i).tail(d) = 2.0 * y.imag().transpose();
    }
    const RMatrix jtj = jac.transpose() * jac;
    const RVector jtr = jac.transpose() * res;
    bool improved = false;
    for (int tries = 0; tries < 30; ++tries) {
      RMatrix lhs = jtj;
      lhs.diagonal().array() += mu;
      const RVector s = -lhs.ldlt().solve(jtr);
      CVector dx(d);
      dx.real() = s.head(d);
      dx.imag() = s.tail(d);
      const CVector candidate = normalized(x + dx);
      const RVector cand_res = values(candidate) - alpha;
      if (cand_res.norm() < res.norm()) {
        x = candidate;
        res = cand_res;
        mu = std::max(mu * 0.3, 1e-15);
        improved = true;
        break;
      }
      mu *= 10.0;
    }
    if (!improved) break;
  }
  return {x, inf_norm(res)};
}

namespace {

struct LocalSolution {
  CMatrix rho;                 // local coordinates
  CMatrix support;             // local coordinates, orthonormal columns
  std::vector<RVector> chain;
  std::optional<DualState> dual;  // only for an interior solve at the top level
  int iterations = 0;
};

struct Candidate {
  RVector lambda;
  Projection face;
};

// Directions lambda for which range(b) is an eigenspace of u(lambda):
// c* u(lambda) b = 0 and b* u(lambda) b is scalar.
RMatrix eigenspace_directions(const ObservableSet& u, const CMatrix& b) {
  const auto d = u.d();
  const auto k = b.cols();
  const Projection pb = projection_from_columns(b);
  // eigenvalue-0 eigenvectors of pb, which come first
  const CMatrix c = hermitian_eig(pb.matrix).vectors.leftCols(d - k);
  const auto rows = 2 * ((d - k) * k + k * k);
  RMatrix m(rows, u.r());
  for (Eigen::Index i = 0; i < u.r(); ++i) {
    const CMatrix off = c.adjoint() * u[i] * b;
    CMatrix diag = b.adjoint() * u[i] * b;
    diag.diagonal().array() -= diag.trace() / static_cast<double>(k);
    Eigen::Index row = 0;
    for (Eigen::Index a = 0; a < off.size(); ++a) {
      m(row++, i) = off.data()[a].real();
      m(row++, i) = off.data()[a].imag();
    }
    for (Eigen::Index a = 0; a < diag.size(); ++a) {
      m(row++, i) = diag.data()[a].real();
      m(row++, i) = diag.data()[a].imag();
    }
  }
  return real_null_space(m, 1e-9);
}

bool hyperplane_consistent(const ObservableSet& u, const RVector& alpha, const RVector& lambda) {
  const RVector unit = lambda / lambda.norm();
  const double h = support_function(u, unit);
  return std::abs(h - unit.dot(alpha)) <= 1e-6 * (1.0 + std::abs(h));
}

bool same_projection(const Projection& a, const Projection& b) {
  return a.rank == b.rank && (a.matrix - b.matrix).norm() < 1e-8;
}

std::vector<Candidate> face_candidates(const ObservableSet& u, const RVector& alpha,
                                       const BoundaryEscape& escape, double degeneracy_tol) {
  std::vector<Candidate> out;
  const auto d = u.d();
  auto consider = [&](RVector lambda, double tol_scale, const CMatrix* must_contain) {
    const double n = lambda.norm();
    if (!(n > 1e-12)) return;
    lambda /= n;
    const CMatrix h = pencil(u, lambda);
    const double top = max_eigenvalue(h);
    Projection p = spectral_projection_max(h, tol_scale * (1.0 + std::abs(top)));
    if (p.rank >= d) return;
    if (must_contain && (*must_contain - p.matrix * *must_contain).norm() > 1e-6) return;
    if (!hyperplane_consistent(u, alpha, lambda)) return;
    for (const auto& c : out) {
      if (same_projection(c.face, p)) return;
    }
    out.push_back({lambda, std::move(p)});
  };

  const RVector& hint = escape.direction;
  if (escape.last_state.size() > 0 && hint.norm() > 0.0) {
    const auto eig = hermitian_eig(hermitian_part(escape.last_state));
    // descending weights
    std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
    for (Eigen::Index k = 0; k < d; ++k) order[static_cast<std::size_t>(k)] = d - 1 - k;
    for (Eigen::Index k = d - 1; k >= 1; --k) {
      const double wk = eig.values(order[static_cast<std::size_t>(k)]);
      const double wprev = eig.values(order[static_cast<std::size_t>(k - 1)]);
      if (!(wk < kSupportFloor || wk < 1e-3 * wprev)) continue;
      CMatrix b(d, k);
      for (Eigen::Index j = 0; j < k; ++j) b.col(j) = eig.vectors.col(order[static_cast<std::size_t>(j)]);
      const RMatrix nsp = eigenspace_directions(u, b);
      if (nsp.cols() == 0) continue;
      consider(nsp * (nsp.transpose() * hint), degeneracy_tol, &b);
    }
  }
  if (hint.norm() > 0.0) {
    consider(hint, degeneracy_tol, nullptr);
    consider(hint, std::max(degeneracy_tol, 1e-6), nullptr);
  }
  return out;
}

LocalSolution solve_local(const ObservableSet& u, const RVector& alpha, int depth, int max_depth,
                          const SolverOptions& options);

std::optional<LocalSolution> solve_pure(const ObservableSet& u, const RVector& alpha,
                                        const BoundaryEscape& escape) {
  if (escape.last_state.size() == 0) return std::nullopt;
  if (escape.direction.norm() > 0.0) {
    // the escape ray must at least roughly support alpha
    const double h = support_function(u, escape.direction);
    if (h - escape.direction.dot(alpha) > 1e-3 * (1.0 + std::abs(h))) return std::nullopt;
  }
  const auto eig = hermitian_eig(hermitian_part(escape.last_state));
  const CVector start = eig.vectors.col(eig.values.size() - 1);
  auto [x, residual] = fit_pure_state(u, alpha, start);
  if (residual > 1e-9 * (1.0 + inf_norm(alpha))) return std::nullopt;
  LocalSolution out;
  out.rho = x * x.adjoint();
  out.support = x;
  out.iterations = escape.iterations;
  return out;
}

LocalSolution solve_local(const ObservableSet& u, const RVector& alpha, int depth, int max_depth,
                          const SolverOptions& options) {
  if (depth > max_depth) throw SolverError("face recursion exceeded the maximal depth");
  const auto d = u.d();
  InteriorResult interior = maxent_interior(u, alpha, options);
  if (auto* dual = std::get_if<DualState>(&interior)) {
    LocalSolution out;
    out.rho = dual->state.matrix();
    out.support = CMatrix::Identity(d, d);
    out.dual = *dual;
    out.iterations = 1;
    return out;
  }
  const auto& escape = std::get<BoundaryEscape>(interior);

  std::ostringstream failures;
  for (const Candidate& c : face_candidates(u, alpha, escape, options.degeneracy_tol)) {
    try {
      const ObservableSet cu = compress_observables(u, c.face);
      LocalSolution inner = solve_local(cu, alpha, depth + 1, max_depth, options);
      LocalSolution out;
      out.rho = hermitian_part(c.face.basis * inner.rho * c.face.basis.adjoint());
      out.support = c.face.basis * inner.support;
      out.chain.push_back(c.lambda);
      out.chain.insert(out.chain.end(), inner.chain.begin(), inner.chain.end());
      out.iterations = escape.iterations + inner.iterations;
      return out;
    } catch (const InfeasibleError& e) {
      failures << "rank-" << c.face.rank << " face infeasible; ";
    } catch (const SolverError& e) {
      failures << "rank-" << c.face.rank << " face failed (" << e.what() << "); ";
    }
  }

  if (auto pure = solve_pure(u, alpha, escape)) return *pure;

  // A converged but nearly singular Gibbs state at an interior point.
  if (escape.gradient_norm <= options.tol && escape.theta.norm() <= options.theta_max) {
    const Evaluation ev = evaluate(u, escape.theta);
    LocalSolution out;
    out.rho = ev.rho;
    out.support = CMatrix::Identity(d, d);
    out.dual = make_dual(alpha, escape.theta, ev);
    out.iterations = escape.iterations;
    return out;
  }
  throw SolverError("could not certify a face (" + escape.reason + "; " + failures.str() + ")");
}

}  // namespace

MaxEntSolution maxent(const ObservableSet& u, const RVector& alpha, const SolverOptions& options) {
  const auto d = u.d();
  LocalSolution local = solve_local(u, alpha, 0, static_cast<int>(d), options);

  SolveStatus status = SolveStatus::interior;
  if (local.support.cols() == 1) {
    // polish: the fiber is a single pure state
    auto [x, residual] = fit_pure_state(u, alpha, local.support.col(0));
    (void)residual;
    local.rho = x * x.adjoint();
    local.support = x;
    status = SolveStatus::singleton_fiber;
  } else if (local.support.cols() < d) {
    status = SolveStatus::face_compressed;
  }

  DensityMatrix state = DensityMatrix::from_numerical(local.rho);
  const double residual = inf_norm(expected_values(u, state) - alpha);
  if (residual > 1e-8) {
    std::ostringstream msg;
    msg << "constraint residual " << residual << " exceeds 1e-8";
    throw SolverError(msg.str());
  }

  FaceDescriptor face;
  face.projection = projection_from_columns(local.support);
  face.exposure_chain = local.chain;
  if (local.chain.size() == 1) face.exposing_direction = local.chain.front();
  face.dim = status == SolveStatus::interior ? body_dimension(u) : face_dimension(u, face.projection);

  MaxEntSolution out{std::move(state), status, std::move(face), std::nullopt, residual, local.iterations};
  if (status == SolveStatus::interior) out.dual = local.dual;
  return out;
}

std::vector<DensityMatrix> sample_fiber(const ObservableSet& u, const DensityMatrix& rho, int count,
                                        std::uint64_t seed) {
  const auto eig = rho.eigenvalues().size() ? hermitian_eig(rho.matrix()) : SpectralDecomposition{};
  const auto d = rho.dim();
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = 0; k < d; ++k) {
    if (eig.values(k) > kSupportFloor) kept.push_back(k);
  }
  const auto k = static_cast<Eigen::Index>(kept.size());
  CMatrix b(d, k);
  RVector w(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    b.col(j) = eig.vectors.col(kept[static_cast<std::size_t>(j)]);
    w(j) = eig.values(kept[static_cast<std::size_t>(j)]);
  }

  std::vector<DensityMatrix> out;
  const auto basis = traceless_hermitian_basis(k);
  if (basis.empty()) {
    for (int s = 0; s < count; ++s) out.push_back(rho);
    return out;
  }
  RMatrix m(u.r(), static_cast<Eigen::Index>(basis.size()));
  for (Eigen::Index i = 0; i < u.r(); ++i) {
    const CMatrix ci = b.adjoint() * u[i] * b;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      m(i, static_cast<Eigen::Index>(j)) = (ci * basis[j]).trace().real();
    }
  }
  const RMatrix nsp = real_null_space(m, 1e-10);
  if (nsp.cols() == 0) {
    for (int s = 0; s < count; ++s) out.push_back(rho);
    return out;
  }

  // In the eigenbasis the compressed state is diag(w).
  const RVector inv_sqrt = w.cwiseSqrt().cwiseInverse();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  for (int s = 0; s < count; ++s) {
    RVector c(nsp.cols());
    for (Eigen::Index j = 0; j < c.size(); ++j) c(j) = normal(rng);
    const RVector coeff = nsp * c;
    CMatrix delta = CMatrix::Zero(k, k);
    for (std::size_t j = 0; j < basis.size(); ++j) delta += coeff(static_cast<Eigen::Index>(j)) * basis[j];
    delta /= delta.norm();
    const CMatrix scaled = inv_sqrt.cast<Complex>().asDiagonal() * delta * inv_sqrt.cast<Complex>().asDiagonal();
    const double worst = max_eigenvalue(hermitian_part(-scaled));
    const double t_max = worst > 0.0 ? 1.0 / worst : 1.0;
    const double t = unit(rng) * t_max * (1.0 - 1e-9);
    CMatrix local = w.cast<Complex>().asDiagonal();
    local += t * delta;
    out.push_back(DensityMatrix::from_numerical(b * local * b.adjoint()));
  }
  return out;
}

std::vector<double> dyadic_schedule(int first, int last) {
  if (first > last) throw ValidationError("dyadic_schedule: empty range");
  std::vector<double> out;
  for (int k = first; k <= last; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

ContinuityReport continuity_probe(const ObservableSet& u, const RVector& alpha, const Curve& curve,
                                  const std::vector<double>& schedule, const std::string& description,
                                  const SolverOptions& options) {
  if (schedule.size() < 2) throw ValidationError("continuity_probe: schedule needs at least two points");
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (!(schedule[k] > 0.0) || (k > 0 && !(schedule[k] < schedule[k - 1]))) {
      throw ValidationError("continuity_probe: schedule must be positive and strictly decreasing");
    }
  }
  const MaxEntSolution target = maxent(u, alpha, options);

  std::vector<DensityMatrix> states;
  ContinuityReport rep;
  rep.target = alpha;
  rep.target_state = target.state;
  rep.schedule = schedule;
  for (double eps : schedule) {
    const RVector a = curve(eps);
    states.push_back(maxent(u, a, options).state);
    rep.entropies.push_back(von_neumann_entropy(states.back()));
    if (states.size() > 1) {
      rep.step_distances.push_back(trace_distance(states[states.size() - 2], states.back()));
    }
  }
  rep.limit_state = states.back();
  rep.gap_trace_distance = trace_distance(rep.limit_state, rep.target_state);
  rep.entropy_jump = std::abs(von_neumann_entropy(rep.limit_state) - von_neumann_entropy(rep.target_state));
  std::ostringstream seq;
  seq << (description.empty() ? "alpha(eps)" : description) << " at " << schedule.size()
      << " points, eps from " << schedule.front() << " to " << schedule.back();
  rep.sequence_used = seq.str();

  const double last_step = rep.step_distances.back();
  if (last_step < 1e-6) {
    rep.verdict = rep.gap_trace_distance > kGapTol ? Verdict::discontinuous : Verdict::continuous;
  } else {
    rep.verdict = Verdict::inconclusive;
    std::ostringstream diag;
    diag << "sequence not Cauchy: last successive trace distance " << last_step;
    rep.diagnostics = diag.str();
  }
  return rep;
}

}  // namespace qmaxent
