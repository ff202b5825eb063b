#include "qmaxent/faces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qmaxent/random.hpp"
#include "golden.hpp"

namespace qmaxent {

FaceDescriptor face_of(const ObservableSet& u, const RVector& alpha, const SolverOptions& options) {
  return *maxent(u, alpha, options).face;
}

bool lsc_violation(const std::vector<int>& dims_along, int dim_at_limit) {
  if (dims_along.empty()) return false;
  const auto half = dims_along.size() / 2;
  const int eventual = *std::min_element(dims_along.begin() + static_cast<std::ptrdiff_t>(half), dims_along.end());
  return dim_at_limit > eventual;
}

CurveProbe lsc_probe(const ObservableSet& u, const Curve& curve, const std::vector<double>& schedule,
                     const SolverOptions& options) {
  if (schedule.empty()) throw ValidationError("lsc_probe: empty schedule");
  CurveProbe probe;
  probe.schedule = schedule;
  for (double eps : schedule) {
    RVector a = curve(eps);
    probe.dims_along.push_back(face_of(u, a, options).dim);
    probe.points.push_back(std::move(a));
  }
  probe.limit_point = curve(0.0);
  probe.dim_at_limit = face_of(u, probe.limit_point, options).dim;
  probe.lsc_violated = lsc_violation(probe.dims_along, probe.dim_at_limit);
  probe.note = probe.lsc_violated
                   ? "face dimension jumps up at the limit: the inference map is discontinuous there"
                   : "no dimension jump; this test is only sufficient, use continuity_probe at the limit";
  return probe;
}

ImageFaceReport image_face_inclusion_check(const ObservableSet& u, const DensityMatrix& rho, int samples,
                                           std::uint64_t seed, const SolverOptions& options) {
  if (rho.dim() != u.d()) throw ValidationError("image_face_inclusion_check: dimension mismatch");
  ImageFaceReport rep;
  const RVector w = expected_values(u, rho);
  const auto sol = maxent(u, w, options);
  rep.face = *sol.face;
  rep.is_maxent_state = trace_distance(sol.state, rho) < 1e-6;

  const auto eig = hermitian_eig(rho.matrix());
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) > 1e-9) kept.push_back(k);
  }
  CMatrix cols(u.d(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = eig.vectors.col(kept[i]);
  const Projection q = projection_from_columns(cols);
  rep.support_rank = q.rank;
  rep.image_dim = face_dimension(u, q);

  // Pure states of M(q M_d q): exposed points of its image and random ones.
  Rng rng(seed);
  const ObservableSet cu = compress_observables(u, q);
  std::vector<CVector> vectors;
  for (Eigen::Index k = 0; k < q.rank; ++k) vectors.push_back(q.basis.col(k));
  for (int s = 0; s < samples; ++s) {
    if (s % 2 == 0) {
      const auto ce = hermitian_eig(pencil(cu, random_direction(u.r(), rng)));
      vectors.push_back(q.basis * ce.vectors.col(q.rank - 1));
    } else {
      vectors.push_back(q.basis * random_unit_vector(q.rank, rng));
    }
  }

  double worst = 0.0;
  for (const auto& x : vectors) {
    const RVector y = expected_values(u, CMatrix(x * x.adjoint()));
    ObservableSet cur = u;
    for (const auto& lambda : rep.face.exposure_chain) {
      const double h = support_function(cur, lambda);
      worst = std::max(worst, std::abs(lambda.dot(y) - h) / (1.0 + std::abs(h)));
      cur = compress_observables(
          cur, spectral_projection_max(pencil(cur, lambda), options.degeneracy_tol * (1.0 + std::abs(h))));
    }
  }
  rep.sampled_points = static_cast<int>(vectors.size());
  rep.worst_violation = worst;
  rep.inclusion = worst <= 1e-7;
  if (rep.is_maxent_state) rep.equality = rep.image_dim == rep.face.dim;
  return rep;
}

namespace {

class GaugeContext {
 public:
  GaugeContext(const BoundaryAtlas& atlas, Complex w) : atlas_(atlas), w_(w) {
    const auto off = boundary_offset(atlas, w);
    if (off.offset > 1e-8 * atlas.scale) throw ValidationError("gauge: base point lies outside W(A)");
    on_boundary_ = off.offset >= -1e-9 * atlas.scale;
    if (on_boundary_) {
      normal_angles_.push_back(off.theta);
      for (std::size_t k = 0; k < atlas.angles.size(); ++k) {
        if (project(atlas.angles[k], w) - atlas.support_values[k] >= -1e-9 * atlas.scale) {
          normal_angles_.push_back(atlas.angles[k]);
        }
      }
    }
  }

  GaugeValue evaluate(Complex v, bool bisect) const {
    if (!(std::abs(v) > 0.0)) throw ValidationError("gauge: direction must be non-zero");
    if (on_boundary_) {
      double outward = -std::numeric_limits<double>::infinity();
      for (double t : normal_angles_) outward = std::max(outward, project(t, v) / std::abs(v));
      if (outward > 1e-10) return {true, 0.0, 0.0};
      for (double sign : {1.0, -1.0}) {
        const double theta = std::arg(v) + sign * std::numbers::pi / 2.0;
        // tight: at a round point a looser test swallows inward directions
        // whose gauge is still far below the unboundedness threshold
        if (project(theta, w_) - support(theta) < -1e-14 * atlas_.scale) continue;
        // v is tangent to W at w: finite only along a flat portion
        const auto sd = support_data(atlas_.matrix, theta, kDegeneracyTol * atlas_.scale);
        const Complex a = sd.point(sd.t_min), b = sd.point(sd.t_max);
        if (std::abs(b - a) <= kFlatWidthTol * atlas_.scale) return {true, 0.0, 0.0};
        const Complex d = b - a;
        const double s = std::clamp(((w_ - a) * std::conj(d)).real() / std::norm(d), 0.0, 1.0);
        if (std::abs(a + s * d - w_) > 1e-7 * atlas_.scale) return {true, 0.0, 0.0};
        double t_star = 0.0;
        for (Complex e : {a, b}) t_star = std::max(t_star, ((e - w_) * std::conj(v)).real() / std::norm(v));
        if (t_star <= 1e-10) return {true, 0.0, 0.0};
        return {false, 1.0 / t_star, t_star};
      }
    }
    double t = exit_estimate(v);
    if (bisect) t = bisect_exit(v, t);
    if (t <= 1e-10) return {true, 0.0, 0.0};
    return {false, 1.0 / t, t};
  }

 private:
  static double project(double theta, Complex z) { return (std::exp(Complex(0.0, -theta)) * z).real(); }

  double support(double theta) const { return max_eigenvalue(rotated_real_part(atlas_.matrix, theta)); }

  bool inside(Complex p) const { return boundary_offset(atlas_, p).offset <= 1e-14 * atlas_.scale; }

  // min over supporting lines crossed by the ray of the distance ratio
  double exit_estimate(Complex v) const {
    const auto n = atlas_.angles.size();
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_k = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const double c = project(atlas_.angles[k], v);
      if (c <= 0.0) continue;
      const double r = (atlas_.support_values[k] - project(atlas_.angles[k], w_)) / c;
      if (r < best) {
        best = r;
        best_k = k;
      }
    }
    if (!std::isfinite(best)) throw ValidationError("gauge: degenerate direction");
    auto neg_ratio = [&](double theta) {
      const double c = project(theta, v);
      if (c <= 0.0) return -std::numeric_limits<double>::max();
      return -(support(theta) - project(theta, w_)) / c;
    };
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
    const double theta =
        detail::golden_maximize(neg_ratio, atlas_.angles[best_k] - step, atlas_.angles[best_k] + step);
    best = std::min(best, -neg_ratio(theta));
    return std::max(0.0, best);
  }

  double bisect_exit(Complex v, double estimate) const {
    double lo = estimate * (1.0 - 1e-6);
    double hi = estimate * (1.0 + 1e-6) + 1e-12;
    if (!inside(w_ + lo * v)) lo = 0.0;
    if (inside(w_ + hi * v)) {
      double r = 0.0;
      for (const auto& p : atlas_.points) r = std::max({r, std::abs(p.first), std::abs(p.second)});
      hi = (2.0 * r + std::abs(w_) + 1.0) / std::abs(v);
    }
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      (inside(w_ + mid * v) ? lo : hi) = mid;
    }
    return lo;
  }

  const BoundaryAtlas& atlas_;
  Complex w_;
  bool on_boundary_ = false;
  std::vector<double> normal_angles_;
};

}  // namespace

GaugeValue gauge_2d(const BoundaryAtlas& atlas, Complex w, Complex v) {
  return GaugeContext(atlas, w).evaluate(v, true);
}

GaugeScan gauge_boundedness_scan(const BoundaryAtlas& atlas, Complex w, int n_directions) {
  if (n_directions < 4) throw ValidationError("gauge scan needs at least 4 directions");
  constexpr double kUnbounded = 1e6;
  const GaugeContext ctx(atlas, w);
  GaugeScan scan;
  auto dir = [](double phi) { return std::exp(Complex(0.0, phi)); };
  auto record = [&](double phi, const GaugeValue& g) {
    ++scan.sampled_directions;
    if (g.infinite) return;
    ++scan.finite_directions;
    if (g.value > scan.max_gauge) {
      scan.max_gauge = g.value;
      scan.witness_direction = dir(phi);
    }
  };
  std::vector<double> phis;
  std::vector<GaugeValue> values;
  for (int j = 0; j < n_directions; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / n_directions;
    phis.push_back(phi);
    values.push_back(ctx.evaluate(dir(phi), false));
    record(phi, values.back());
  }
  for (int j = 0; j < n_directions && scan.max_gauge <= kUnbounded; ++j) {
    const auto next = static_cast<std::size_t>((j + 1) % n_directions);
    const auto cur = static_cast<std::size_t>(j);
    if (values[cur].infinite == values[next].infinite) continue;
    double fin = values[cur].infinite ? phis[next] : phis[cur];
    double inf = values[cur].infinite ? phis[cur] : phis[next];
    if (next == 0) (values[cur].infinite ? fin : inf) += 2.0 * std::numbers::pi;
    for (int it = 0; it < 45 && scan.max_gauge <= kUnbounded; ++it) {
      const double mid = 0.5 * (fin + inf);
      const auto g = ctx.evaluate(dir(mid), false);
      record(mid, g);
      (g.infinite ? inf : fin) = mid;
    }
  }
  scan.bounded = scan.max_gauge <= kUnbounded;
  return scan;
}

bool skew_cone_contains(const Eigen::Vector3d& p, double tol) {
  const double a = 1.0 - std::abs(p.z());
  if (a < -tol) return false;
  const double s = p.x() - std::max(a, 0.0);
  return s * s + p.y() * p.y() <= std::max(a, 0.0) * std::max(a, 0.0) + tol;
}

int skew_cone_face_dim(const Eigen::Vector3d& p, double tol) {
  if (!skew_cone_contains(p, tol)) throw ValidationError("point lies outside the skew cone");
  const double a = 1.0 - std::abs(p.z());
  if (a <= tol) return 0;  // an apex
  const double q = (p.x() - a) * (p.x() - a) + p.y() * p.y() - a * a;
  if (q < -tol) return 3;
  if (std::abs(p.x()) <= tol && std::abs(p.y()) <= tol) return 1;  // on the segment between the apexes
  if (std::abs(p.z()) <= tol) return 0;                            // circle point with s != 0
  return 1;  // on a segment from an apex to a circle point
}

bool skew_cone_is_extremal(const Eigen::Vector3d& p, double tol) { return skew_cone_face_dim(p, tol) == 0; }

}  // namespace qmaxent
