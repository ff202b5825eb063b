#pragma once

// Faces of the convex support L(u): the face function F(alpha), dimension
// semicontinuity along curves, images of state-space faces, the planar gauge
// of W(A) - w, and an analytic three-dimensional body whose extremal points
// are not closed.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qmaxent/inference.hpp"
#include "qmaxent/numrange.hpp"

namespace qmaxent {

/// The face of L(u) containing alpha in its relative interior.
FaceDescriptor face_of(const ObservableSet& u, const RVector& alpha, const SolverOptions& options = {});

/// dim_at_limit > min(dims over the second half of the schedule).
bool lsc_violation(const std::vector<int>& dims_along, int dim_at_limit);

struct CurveProbe {
  std::vector<double> schedule;
  std::vector<RVector> points;
  std::vector<int> dims_along;
  RVector limit_point;
  int dim_at_limit = 0;
  bool lsc_violated = false;
  std::string note;
};

CurveProbe lsc_probe(const ObservableSet& u, const Curve& curve, const std::vector<double>& schedule,
                     const SolverOptions& options = {});

struct ImageFaceReport {
  FaceDescriptor face;     // F(E(rho))
  int support_rank = 0;    // rank of the support projection q of rho
  int image_dim = 0;       // dim E(M(q M_d q))
  int sampled_points = 0;
  double worst_violation = 0.0;
  bool inclusion = false;  // E(F(rho)) lies in F(E(rho))
  bool is_maxent_state = false;
  /// Checked only when rho is the maximum-entropy state of E(rho).
  std::optional<bool> equality;
};

ImageFaceReport image_face_inclusion_check(const ObservableSet& u, const DensityMatrix& rho,
                                           int samples = 64, std::uint64_t seed = 42,
                                           const SolverOptions& options = {});

struct GaugeValue {
  bool infinite = false;  // v points out of pos(W - w)
  double value = 0.0;     // 1 / t_star when finite
  double t_star = 0.0;    // sup{t >= 0 : w + t v in W}
};

/// Gauge of W(A) - w at v. Throws ValidationError when w is outside W(A).
GaugeValue gauge_2d(const BoundaryAtlas& atlas, Complex w, Complex v);

struct GaugeScan {
  bool bounded = true;
  double max_gauge = 0.0;
  Complex witness_direction;
  int finite_directions = 0;
  int sampled_directions = 0;
};

/// Samples n unit directions plus angular refinement towards every switch
/// between finite and infinite gauge; unbounded once a gauge exceeds 1e6.
GaugeScan gauge_boundedness_scan(const BoundaryAtlas& atlas, Complex w, int n_directions = 720);

// conv({(s, t, 0) : (s - 1)^2 + t^2 = 1} + {(0, 0, 1), (0, 0, -1)}).
// The origin lies on the circle, so the segment between the apexes is a
// face whose midpoint is a limit of extremal points.
bool skew_cone_contains(const Eigen::Vector3d& p, double tol = 1e-10);
/// Throws ValidationError outside the body.
int skew_cone_face_dim(const Eigen::Vector3d& p, double tol = 1e-10);
bool skew_cone_is_extremal(const Eigen::Vector3d& p, double tol = 1e-10);

}  // namespace qmaxent
