#pragma once

// Maximum-entropy inference rho*(alpha): the entropy maximizer on the fiber
// E^{-1}(alpha). Interior points are solved by damped Newton on the dual
// psi(theta) = ln tr exp(u(theta)) - theta.alpha; boundary points by
// compressing the observables to a face and recursing.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qmaxent/expectation.hpp"

namespace qmaxent {

inline constexpr double kThetaMax = 1e4;
inline constexpr double kGapTol = 1e-4;

/// alpha lies outside L(u). `direction` is a unit lambda with
/// h(lambda) < lambda.alpha when one was found; violation() is
/// lambda.alpha - h(lambda).
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, RVector direction, double violation)
      : std::runtime_error(what), direction_(std::move(direction)), violation_(violation) {}
  [[nodiscard]] const RVector& direction() const { return direction_; }
  [[nodiscard]] double violation() const { return violation_; }

 private:
  RVector direction_;
  double violation_;
};

/// The solver could not certify a face or converge.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverOptions {
  double tol = 1e-10;             // gradient infinity norm
  double degeneracy_tol = kDegeneracyTol;
  double theta_max = kThetaMax;
  int max_iterations = 400;
};

struct LogPartition {
  double value = 0.0;
  RVector gradient;  // E(rho(theta))
  RMatrix hessian;   // covariance, empty unless requested
};

/// ln tr exp(u(theta)) with gradient and (optionally) Hessian.
LogPartition log_partition(const ObservableSet& u, const RVector& theta, bool with_hessian = true);

/// exp(u(theta)) / tr exp(u(theta)).
DensityMatrix gibbs_state(const ObservableSet& u, const RVector& theta);

struct DualState {
  RVector theta;
  double log_partition = 0.0;
  RVector gradient;  // E(state) - alpha
  DensityMatrix state;
};

struct BoundaryEscape {
  RVector direction;  // theta / |theta|
  RVector theta;
  CMatrix last_state;
  int iterations = 0;
  double gradient_norm = 0.0;  // infinity norm at the last iterate
  std::string reason;
};

using InteriorResult = std::variant<DualState, BoundaryEscape>;

/// Dual Newton. Returns a DualState when the gradient vanishes at a full-rank
/// state; otherwise a BoundaryEscape. Throws InfeasibleError on a certified
/// support-function violation.
InteriorResult maxent_interior(const ObservableSet& u, const RVector& alpha,
                               const SolverOptions& options = {});

enum class SolveStatus { interior, face_compressed, singleton_fiber };
const char* to_string(SolveStatus s);

struct MaxEntSolution {
  DensityMatrix state;
  SolveStatus status;
  std::optional<FaceDescriptor> face;
  std::optional<DualState> dual;
  double constraint_residual = 0.0;
  int iterations = 0;
};

MaxEntSolution maxent(const ObservableSet& u, const RVector& alpha, const SolverOptions& options = {});

/// Pure state x x* with E(x x*) = alpha by Levenberg-Marquardt on the unit
/// sphere, started from `start`. Returns the final vector and residual.
std::pair<CVector, double> fit_pure_state(const ObservableSet& u, const RVector& alpha,
                                          const CVector& start, int max_iterations = 300);

/// Random states with the same expected values as rho, obtained by moving
/// along the null space of E inside the support of rho.
std::vector<DensityMatrix> sample_fiber(const ObservableSet& u, const DensityMatrix& rho,
                                        int count, std::uint64_t seed);

enum class Verdict { continuous, discontinuous, inconclusive };
const char* to_string(Verdict v);

using Curve = std::function<RVector(double)>;

/// epsilon_k = 2^-k for k = first..last.
std::vector<double> dyadic_schedule(int first = 3, int last = 20);

struct ContinuityReport {
  RVector target;
  DensityMatrix limit_state;
  DensityMatrix target_state;
  double gap_trace_distance = 0.0;
  double entropy_jump = 0.0;
  std::string sequence_used;
  Verdict verdict = Verdict::inconclusive;
  std::vector<double> schedule;
  std::vector<double> step_distances;  // trace distance between successive iterates
  std::vector<double> entropies;
  std::string diagnostics;
};

/// Solves along alpha(eps_k) and compares the last iterate with rho*(alpha).
/// The sequence is accepted as convergent when its last successive trace
/// distance is below 1e-6.
ContinuityReport continuity_probe(const ObservableSet& u, const RVector& alpha, const Curve& curve,
                                  const std::vector<double>& schedule,
                                  const std::string& description = "",
                                  const SolverOptions& options = {});

}  // namespace qmaxent
