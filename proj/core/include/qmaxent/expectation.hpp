#pragma once

// Observable sets, the expected-value map E, the pencil u(theta), support
// functions and exposed faces of the convex support L(u).

#include <filesystem>
#include <optional>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qmaxent/linalg.hpp"
#include "qmaxent/states.hpp"

namespace qmaxent {

/// r Hermitian d x d observables u_1..u_r.
class ObservableSet {
 public:
  explicit ObservableSet(std::vector<CMatrix> observables);

  [[nodiscard]] Eigen::Index d() const { return d_; }
  [[nodiscard]] Eigen::Index r() const { return static_cast<Eigen::Index>(obs_.size()); }
  [[nodiscard]] const std::vector<CMatrix>& observables() const { return obs_; }
  [[nodiscard]] const CMatrix& operator[](Eigen::Index i) const {
    return obs_[static_cast<std::size_t>(i)];
  }

 private:
  std::vector<CMatrix> obs_;
  Eigen::Index d_ = 0;
};

/// (tr u_i rho)_i. The matrix overload skips state validation and is meant for
/// fiber perturbations that are traceless or not yet positive.
RVector expected_values(const ObservableSet& u, const DensityMatrix& rho);
RVector expected_values(const ObservableSet& u, const CMatrix& rho);

/// theta_1 u_1 + ... + theta_r u_r.
CMatrix pencil(const ObservableSet& u, const RVector& theta);

/// h(lambda) = lambda_max(u(lambda)), the support value of L(u).
double support_function(const ObservableSet& u, const RVector& lambda);

/// A face of L(u) given by the support projection p of its fiber algebra.
struct FaceDescriptor {
  Projection projection;
  /// Absent for the whole body.
  std::optional<RVector> exposing_direction;
  int dim = 0;
  /// Exposing directions applied in order, each in the coordinates of the
  /// previously compressed problem.
  std::vector<RVector> exposure_chain;

  [[nodiscard]] bool whole_body() const { return exposure_chain.empty(); }
};

FaceDescriptor exposed_face(const ObservableSet& u, const RVector& lambda,
                            double tol = kDegeneracyTol);

/// Affine dimension of E(M(p M_d p)): rank of E on traceless Hermitian
/// elements of p M_d p, counting singular values >= 1e-8.
int face_dimension(const ObservableSet& u, const Projection& p);

/// Affine dimension of L(u).
int body_dimension(const ObservableSet& u);

/// The compressed observables p u_i p on range(p).
ObservableSet compress_observables(const ObservableSet& u, const Projection& p);

// Reparametrizations that leave L(u) and rho* essentially unchanged.
struct ShiftByIdentity {
  RVector c;  // u_i -> u_i + c_i 1
};
struct Recombination {
  RMatrix r;  // u_i -> sum_j r_ij u_j, invertible
};
struct UnitaryConjugation {
  CMatrix t;  // u_i -> t* u_i t, unitary
};
using ObservableTransform = std::variant<ShiftByIdentity, Recombination, UnitaryConjugation>;

ObservableSet transform_observables(const ObservableSet& u, const ObservableTransform& transform);

/// {"d": int, "observables": [M_1, ...]} with each M a d x d array of
/// [re, im] pairs (plain numbers are accepted as real entries).
ObservableSet observables_from_json(const nlohmann::json& j);
nlohmann::json observables_to_json(const ObservableSet& u);
ObservableSet load_observables(const std::filesystem::path& path);

nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace qmaxent
