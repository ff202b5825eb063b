#pragma once

// Numerical range W(A) of a square matrix A = u_1 + i u_2 by supporting
// lines: at angle theta the line Re(e^{-i theta} z) = h(theta) touches W(A)
// where h(theta) = lambda_max(Re(e^{-i theta} A)).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmaxent/expectation.hpp"

namespace qmaxent {

inline constexpr int kDefaultResolution = 2048;
inline constexpr double kFlatWidthTol = 1e-7;

/// Re(e^{-i theta} A) and Im(e^{-i theta} A).
CMatrix rotated_real_part(const CMatrix& a, double theta);
CMatrix rotated_imag_part(const CMatrix& a, double theta);

/// max(1, largest entry modulus); absolute tolerances are scaled by it.
double matrix_scale(const CMatrix& a);

struct SupportData {
  double theta = 0.0;
  double h = 0.0;
  CMatrix eigenspace;            // orthonormal columns, top eigenspace
  CMatrix compressed_imaginary;  // eigenspace* Im(e^{-i theta} A) eigenspace
  double t_min = 0.0;            // spectrum interval of compressed_imaginary
  double t_max = 0.0;

  /// e^{i theta} (h + i t)
  [[nodiscard]] Complex point(double t) const;
};

SupportData support_data(const CMatrix& a, double theta, double degeneracy_tol = kDegeneracyTol);

struct ExposedSet {
  Complex first;   // smaller t
  Complex second;  // larger t; equal to `first` unless flat
  bool flat = false;
  int eigenspace_dim = 1;
};

struct FlatSegment {
  double theta = 0.0;
  Complex first;
  Complex second;
};

struct BoundaryAtlas {
  CMatrix matrix;
  std::vector<double> angles;          // 2 pi k / n
  std::vector<double> support_values;  // h(theta_k)
  std::vector<ExposedSet> points;
  std::vector<FlatSegment> flat_segments;
  int resolution = 0;
  double scale = 1.0;

  /// Counterclockwise boundary polyline (flat segments contribute both ends).
  [[nodiscard]] std::vector<Complex> polygon() const;
};

BoundaryAtlas boundary_sweep(const CMatrix& a, int n = kDefaultResolution);

/// Largest (most negative) cross product violation along the polygon; <= 0
/// up to roundoff for a convex counterclockwise polygon.
double convexity_defect(const BoundaryAtlas& atlas);

/// max over theta of Re(e^{-i theta} z) - h(theta), refined by golden
/// section: negative inside W(A), zero on the boundary, positive outside.
struct BoundaryOffset {
  double offset = 0.0;
  double theta = 0.0;  // maximizing angle
};
BoundaryOffset boundary_offset(const BoundaryAtlas& atlas, Complex z);

enum class PointKind { corner, flat_interior, flat_endpoint, round };
enum class Generation { singly, multiply };
const char* to_string(PointKind k);
const char* to_string(Generation g);

struct GeneratorCount {
  Generation generation = Generation::singly;
  int dimension = 1;
};

/// Multiplicity of Im(e^{-i theta} z) in the compressed imaginary part at
/// the exposing angle theta of z.
GeneratorCount generator_count(const CMatrix& a, Complex z, double theta);
GeneratorCount generator_count(const BoundaryAtlas& atlas, Complex z);

struct BoundaryPointClass {
  PointKind kind = PointKind::round;
  Generation generators = Generation::singly;
  int generator_dim = 1;
  bool simplicial = false;
  /// End point of a flat portion that is not a corner; such points are round.
  bool flat_endpoint = false;
  double exposing_angle = 0.0;
  int exposing_bins = 0;
};

/// Throws ValidationError unless z lies on the boundary within 1e-6.
BoundaryPointClass classify_point(const BoundaryAtlas& atlas, Complex z);

struct Reduction {
  bool irreducible = true;
  std::vector<CMatrix> blocks;
  CMatrix conjugator;  // conjugator* A conjugator is block diagonal
  double residual = 0.0;
};

/// Splits A along eigenspaces of a seeded generic Hermitian element of its
/// commutant, recursively.
Reduction unitary_reducibility(const CMatrix& a, std::uint64_t seed = 42);

struct DiscontinuityCandidate {
  Complex point;
  double theta = 0.0;
  int generator_dim = 2;
};

struct CandidateArc {
  double theta_begin = 0.0;
  double theta_end = 0.0;
  bool whole_boundary = false;
};

struct CandidateScan {
  std::vector<DiscontinuityCandidate> points;
  /// Angle ranges on which every boundary point is multiply generated and round.
  std::vector<CandidateArc> arcs;
  std::vector<std::string> warnings;
  std::vector<std::string> notes;
  bool irreducible = true;
  /// max(0, d - 3), checked for irreducible A with d <= 5.
  std::optional<int> bound;
  bool bound_respected = true;
};

/// Multiply generated round boundary points, located at local minima of the
/// gap between the two largest eigenvalues of Re(e^{-i theta} A).
CandidateScan discontinuity_candidates(const CMatrix& a, int resolution = kDefaultResolution);

struct Analysis3x3 {
  std::string shape;
  bool shape_is_heuristic = false;
  double conic_residual = 0.0;
  Reduction reduction;
  bool discontinuous = false;
  std::optional<Complex> discontinuity_point;
  /// The only state of the exceptional fiber where E is open.
  std::optional<CVector> open_pure_state;
  std::optional<int> exceptional_fiber_dim;
  CandidateScan candidates;
  std::string verdict;
};

Analysis3x3 analyze_3x3(const CMatrix& u1, const CMatrix& u2, int resolution = kDefaultResolution);

struct FacetFiber {
  RVector direction;
  Projection projection;
  int face_dim = 0;
  int fiber_dim = 0;  // affine dimension of the pre-image state set
  std::vector<RVector> boundary_points;
  std::vector<int> boundary_fiber_ranks;
  bool boundary_fibers_singleton = true;
};

/// Exposed faces F of L(u) (d = 3) with 0 < dim F < dim L, found along the
/// given directions (default: +-e_i and +-e_i +- e_j), with rank-2 pre-image
/// projections and singleton fibers at sampled relative boundary points.
std::vector<FacetFiber> facet_fibers_3x3(const ObservableSet& u, std::vector<RVector> directions = {},
                                         int boundary_samples = 8, std::uint64_t seed = 42);

}  // namespace qmaxent
