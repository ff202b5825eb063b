#include "qmaxent/numrange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qmaxent/inference.hpp"
#include "qmaxent/random.hpp"
#include "golden.hpp"

namespace qmaxent {

using detail::golden_maximize;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kCornerBins = 3;

void require_square(const CMatrix& a) {
  if (a.rows() == 0 || a.rows() != a.cols()) throw ValidationError("matrix must be square and non-empty");
}

ExposedSet exposed_set(const SupportData& sd, double scale) {
  ExposedSet e;
  e.first = sd.point(sd.t_min);
  e.second = sd.point(sd.t_max);
  e.flat = sd.t_max - sd.t_min > kFlatWidthTol * scale;
  if (!e.flat) e.second = e.first = sd.point(0.5 * (sd.t_min + sd.t_max));
  e.eigenspace_dim = static_cast<int>(sd.eigenspace.cols());
  return e;
}

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0.0 ? t + kTwoPi : t;
}

}  // namespace

CMatrix rotated_real_part(const CMatrix& a, double theta) {
  const CMatrix r = std::exp(Complex(0.0, -theta)) * a;
  return 0.5 * (r + r.adjoint());
}

CMatrix rotated_imag_part(const CMatrix& a, double theta) {
  const CMatrix r = std::exp(Complex(0.0, -theta)) * a;
  return Complex(0.0, -0.5) * (r - r.adjoint());
}

double matrix_scale(const CMatrix& a) { return std::max(1.0, a.cwiseAbs().maxCoeff()); }

Complex SupportData::point(double t) const { return std::exp(Complex(0.0, theta)) * Complex(h, t); }

SupportData support_data(const CMatrix& a, double theta, double degeneracy_tol) {
  require_square(a);
  SupportData sd;
  sd.theta = theta;
  const auto eig = hermitian_eig(rotated_real_part(a, theta));
  const auto n = eig.values.size();
  sd.h = eig.values(n - 1);
  Eigen::Index k = 1;
  while (k < n && eig.values(n - 1 - k) >= sd.h - degeneracy_tol) ++k;
  sd.eigenspace = eig.vectors.rightCols(k);
  sd.compressed_imaginary =
      hermitian_part(sd.eigenspace.adjoint() * rotated_imag_part(a, theta) * sd.eigenspace);
  if (k == 1) {
    sd.t_min = sd.t_max = sd.compressed_imaginary(0, 0).real();
  } else {
    const auto ce = hermitian_eig(sd.compressed_imaginary);
    sd.t_min = ce.values(0);
    sd.t_max = ce.values(k - 1);
  }
  return sd;
}

std::vector<Complex> BoundaryAtlas::polygon() const {
  struct Entry {
    double theta;
    Complex a, b;
  };
  std::vector<Entry> entries;
  for (std::size_t k = 0; k < angles.size(); ++k) entries.push_back({angles[k], points[k].first, points[k].second});
  for (const auto& f : flat_segments) entries.push_back({f.theta, f.first, f.second});
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) { return x.theta < y.theta; });
  std::vector<Complex> out;
  auto push = [&](Complex z) {
    if (out.empty() || std::abs(z - out.back()) > 1e-12 * scale) out.push_back(z);
  };
  for (const auto& e : entries) {
    push(e.a);
    push(e.b);
  }
  while (out.size() > 1 && std::abs(out.front() - out.back()) <= 1e-12 * scale) out.pop_back();
  return out;
}

namespace {

// Endpoints of the exposed set at theta as Rayleigh quotients x* A x of the
// extreme eigenvectors of the imaginary part compressed to the top m
// eigenvectors of the real part.
std::pair<Complex, Complex> rayleigh_endpoints(const CMatrix& a, double theta, Eigen::Index m) {
  const auto eig = hermitian_eig(rotated_real_part(a, theta));
  const CMatrix v = eig.vectors.rightCols(m);
  const auto ce = hermitian_eig(hermitian_part(v.adjoint() * rotated_imag_part(a, theta) * v));
  const CVector lo = v * ce.vectors.col(0);
  const CVector hi = v * ce.vectors.col(m - 1);
  return {lo.dot(a * lo), hi.dot(a * hi)};
}

// The endpoints of a flat move along the flat to first order in the angle,
// so the normal of their chord converges quadratically to the flat's normal.
FlatSegment polish_flat(const CMatrix& a, FlatSegment f, Eigen::Index m) {
  for (int it = 0; it < 4; ++it) {
    const auto [z1, z2] = rayleigh_endpoints(a, f.theta, m);
    const Complex chord = z2 - z1;
    if (std::abs(chord) == 0.0) break;
    const double theta = std::arg(chord * Complex(0.0, -1.0));
    const double step = std::remainder(theta - f.theta, kTwoPi);
    f.first = z1;
    f.second = z2;
    if (std::abs(step) > 1e-6) break;
    f.theta = wrap_angle(f.theta + step);
    if (std::abs(step) < 1e-15) break;
  }
  const auto [z1, z2] = rayleigh_endpoints(a, f.theta, m);
  f.first = z1;
  f.second = z2;
  return f;
}

}  // namespace

BoundaryAtlas boundary_sweep(const CMatrix& a, int n) {
  require_square(a);
  if (n < 16) throw ValidationError("boundary_sweep needs at least 16 angles");
  BoundaryAtlas atlas;
  atlas.matrix = a;
  atlas.resolution = n;
  atlas.scale = matrix_scale(a);
  const double tol = kDegeneracyTol * atlas.scale;
  for (int k = 0; k < n; ++k) {
    const double theta = kTwoPi * k / n;
    const auto sd = support_data(a, theta, tol);
    atlas.angles.push_back(theta);
    atlas.support_values.push_back(sd.h);
    atlas.points.push_back(exposed_set(sd, atlas.scale));
    if (atlas.points.back().flat) {
      const auto f = polish_flat(a, {theta, atlas.points.back().first, atlas.points.back().second},
                                 sd.eigenspace.cols());
      atlas.points.back().first = f.first;
      atlas.points.back().second = f.second;
      atlas.flat_segments.push_back(f);
    }
  }

  // Flats between grid angles show up as isolated jumps of the exposed point.
  std::vector<double> jump(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const auto& p = atlas.points[static_cast<std::size_t>(k)];
    const auto& q = atlas.points[static_cast<std::size_t>((k + 1) % n)];
    jump[static_cast<std::size_t>(k)] = std::abs(q.first - p.second);
  }
  for (int k = 0; k < n; ++k) {
    const double j = jump[static_cast<std::size_t>(k)];
    const double neighbours = std::max(jump[static_cast<std::size_t>((k + n - 1) % n)],
                                       jump[static_cast<std::size_t>((k + 1) % n)]);
    if (j <= kFlatWidthTol * atlas.scale || j <= 1.5 * neighbours) continue;
    double lo = atlas.angles[static_cast<std::size_t>(k)];
    double hi = lo + kTwoPi / n;
    Complex za = atlas.points[static_cast<std::size_t>(k)].second;
    Complex zb = atlas.points[static_cast<std::size_t>((k + 1) % n)].first;
    std::optional<FlatSegment> found;
    while (hi - lo > 1e-13) {
      const double mid = 0.5 * (lo + hi);
      const auto e = exposed_set(support_data(a, mid, tol), atlas.scale);
      if (e.flat) {
        found = polish_flat(a, FlatSegment{wrap_angle(mid), e.first, e.second}, e.eigenspace_dim);
        break;
      }
      if (std::abs(e.first - za) > std::abs(zb - e.second)) {
        hi = mid;
        zb = e.first;
      } else {
        lo = mid;
        za = e.second;
      }
    }
    if (!found && std::abs(zb - za) > kFlatWidthTol * atlas.scale) {
      found = FlatSegment{wrap_angle(0.5 * (lo + hi)), za, zb};
    }
    if (found) atlas.flat_segments.push_back(*found);
  }
  std::sort(atlas.flat_segments.begin(), atlas.flat_segments.end(),
            [](const FlatSegment& x, const FlatSegment& y) { return x.theta < y.theta; });
  return atlas;
}

double convexity_defect(const BoundaryAtlas& atlas) {
  const auto poly = atlas.polygon();
  const auto m = poly.size();
  if (m < 3) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Complex e1 = poly[(i + 1) % m] - poly[i];
    const Complex e2 = poly[(i + 2) % m] - poly[(i + 1) % m];
    worst = std::max(worst, -cross(e1, e2) / (atlas.scale * atlas.scale));
  }
  return worst;
}

BoundaryOffset boundary_offset(const BoundaryAtlas& atlas, Complex z) {
  const auto n = atlas.angles.size();
  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const double v = (std::exp(Complex(0.0, -atlas.angles[k])) * z).real() - atlas.support_values[k];
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  const double step = kTwoPi / static_cast<double>(n);
  auto f = [&](double t) {
    return (std::exp(Complex(0.0, -t)) * z).real() - max_eigenvalue(rotated_real_part(atlas.matrix, t));
  };
  const double t = golden_maximize(f, atlas.angles[best] - step, atlas.angles[best] + step);
  const double ft = f(t);
  if (ft >= best_value) return {ft, wrap_angle(t)};
  return {best_value, atlas.angles[best]};
}

const char* to_string(PointKind k) {
  switch (k) {
    case PointKind::corner: return "corner";
    case PointKind::flat_interior: return "flat-interior";
    case PointKind::flat_endpoint: return "flat-endpoint";
    case PointKind::round: return "round";
  }
  return "?";
}

const char* to_string(Generation g) {
  return g == Generation::singly ? "singly-generated" : "multiply-generated";
}

GeneratorCount generator_count(const CMatrix& a, Complex z, double theta) {
  const double scale = matrix_scale(a);
  const auto sd = support_data(a, theta, kDegeneracyTol * scale);
  const double t0 = (std::exp(Complex(0.0, -theta)) * z).imag();
  const double tol = 1e-7 * scale;
  const auto k = static_cast<int>(sd.eigenspace.cols());
  GeneratorCount out;
  if (t0 > sd.t_min + tol && t0 < sd.t_max - tol) {
    // Inside a flat: every vector of the eigenspace mixes into a generator.
    out.dimension = k;
  } else {
    const auto ce = hermitian_eig(sd.compressed_imaginary);
    int count = 0;
    for (Eigen::Index i = 0; i < ce.values.size(); ++i) {
      if (std::abs(ce.values(i) - t0) <= tol) ++count;
    }
    if (count == 0) {
      if (t0 < sd.t_min - 1e-6 * scale || t0 > sd.t_max + 1e-6 * scale) {
        throw ValidationError("generator_count: point is not exposed at the given angle");
      }
      count = 1;
    }
    out.dimension = count;
  }
  out.generation = out.dimension > 1 ? Generation::multiply : Generation::singly;
  return out;
}

GeneratorCount generator_count(const BoundaryAtlas& atlas, Complex z) {
  const auto off = boundary_offset(atlas, z);
  if (off.offset < -1e-6 * atlas.scale) throw ValidationError("generator_count: point is interior");
  return generator_count(atlas.matrix, z, off.theta);
}

BoundaryPointClass classify_point(const BoundaryAtlas& atlas, Complex z) {
  const auto off = boundary_offset(atlas, z);
  if (std::abs(off.offset) > 1e-6 * atlas.scale) {
    throw ValidationError("classify_point: point is not on the boundary");
  }
  BoundaryPointClass c;
  const double expose_tol = 2.0 * std::abs(off.offset) + 1e-9 * atlas.scale;
  std::vector<std::size_t> bins;
  for (std::size_t k = 0; k < atlas.angles.size(); ++k) {
    const double v = (std::exp(Complex(0.0, -atlas.angles[k])) * z).real() - atlas.support_values[k];
    if (v >= -expose_tol) bins.push_back(k);
  }
  c.exposing_bins = static_cast<int>(bins.size());
  c.exposing_angle = off.theta;

  const double pt_tol = 1e-7 * atlas.scale + 2.0 * std::abs(off.offset);
  bool interior_of_flat = false;
  bool endpoint = false;
  for (const auto& f : atlas.flat_segments) {
    const Complex d = f.second - f.first;
    const double s = std::clamp(((z - f.first) * std::conj(d)).real() / std::norm(d), 0.0, 1.0);
    if (std::abs(f.first + s * d - z) > pt_tol) continue;
    if (std::abs(z - f.first) <= pt_tol || std::abs(z - f.second) <= pt_tol) {
      endpoint = true;
    } else {
      interior_of_flat = true;
      c.exposing_angle = f.theta;
    }
  }

  if (c.exposing_bins > kCornerBins) {
    c.kind = PointKind::corner;
    c.exposing_angle = atlas.angles[bins[bins.size() / 2]];
    // the bins of a corner may wrap around angle zero
    for (std::size_t i = 1; i < bins.size(); ++i) {
      if (bins[i] != bins[i - 1] + 1) {
        const std::size_t n = atlas.angles.size();
        const std::size_t len = bins.size();
        const std::size_t start = bins[i];
        c.exposing_angle = atlas.angles[(start + len / 2) % n];
        break;
      }
    }
  } else if (interior_of_flat) {
    c.kind = PointKind::flat_interior;
  } else {
    c.kind = PointKind::round;
    c.flat_endpoint = endpoint;
  }
  const auto g = generator_count(atlas.matrix, z, c.exposing_angle);
  c.generators = g.generation;
  c.generator_dim = g.dimension;
  c.simplicial = c.kind != PointKind::round;
  return c;
}

Reduction unitary_reducibility(const CMatrix& a, std::uint64_t seed) {
  require_square(a);
  const auto d = a.rows();
  Reduction out;
  out.conjugator = CMatrix::Identity(d, d);
  out.blocks = {a};
  if (d == 1) return out;
  const auto comm = commutant_basis({a});
  if (comm.size() <= 1) return out;

  Rng rng(seed);
  std::normal_distribution<double> normal;
  std::vector<CMatrix> spaces;
  for (int attempt = 0; attempt < 8 && spaces.size() < 2; ++attempt) {
    CMatrix x = CMatrix::Zero(d, d);
    for (const auto& c : comm) x += Complex(normal(rng), normal(rng)) * c;
    const CMatrix h = attempt % 2 == 0 ? CMatrix(x + x.adjoint()) : CMatrix(Complex(0.0, 1.0) * (x - x.adjoint()));
    const auto eig = hermitian_eig(hermitian_part(h));
    const double tol = 1e-6 * (1.0 + eig.values.cwiseAbs().maxCoeff());
    spaces.clear();
    Eigen::Index start = 0;
    for (Eigen::Index i = 1; i <= d; ++i) {
      if (i == d || eig.values(i) - eig.values(i - 1) > tol) {
        spaces.push_back(eig.vectors.middleCols(start, i - start));
        start = i;
      }
    }
  }
  if (spaces.size() < 2) return out;

  struct Piece {
    std::vector<CMatrix> blocks;
    CMatrix columns;
  };
  std::vector<Piece> pieces;
  for (const auto& v : spaces) {
    const CMatrix block = v.adjoint() * a * v;
    const auto sub = unitary_reducibility(block, seed + 1);
    pieces.push_back({sub.blocks, v * sub.conjugator});
  }
  std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) {
    if (x.columns.cols() != y.columns.cols()) return x.columns.cols() > y.columns.cols();
    return x.blocks.front().trace().real() > y.blocks.front().trace().real();
  });
  out.irreducible = false;
  out.blocks.clear();
  Eigen::Index col = 0;
  for (const auto& p : pieces) {
    out.conjugator.middleCols(col, p.columns.cols()) = p.columns;
    col += p.columns.cols();
    for (const auto& b : p.blocks) out.blocks.push_back(b);
  }
  CMatrix blockdiag = CMatrix::Zero(d, d);
  Eigen::Index off = 0;
  for (const auto& b : out.blocks) {
    blockdiag.block(off, off, b.rows(), b.cols()) = b;
    off += b.rows();
  }
  out.residual = (out.conjugator.adjoint() * a * out.conjugator - blockdiag).norm() / matrix_scale(a);
  return out;
}

namespace {

struct GapSweep {
  std::vector<double> angles;
  std::vector<double> top;
  std::vector<double> gap;
};

GapSweep gap_sweep(const CMatrix& a, int n) {
  GapSweep s;
  const auto d = a.rows();
  for (int k = 0; k < n; ++k) {
    const double theta = kTwoPi * k / n;
    const auto eig = hermitian_eig(rotated_real_part(a, theta));
    s.angles.push_back(theta);
    s.top.push_back(eig.values(d - 1));
    s.gap.push_back(eig.values(d - 1) - eig.values(d - 2));
  }
  return s;
}

double top_gap(const CMatrix& a, double theta) {
  const auto eig = hermitian_eig(rotated_real_part(a, theta));
  const auto d = eig.values.size();
  return eig.values(d - 1) - eig.values(d - 2);
}

int exposing_bin_count(const GapSweep& s, Complex z, double tol) {
  int count = 0;
  for (std::size_t k = 0; k < s.angles.size(); ++k) {
    if ((std::exp(Complex(0.0, -s.angles[k])) * z).real() >= s.top[k] - tol) ++count;
  }
  return count;
}

}  // namespace

CandidateScan discontinuity_candidates(const CMatrix& a, int resolution) {
  require_square(a);
  if (resolution < 16) throw ValidationError("discontinuity_candidates needs at least 16 angles");
  CandidateScan scan;
  const auto d = a.rows();
  const auto red = unitary_reducibility(a);
  scan.irreducible = red.irreducible;
  if (red.irreducible && d <= 5) scan.bound = std::max<int>(0, static_cast<int>(d) - 3);
  if (d < 2) return scan;

  const double scale = matrix_scale(a);
  const double zero_tol = 1e-8 * scale;
  const double scalar_tol = kFlatWidthTol * scale;
  const int n = resolution;
  const double step = kTwoPi / n;
  const auto s = gap_sweep(a, n);
  auto at = [n](int k) { return static_cast<std::size_t>(((k % n) + n) % n); };

  // Runs of exactly degenerate bins: whole arcs of multiply generated points.
  std::vector<char> in_run(static_cast<std::size_t>(n), 0);
  const bool all_zero = std::all_of(s.gap.begin(), s.gap.end(), [&](double g) { return g <= zero_tol; });
  std::vector<std::pair<int, int>> runs;  // [start, length]
  if (all_zero) {
    runs.emplace_back(0, n);
  } else {
    int k0 = 0;
    while (s.gap[at(k0)] <= zero_tol) ++k0;  // start just after a non-degenerate bin
    for (int i = 1; i <= n; ++i) {
      const int k = k0 + i;
      if (s.gap[at(k)] > zero_tol) continue;
      int len = 0;
      while (len < n && s.gap[at(k + len)] <= zero_tol) ++len;
      if (len >= 3) runs.emplace_back(k, len);
      i += len;
    }
  }
  for (const auto& [start, len] : runs) {
    bool arc = true;
    Complex prev;
    int moving = 0;
    for (int i = 0; i < len; ++i) {
      const auto sd = support_data(a, s.angles[at(start + i)], zero_tol);
      if (sd.t_max - sd.t_min > scalar_tol) {
        arc = false;
        break;
      }
      const Complex z = sd.point(sd.t_min);
      if (i > 0 && std::abs(z - prev) > 1e-9 * scale) ++moving;
      prev = z;
    }
    for (int i = 0; i < len; ++i) in_run[at(start + i)] = 1;
    if (!arc || moving < len / 2) continue;  // a corner or a flat, not round
    CandidateArc c;
    c.whole_boundary = len == n;
    c.theta_begin = s.angles[at(start)];
    c.theta_end = c.whole_boundary ? kTwoPi : s.angles[at(start + len - 1)];
    scan.arcs.push_back(c);
  }

  const double refine_below = 4.0 * step * (a.norm() + 1e-300);
  std::vector<int> bins;
  for (int k = 0; k < n; ++k) {
    if (in_run[at(k)]) continue;
    const double g = s.gap[at(k)];
    if (g > refine_below || g > s.gap[at(k - 1)] || g > s.gap[at(k + 1)]) continue;
    const double t = golden_maximize([&](double x) { return -top_gap(a, x); }, s.angles[at(k)] - step,
                                     s.angles[at(k)] + step);
    const double gmin = top_gap(a, t);
    if (gmin > zero_tol) continue;
    const auto sd = support_data(a, t, std::max(zero_tol, 10.0 * gmin));
    if (sd.t_max - sd.t_min > scalar_tol) continue;  // exposes a flat
    const Complex z = sd.point(0.5 * (sd.t_min + sd.t_max));
    if (exposing_bin_count(s, z, 1e-9 * scale) > kCornerBins) continue;
    bool duplicate = false;
    for (const auto& p : scan.points) duplicate = duplicate || std::abs(p.point - z) <= 1e-6 * scale;
    if (duplicate) continue;
    scan.points.push_back({z, wrap_angle(t), static_cast<int>(sd.eigenspace.cols())});
    bins.push_back(k);
  }
  for (std::size_t i = 0; i < bins.size(); ++i) {
    for (std::size_t j = i + 1; j < bins.size(); ++j) {
      const int sep = std::abs(bins[i] - bins[j]);
      if (std::min(sep, n - sep) <= kCornerBins) {
        scan.warnings.push_back("resolution too coarse to separate candidates near angle " +
                                std::to_string(scan.points[i].theta));
      }
    }
  }
  if (!scan.arcs.empty()) {
    scan.notes.push_back(
        scan.irreducible
            ? "arcs of multiply generated round points; the openness criterion is only necessary here"
            : "arcs of multiply generated round points come from the reducible block structure; "
              "E can nevertheless be open for such a matrix");
  }
  if (scan.bound) {
    const bool ok = scan.arcs.empty() && static_cast<int>(scan.points.size()) <= *scan.bound;
    scan.bound_respected = ok;
    if (!ok) {
      scan.warnings.push_back("candidate count exceeds max(0, d - 3) = " + std::to_string(*scan.bound) +
                              " for an irreducible matrix");
    }
  }
  return scan;
}

namespace {

double conic_fit_residual(const std::vector<Complex>& pts) {
  Complex c = 0.0;
  for (const auto& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  double r = 0.0;
  for (const auto& p : pts) r = std::max(r, std::abs(p - c));
  if (r == 0.0) return 0.0;
  RMatrix m(static_cast<Eigen::Index>(pts.size()), 6);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double x = (pts[i] - c).real() / r, y = (pts[i] - c).imag() / r;
    m.row(static_cast<Eigen::Index>(i)) << x * x, x * y, y * y, x, y, 1.0;
  }
  Eigen::JacobiSVD<RMatrix> svd(m);
  return svd.singularValues()(5) / std::sqrt(static_cast<double>(pts.size()));
}

}  // namespace

Analysis3x3 analyze_3x3(const CMatrix& u1, const CMatrix& u2, int resolution) {
  if (u1.rows() != 3 || u2.rows() != 3) throw ValidationError("analyze_3x3 needs 3 x 3 observables");
  require_hermitian(u1, "u1");
  require_hermitian(u2, "u2");
  const CMatrix a = u1 + Complex(0.0, 1.0) * u2;
  const double scale = matrix_scale(a);
  Analysis3x3 out;
  out.reduction = unitary_reducibility(a);
  out.candidates = discontinuity_candidates(a, resolution);
  const auto& blocks = out.reduction.blocks;

  if (out.reduction.irreducible) {
    const auto atlas = boundary_sweep(a, resolution);
    if (!atlas.flat_segments.empty()) {
      out.shape = "flat-portion";
    } else {
      out.conic_residual = conic_fit_residual(atlas.polygon());
      out.shape = out.conic_residual > 1e-6 ? "ovular" : "ellipse";
      out.shape_is_heuristic = true;
    }
  } else if (blocks.size() == 3) {
    const Complex z1 = blocks[0](0, 0), z2 = blocks[1](0, 0), z3 = blocks[2](0, 0);
    const double spread = std::max({std::abs(z1 - z2), std::abs(z1 - z3), std::abs(z2 - z3)});
    if (spread <= 1e-9 * scale) {
      out.shape = "point";
    } else {
      out.shape = std::abs(cross(z2 - z1, z3 - z1)) <= 1e-9 * scale * spread ? "segment" : "triangle";
    }
  } else {
    // B + [z] with B an irreducible 2 x 2 block, so W(B) is a non-degenerate ellipse.
    const CMatrix& b = blocks[0];
    const Complex z = blocks[1](0, 0);
    const auto atlas_b = boundary_sweep(b, resolution);
    const auto off = boundary_offset(atlas_b, z);
    if (off.offset < -1e-7 * scale) {
      out.shape = "ellipse-reducible";
    } else if (off.offset > 1e-7 * scale) {
      out.shape = "conv-ellipse-plus-exterior-point";
    } else {
      out.shape = "disk-with-boundary-eigenvalue";
      out.discontinuous = true;
      out.discontinuity_point = z;
      const auto eig = hermitian_eig(rotated_real_part(b, off.theta));
      const CVector v = eig.vectors.col(1);
      out.open_pure_state = out.reduction.conjugator.leftCols(2) * v;
      const ObservableSet u({u1, u2});
      const auto p = spectral_projection_max(rotated_real_part(a, off.theta), kDegeneracyTol * scale);
      out.exceptional_fiber_dim = p.rank * p.rank - 1 - face_dimension(u, p);
    }
  }

  if (out.discontinuous) {
    std::ostringstream msg;
    msg << "discontinuous exactly at z = " << out.discontinuity_point->real() << (out.discontinuity_point->imag() < 0 ? " - " : " + ")
        << std::abs(out.discontinuity_point->imag()) << "i; in that fiber E is open only at one pure state";
    out.verdict = msg.str();
  } else {
    out.verdict = "E open everywhere; inference continuous";
  }
  return out;
}

std::vector<FacetFiber> facet_fibers_3x3(const ObservableSet& u, std::vector<RVector> directions,
                                         int boundary_samples, std::uint64_t seed) {
  if (u.d() != 3) throw ValidationError("facet_fibers_3x3 needs d = 3");
  const auto r = u.r();
  if (directions.empty()) {
    for (Eigen::Index i = 0; i < r; ++i) {
      for (double si : {1.0, -1.0}) {
        directions.push_back(si * RVector::Unit(r, i));
        for (Eigen::Index j = i + 1; j < r; ++j) {
          for (double sj : {1.0, -1.0}) {
            directions.push_back((si * RVector::Unit(r, i) + sj * RVector::Unit(r, j)) / std::sqrt(2.0));
          }
        }
      }
    }
  }
  const int body_dim = body_dimension(u);
  Rng rng(seed);
  std::vector<FacetFiber> out;
  for (const auto& lambda : directions) {
    const auto face = exposed_face(u, lambda);
    if (face.projection.rank != 2 || face.dim <= 0 || face.dim >= body_dim) continue;
    bool seen = false;
    for (const auto& f : out) seen = seen || (f.projection.matrix - face.projection.matrix).norm() < 1e-6;
    if (seen) continue;

    FacetFiber ff;
    ff.direction = lambda;
    ff.projection = face.projection;
    ff.face_dim = face.dim;
    ff.fiber_dim = face.projection.rank * face.projection.rank - 1;
    const auto cu = compress_observables(u, face.projection);
    for (int s = 0; s < boundary_samples; ++s) {
      const RVector mu = random_direction(r, rng);
      const auto eig = hermitian_eig(pencil(cu, mu));
      if (eig.values(1) - eig.values(0) < 1e-6) continue;
      const CVector x = face.projection.basis * eig.vectors.col(1);
      const RVector w = expected_values(u, CMatrix(x * x.adjoint()));
      SolverOptions opt;
      const auto sol = maxent(u, w, opt);
      int rank = 0;
      for (double l : sol.state.eigenvalues()) rank += l > 1e-6 ? 1 : 0;
      ff.boundary_points.push_back(w);
      ff.boundary_fiber_ranks.push_back(rank);
      ff.boundary_fibers_singleton = ff.boundary_fibers_singleton && rank == 1;
    }
    out.push_back(std::move(ff));
  }
  return out;
}

}  // namespace qmaxent
