#include "qmaxent/expectation.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

namespace qmaxent {

ObservableSet::ObservableSet(std::vector<CMatrix> observables) : obs_(std::move(observables)) {
  if (obs_.empty()) throw ValidationError("observable set is empty");
  d_ = obs_.front().rows();
  if (d_ == 0) throw ValidationError("observables must be non-empty matrices");
  for (std::size_t i = 0; i < obs_.size(); ++i) {
    if (obs_[i].rows() != d_ || obs_[i].cols() != d_) {
      throw ValidationError("observable " + std::to_string(i + 1) + " has the wrong size");
    }
    require_hermitian(obs_[i], "observable " + std::to_string(i + 1));
  }
}

RVector expected_values(const ObservableSet& u, const CMatrix& rho) {
  if (rho.rows() != u.d() || rho.cols() != u.d()) {
    throw ValidationError("expected_values: dimension mismatch");
  }
  RVector out(u.r());
  for (Eigen::Index i = 0; i < u.r(); ++i) {
    // tr(u_i rho) = sum_jk (u_i)_jk rho_kj
    out(i) = (u[i].transpose().cwiseProduct(rho)).sum().real();
  }
  return out;
}

RVector expected_values(const ObservableSet& u, const DensityMatrix& rho) {
  return expected_values(u, rho.matrix());
}

CMatrix pencil(const ObservableSet& u, const RVector& theta) {
  if (theta.size() != u.r()) throw ValidationError("pencil: coefficient length mismatch");
  CMatrix out = CMatrix::Zero(u.d(), u.d());
  for (Eigen::Index i = 0; i < u.r(); ++i) {
    if (theta(i) != 0.0) out += theta(i) * u[i];
  }
  return out;
}

namespace {

void require_direction(const ObservableSet& u, const RVector& lambda) {
  if (lambda.size() != u.r()) throw ValidationError("direction length mismatch");
  if (!(lambda.norm() > 0.0)) throw ValidationError("direction must be non-zero");
}

}  // namespace

double support_function(const ObservableSet& u, const RVector& lambda) {
  require_direction(u, lambda);
  return max_eigenvalue(pencil(u, lambda));
}

ObservableSet compress_observables(const ObservableSet& u, const Projection& p) {
  std::vector<CMatrix> out;
  out.reserve(u.observables().size());
  for (const auto& ui : u.observables()) out.push_back(hermitian_part(compress(ui, p)));
  return ObservableSet(std::move(out));
}

int face_dimension(const ObservableSet& u, const Projection& p) {
  if (p.rank <= 1) return 0;
  const auto basis = traceless_hermitian_basis(p.rank);
  const ObservableSet cu = compress_observables(u, p);
  RMatrix m(u.r(), static_cast<Eigen::Index>(basis.size()));
  for (Eigen::Index i = 0; i < u.r(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      m(i, static_cast<Eigen::Index>(j)) = (cu[i] * basis[j]).trace().real();
    }
  }
  return numerical_rank(m, 1e-8);
}

int body_dimension(const ObservableSet& u) {
  return face_dimension(u, projection_from_columns(CMatrix::Identity(u.d(), u.d())));
}

FaceDescriptor exposed_face(const ObservableSet& u, const RVector& lambda, double tol) {
  require_direction(u, lambda);
  if (!(tol > 0.0)) throw ValidationError("exposed_face: tolerance must be positive");
  FaceDescriptor f;
  f.projection = spectral_projection_max(pencil(u, lambda), tol);
  f.exposing_direction = lambda;
  f.dim = face_dimension(u, f.projection);
  f.exposure_chain.push_back(lambda);
  return f;
}

namespace {

struct TransformVisitor {
  const ObservableSet& u;

  ObservableSet operator()(const ShiftByIdentity& s) const {
    if (s.c.size() != u.r()) throw ValidationError("shift vector length mismatch");
    std::vector<CMatrix> out = u.observables();
    for (Eigen::Index i = 0; i < u.r(); ++i) {
      out[static_cast<std::size_t>(i)] += s.c(i) * CMatrix::Identity(u.d(), u.d());
    }
    return ObservableSet(std::move(out));
  }

  ObservableSet operator()(const Recombination& rc) const {
    if (rc.r.rows() != u.r() || rc.r.cols() != u.r()) {
      throw ValidationError("recombination matrix must be r x r");
    }
    Eigen::FullPivLU<RMatrix> lu(rc.r);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible()) throw ValidationError("recombination matrix is singular");
    std::vector<CMatrix> out;
    for (Eigen::Index i = 0; i < u.r(); ++i) out.push_back(pencil(u, rc.r.row(i).transpose()));
    return ObservableSet(std::move(out));
  }

  ObservableSet operator()(const UnitaryConjugation& c) const {
    if (c.t.rows() != u.d() || c.t.cols() != u.d()) {
      throw ValidationError("conjugator has the wrong size");
    }
    const CMatrix id = CMatrix::Identity(u.d(), u.d());
    if ((c.t.adjoint() * c.t - id).norm() > 1e-10) {
      throw ValidationError("conjugator is not unitary");
    }
    std::vector<CMatrix> out;
    for (const auto& ui : u.observables()) out.push_back(hermitian_part(c.t.adjoint() * ui * c.t));
    return ObservableSet(std::move(out));
  }
};

Complex entry_from_json(const nlohmann::json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw ValidationError("matrix entry must be a number or an [re, im] pair");
}

}  // namespace

ObservableSet transform_observables(const ObservableSet& u, const ObservableTransform& transform) {
  return std::visit(TransformVisitor{u}, transform);
}

CMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("matrix must be a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  CMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw ValidationError("matrix must be square");
    }
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = entry_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

nlohmann::json matrix_to_json(const CMatrix& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ObservableSet observables_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("observables") || !j["observables"].is_array()) {
    throw ValidationError("observable set JSON needs an \"observables\" array");
  }
  std::vector<CMatrix> obs;
  for (const auto& m : j["observables"]) obs.push_back(matrix_from_json(m));
  if (j.contains("d")) {
    if (!j["d"].is_number_integer()) throw ValidationError("\"d\" must be an integer");
    const auto d = j["d"].get<Eigen::Index>();
    for (const auto& m : obs) {
      if (m.rows() != d) throw ValidationError("observable size disagrees with \"d\"");
    }
  }
  return ObservableSet(std::move(obs));
}

nlohmann::json observables_to_json(const ObservableSet& u) {
  nlohmann::json j;
  j["d"] = u.d();
  j["observables"] = nlohmann::json::array();
  for (const auto& m : u.observables()) j["observables"].push_back(matrix_to_json(m));
  return j;
}

ObservableSet load_observables(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  return observables_from_json(j);
}

}  // namespace qmaxent
