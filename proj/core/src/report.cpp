#include "qmaxent/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace qmaxent {

using nlohmann::json;

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json vector_to_json(const RVector& v) {
  auto out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json vector_to_json(const CVector& v) {
  auto out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

json state_to_json(const DensityMatrix& rho) {
  return {{"dim", rho.dim()}, {"entries", matrix_to_json(rho.matrix())}, {"eigenvalues", vector_to_json(rho.eigenvalues())}};
}

namespace {

Complex entry(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw ValidationError("entry must be a number or an [re, im] pair");
}

}  // namespace

DensityMatrix state_from_json(const json& j) {
  if (!j.is_object() || !j.contains("entries")) throw ValidationError("state JSON needs \"entries\"");
  const auto& e = j["entries"];
  if (!e.is_array() || e.empty()) throw ValidationError("state entries must be a non-empty array");
  if (e[0].is_array() && !e[0].empty() && e[0][0].is_array()) return DensityMatrix(matrix_from_json(e));
  if (!j.contains("dim") || !j["dim"].is_number_integer()) throw ValidationError("flat state entries need \"dim\"");
  const auto d = j["dim"].get<Eigen::Index>();
  if (d <= 0 || static_cast<Eigen::Index>(e.size()) != d * d) throw ValidationError("state needs dim^2 entries");
  CMatrix m(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) m(r, c) = entry(e[static_cast<std::size_t>(r * d + c)]);
  }
  return DensityMatrix(m);
}

RVector real_vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("vector must be a non-empty array of numbers");
  RVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ValidationError("vector entries must be numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

CVector complex_vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("vector must be a non-empty array");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = entry(j[i]);
  return v;
}

json to_json(const FaceDescriptor& f) {
  json chain = json::array();
  for (const auto& l : f.exposure_chain) chain.push_back(vector_to_json(l));
  return {{"projection_rank", f.projection.rank},
          {"dim", f.dim},
          {"whole_body", f.whole_body()},
          {"exposure_chain", chain},
          {"projection", matrix_to_json(f.projection.matrix)}};
}

json to_json(const MaxEntSolution& s) {
  json j = {{"status", to_string(s.status)},
            {"state", state_to_json(s.state)},
            {"entropy", von_neumann_entropy(s.state)},
            {"constraint_residual", s.constraint_residual},
            {"iterations", s.iterations}};
  if (s.face) j["face"] = to_json(*s.face);
  if (s.dual) {
    j["dual"] = {{"theta", vector_to_json(s.dual->theta)},
                 {"log_partition", s.dual->log_partition},
                 {"gradient", vector_to_json(s.dual->gradient)}};
  }
  return j;
}

json to_json(const ContinuityReport& r) {
  return {{"target", vector_to_json(r.target)},
          {"verdict", to_string(r.verdict)},
          {"gap_trace_distance", r.gap_trace_distance},
          {"entropy_jump", r.entropy_jump},
          {"sequence", r.sequence_used},
          {"schedule", r.schedule},
          {"step_distances", r.step_distances},
          {"entropies", r.entropies},
          {"limit_state", state_to_json(r.limit_state)},
          {"target_state", state_to_json(r.target_state)},
          {"diagnostics", r.diagnostics}};
}

json to_json(const CurveProbe& p) {
  json pts = json::array();
  for (const auto& a : p.points) pts.push_back(vector_to_json(a));
  return {{"schedule", p.schedule},         {"points", pts},
          {"dims_along", p.dims_along},     {"limit_point", vector_to_json(p.limit_point)},
          {"dim_at_limit", p.dim_at_limit}, {"lsc_violated", p.lsc_violated},
          {"note", p.note}};
}

json to_json(const CandidateScan& s) {
  json pts = json::array();
  for (const auto& c : s.points) {
    pts.push_back({{"point", complex_to_json(c.point)}, {"theta", c.theta}, {"generator_dim", c.generator_dim}});
  }
  json arcs = json::array();
  for (const auto& a : s.arcs) {
    arcs.push_back({{"theta_begin", a.theta_begin}, {"theta_end", a.theta_end}, {"whole_boundary", a.whole_boundary}});
  }
  json j = {{"points", pts},           {"arcs", arcs},
            {"irreducible", s.irreducible}, {"bound_respected", s.bound_respected},
            {"warnings", s.warnings},  {"notes", s.notes}};
  j["bound"] = s.bound ? json(*s.bound) : json(nullptr);
  return j;
}

json to_json(const Reduction& r) {
  json blocks = json::array();
  for (const auto& b : r.blocks) blocks.push_back(matrix_to_json(b));
  return {{"irreducible", r.irreducible}, {"blocks", blocks}, {"residual", r.residual}};
}

json to_json(const Analysis3x3& a) {
  json j = {{"shape", a.shape},
            {"shape_is_heuristic", a.shape_is_heuristic},
            {"conic_residual", a.conic_residual},
            {"reduction", to_json(a.reduction)},
            {"discontinuous", a.discontinuous},
            {"candidates", to_json(a.candidates)},
            {"verdict", a.verdict}};
  if (a.discontinuity_point) j["discontinuity_point"] = complex_to_json(*a.discontinuity_point);
  if (a.open_pure_state) j["open_pure_state"] = vector_to_json(*a.open_pure_state);
  if (a.exceptional_fiber_dim) j["exceptional_fiber_dim"] = *a.exceptional_fiber_dim;
  return j;
}

json to_json(const FacetFiber& f) {
  json pts = json::array();
  for (const auto& p : f.boundary_points) pts.push_back(vector_to_json(p));
  return {{"direction", vector_to_json(f.direction)},
          {"projection_rank", f.projection.rank},
          {"face_dim", f.face_dim},
          {"fiber_dim", f.fiber_dim},
          {"boundary_points", pts},
          {"boundary_fiber_ranks", f.boundary_fiber_ranks},
          {"boundary_fibers_singleton", f.boundary_fibers_singleton}};
}

json to_json(const GaugeScan& g) {
  return {{"bounded", g.bounded},
          {"max_gauge", g.max_gauge},
          {"witness_direction", complex_to_json(g.witness_direction)},
          {"finite_directions", g.finite_directions},
          {"sampled_directions", g.sampled_directions}};
}

json to_json(const C3Evaluation& c) {
  return {{"c3", c.value},
          {"maxent_entropy", c.maxent_entropy},
          {"state_entropy", c.state_entropy},
          {"maxent_status", to_string(c.solution.status)}};
}

json to_json(const C3ProbeReport& r) {
  return {{"a", complex_to_json(r.a)},
          {"closed_form", r.closed_form},
          {"c3_ghz", r.c3_ghz},
          {"gammas", r.gammas},
          {"c3_tilted", r.c3_tilted},
          {"gap", r.gap},
          {"note", r.note}};
}

std::vector<std::string> atlas_point_classes(const BoundaryAtlas& atlas) {
  const auto n = atlas.points.size();
  std::vector<std::string> out(n, "round");
  const double tol = 1e-9 * atlas.scale;
  for (std::size_t k = 0; k < n; ++k) {
    if (atlas.points[k].flat) {
      out[k] = "flat";
      continue;
    }
    // length of the run of angles exposing the same point
    std::size_t run = 1;
    for (std::size_t s = 1; s < n && std::abs(atlas.points[(k + s) % n].first - atlas.points[k].first) <= tol; ++s) ++run;
    for (std::size_t s = 1; s < n && std::abs(atlas.points[(k + n - s) % n].first - atlas.points[k].first) <= tol; ++s) ++run;
    if (run > 3) out[k] = "corner";
  }
  return out;
}

json atlas_classification_json(const BoundaryAtlas& atlas, const CandidateScan& scan) {
  json flats = json::array();
  for (const auto& f : atlas.flat_segments) {
    json ends = json::array();
    for (Complex z : {f.first, f.second}) {
      const auto c = classify_point(atlas, z);
      ends.push_back({{"point", complex_to_json(z)},
                      {"kind", to_string(c.kind)},
                      {"flat_endpoint", c.flat_endpoint},
                      {"generators", to_string(c.generators)},
                      {"simplicial", c.simplicial}});
    }
    flats.push_back({{"theta", f.theta}, {"endpoints", ends}});
  }
  json corners = json::array();
  const auto classes = atlas_point_classes(atlas);
  std::vector<Complex> seen;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (classes[k] != "corner") continue;
    const Complex z = atlas.points[k].first;
    bool dup = false;
    for (Complex s : seen) dup = dup || std::abs(s - z) <= 1e-9 * atlas.scale;
    if (dup) continue;
    seen.push_back(z);
    const auto c = classify_point(atlas, z);
    corners.push_back({{"point", complex_to_json(z)},
                       {"kind", to_string(c.kind)},
                       {"exposing_bins", c.exposing_bins},
                       {"generators", to_string(c.generators)}});
  }
  return {{"resolution", atlas.resolution},
          {"convexity_defect", convexity_defect(atlas)},
          {"flat_segments", flats},
          {"corners", corners},
          {"discontinuity_candidates", to_json(scan)}};
}

std::string atlas_csv(const BoundaryAtlas& atlas) {
  std::ostringstream out;
  out << std::setprecision(17) << "theta,h,re,im,class\n";
  const auto classes = atlas_point_classes(atlas);
  for (std::size_t k = 0; k < atlas.points.size(); ++k) {
    const auto& p = atlas.points[k];
    out << atlas.angles[k] << ',' << atlas.support_values[k] << ',' << p.first.real() << ',' << p.first.imag()
        << ',' << classes[k] << '\n';
    if (p.flat) {
      out << atlas.angles[k] << ',' << atlas.support_values[k] << ',' << p.second.real() << ','
          << p.second.imag() << ',' << classes[k] << '\n';
    }
  }
  return out.str();
}

}  // namespace qmaxent
