#include <cmath>
#include <numbers>
#include <sstream>

#include "cli.hpp"
#include "qmaxent/correlation.hpp"
#include "qmaxent/faces.hpp"
#include "qmaxent/fixtures.hpp"
#include "qmaxent/report.hpp"

namespace qmaxent::cli {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

RVector vec(std::initializer_list<double> xs) {
  RVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

int max_of(const std::vector<int>& xs) { return xs.empty() ? -1 : *std::max_element(xs.begin(), xs.end()); }

SolverOptions options(const RunConfig& c) {
  SolverOptions o;
  o.tol = c.solver_tol;
  o.degeneracy_tol = c.degeneracy_tol;
  return o;
}

json example_5_2(const RunConfig& c) {
  const auto u = fixtures::limit_of_extremal_points();
  const auto opts = options(c);
  json v;
  v["alpha0"] = vector_to_json(fixtures::limit_alpha(0.0));
  const auto sol = maxent(u, vec({1, 1, 0.5}), opts);
  v["rho_star_alpha0_distance_to_p_half"] = trace_distance(sol.state.matrix(), fixtures::limit_face_projection() / 2.0);
  v["rho_star_alpha0_entropy"] = von_neumann_entropy(sol.state);
  v["face_dim_at_alpha0"] = sol.face ? sol.face->dim : -1;

  const auto probe = continuity_probe(u, vec({1, 1, 0.5}), fixtures::limit_alpha, dyadic_schedule(), "alpha(eps)", opts);
  v["probe_verdict"] = to_string(probe.verdict);
  v["probe_gap"] = probe.gap_trace_distance;
  v["probe_entropy_jump"] = probe.entropy_jump;
  const auto lsc = lsc_probe(u, fixtures::limit_alpha, dyadic_schedule(), opts);
  v["lsc_max_dim_along"] = max_of(lsc.dims_along);
  v["lsc_dim_at_limit"] = lsc.dim_at_limit;
  v["lsc_violated"] = lsc.lsc_violated;

  for (const auto& f : facet_fibers_3x3(u, {vec({1, 0, 0})}, 8, c.seed)) {
    v["segment_face_dim"] = f.face_dim;
    v["segment_face_fiber_dim"] = f.fiber_dim;
    v["segment_boundary_fibers_singleton"] = f.boundary_fibers_singleton;
  }
  if (c.wants("svg")) write_output(c, "example-5-2-probe.svg", probe_trace_svg(probe, "alpha(eps) -> (1, 1, 1/2)"));
  if (c.wants("json")) write_output(c, "example-5-2-probe.json", json({{"continuity", to_json(probe)}, {"lsc", to_json(lsc)}}).dump(2) + "\n");
  return v;
}

json thm_3x3(const RunConfig& c) {
  const CMatrix a = fixtures::disk_with_eigenvalue();
  const auto u = fixtures::pair_from_matrix(a);
  const auto opts = options(c);
  json v;
  const auto analysis = analyze_3x3(u[0], u[1], c.resolution);
  v["shape"] = analysis.shape;
  v["candidate_count"] = analysis.candidates.points.size();
  if (!analysis.candidates.points.empty()) v["candidate_point"] = complex_to_json(analysis.candidates.points[0].point);
  v["exceptional_fiber_dim"] = analysis.exceptional_fiber_dim.value_or(-1);

  CMatrix display = CMatrix::Zero(3, 3);
  display.topLeftCorner(2, 2).setConstant(0.25);
  display(2, 2) = 0.5;
  const auto at_one = maxent(u, vec({1, 0}), opts);
  v["rho_star_1_distance_to_display"] = trace_distance(at_one.state.matrix(), display);
  v["rho_star_1_eigenvalues"] = vector_to_json(at_one.state.eigenvalues());
  for (const auto& [key, phi] : std::vector<std::pair<std::string, double>>{{"i", kPi / 2}, {"minus_1", kPi}}) {
    const Complex z = std::polar(1.0, phi);
    const CVector g = fixtures::circle_generator(z);
    v["rho_star_" + key + "_distance_to_pure"] =
        trace_distance(maxent(u, vec({z.real(), z.imag()}), opts).state.matrix(), g * g.adjoint());
  }
  const auto probe = continuity_probe(
      u, vec({1, 0}), [](double e) { return vec({std::cos(e), std::sin(e)}); }, dyadic_schedule(), "e^{i eps}", opts);
  v["circle_probe_verdict"] = to_string(probe.verdict);
  v["circle_probe_entropy_jump"] = probe.entropy_jump;

  const auto atlas = boundary_sweep(a, c.resolution);
  if (c.wants("svg")) write_output(c, "thm-3x3.svg", atlas_svg(atlas, &analysis.candidates, "W(A), A = [[0,2],[0,0]] + [1]"));
  if (c.wants("csv")) write_output(c, "thm-3x3.csv", atlas_csv(atlas));
  return v;
}

json ghz(const RunConfig&) {
  json v;
  for (double p : {0.1, 0.25, 0.5, 0.75}) {
    std::ostringstream key;
    key << "c3_ghz_" << p;
    v[key.str()] = c3(density_from_vector(ghz_vector(Complex(std::sqrt(p), 0))));
  }
  CVector zero = CVector::Zero(8);
  zero(0) = 1;
  v["c3_product"] = c3(density_from_vector(zero));
  for (double g : {0.3, 0.1}) {
    std::ostringstream key;
    key << "c3_tilted_" << g;
    v[key.str()] = c3(density_from_vector(tilted_ghz_vector(Complex(std::sqrt(0.5), 0), g)));
  }
  v["probe_gap_0.6"] = c3_discontinuity_probe(Complex(0.6, 0), {0.3, 0.1}).gap;
  return v;
}

json h_epsilon(const RunConfig&) {
  json v;
  for (double eps : {0.1, 0.5, 1.0}) {
    const auto m = h_epsilon_model(eps);
    std::ostringstream tag;
    tag << eps;
    v["lambda_" + tag.str()] = m.lambda_numeric;
    v["marginal_closed_form_distance_" + tag.str()] =
        (m.marginal_ab.matrix() - m.marginal_ab_closed_form).cwiseAbs().maxCoeff();
    const RVector ev = m.marginal_ab.eigenvalues();
    v["marginal_eigenvalues_" + tag.str()] = vector_to_json(ev);
  }
  v["s_1"] = h_epsilon_model(1.0).s;
  const auto u = two_local_observables();
  const auto opts = two_local_solver_options();
  v["ground_state_face_dim_0.5"] = face_of(u, expected_values(u, h_epsilon_model(0.5).ground_state), opts).dim;
  const auto lsc = lsc_probe(
      u,
      [&](double e) {
        if (e == 0.0) return RVector(expected_values(u, ghz_fiber_state(0, 0, 0)));
        return RVector(expected_values(u, h_epsilon_model(e).ground_state));
      },
      {0.5, 0.25, 0.125, 0.0625}, opts);
  v["lsc_max_dim_along"] = max_of(lsc.dims_along);
  v["lsc_dim_at_limit"] = lsc.dim_at_limit;
  v["lsc_violated"] = lsc.lsc_violated;
  return v;
}

json disk_4x4(const RunConfig& c) {
  const CMatrix a = fixtures::doubled_disk();
  const auto u = fixtures::pair_from_matrix(a);
  const auto opts = options(c);
  double worst = 0;
  for (int k = 0; k < 16; ++k) {
    const double phi = 2 * kPi * k / 16;
    const auto r = continuity_probe(
        u, vec({std::cos(phi), std::sin(phi)}),
        [phi](double e) { return vec({std::cos(phi + e), std::sin(phi + e)}); }, dyadic_schedule(), "circle", opts);
    worst = std::max(worst, r.gap_trace_distance);
  }
  json v;
  v["max_circle_gap"] = worst;
  const auto scan = discontinuity_candidates(a, c.resolution);
  v["irreducible"] = unitary_reducibility(a, c.seed).irreducible;
  v["candidate_point_count"] = scan.points.size();
  v["whole_boundary_multiply_generated"] = scan.arcs.size() == 1 && scan.arcs[0].whole_boundary;
  const auto atlas = boundary_sweep(a, c.resolution);
  if (c.wants("svg")) write_output(c, "disk-4x4.svg", atlas_svg(atlas, &scan, "W(1_2 (x) [[0,2],[0,0]])"));
  if (c.wants("csv")) write_output(c, "disk-4x4.csv", atlas_csv(atlas));
  return v;
}

json skew_cone(const RunConfig&) {
  using V = Eigen::Vector3d;
  json v;
  v["origin_face_dim"] = skew_cone_face_dim(V(0, 0, 0));
  v["origin_extremal"] = skew_cone_is_extremal(V(0, 0, 0));
  v["apex_extremal"] = skew_cone_is_extremal(V(0, 0, 1));
  v["far_point_extremal"] = skew_cone_is_extremal(V(2, 0, 0));
  // circle points (1 - cos t, sin t, 0) converging to the origin
  std::vector<int> dims;
  for (double t : dyadic_schedule(3, 16)) dims.push_back(skew_cone_face_dim(V(1 - std::cos(t), std::sin(t), 0)));
  const int limit = skew_cone_face_dim(V(0, 0, 0));
  v["circle_max_dim_along"] = max_of(dims);
  v["circle_lsc_violated"] = lsc_violation(dims, limit);
  return v;
}

std::string describe(const json& j) {
  if (!j.is_number_float()) return j.dump();
  std::ostringstream s;
  s.precision(12);
  s << j.get<double>();
  return s.str();
}

bool within(const json& computed, const json& expected, double tol, double& err) {
  if (expected.is_array()) {
    if (!computed.is_array() || computed.size() != expected.size()) return false;
    bool ok = true;
    for (std::size_t i = 0; i < expected.size(); ++i) ok = within(computed[i], expected[i], tol, err) && ok;
    return ok;
  }
  if (expected.is_number() && computed.is_number()) {
    const double e = std::abs(computed.get<double>() - expected.get<double>());
    err = std::max(err, e);
    return e <= tol;
  }
  return computed == expected;
}

}  // namespace

std::vector<std::string> reproduction_names() {
  return {"example-5-2", "thm-3x3", "ghz", "h-epsilon", "disk-4x4", "skew-cone"};
}

json reproduction_values(const RunConfig& c) {
  if (c.name == "example-5-2") return example_5_2(c);
  if (c.name == "thm-3x3") return thm_3x3(c);
  if (c.name == "ghz") return ghz(c);
  if (c.name == "h-epsilon") return h_epsilon(c);
  if (c.name == "disk-4x4") return disk_4x4(c);
  if (c.name == "skew-cone") return skew_cone(c);
  throw ValidationError("unknown reproduction " + c.name);
}

std::vector<GoldenCheck> compare_with_golden(const json& values, const json& golden) {
  if (!golden.is_object() || !golden.contains("checks") || !golden["checks"].is_object()) {
    throw ValidationError("golden file needs a \"checks\" object");
  }
  std::vector<GoldenCheck> out;
  for (const auto& [key, spec] : golden["checks"].items()) {
    GoldenCheck chk{key, false, ""};
    if (!values.contains(key)) {
      chk.detail = "not computed";
      out.push_back(chk);
      continue;
    }
    const json& got = values[key];
    std::ostringstream d;
    if (spec.contains("max") || spec.contains("min")) {
      const double x = got.get<double>();
      chk.pass = true;
      d << describe(got);
      if (spec.contains("max")) {
        chk.pass = chk.pass && x <= spec["max"].get<double>();
        d << " <= " << describe(spec["max"]);
      }
      if (spec.contains("min")) {
        chk.pass = chk.pass && x >= spec["min"].get<double>();
        d << " >= " << describe(spec["min"]);
      }
    } else {
      const double tol = spec.value("tol", 0.0);
      double err = 0;
      chk.pass = within(got, spec["value"], tol, err);
      d << describe(got) << " vs " << describe(spec["value"]);
      if (spec.contains("tol")) d << " (error " << err << ", tol " << tol << ")";
    }
    chk.detail = d.str();
    out.push_back(chk);
  }
  return out;
}

}  // namespace qmaxent::cli
