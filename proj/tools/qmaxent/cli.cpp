#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qmaxent/correlation.hpp"
#include "qmaxent/faces.hpp"
#include "qmaxent/fixtures.hpp"
#include "qmaxent/report.hpp"

namespace qmaxent::cli {

using nlohmann::json;

namespace {

std::string describe_source(const RunConfig& c) {
  return c.fixture.empty() ? c.input.string() : "fixture:" + c.fixture;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

/// Observable-set JSON, a {"matrix": A} document (read as Re A, Im A), or a
/// named fixture.
ObservableSet load_input_observables(const RunConfig& c) {
  if (c.fixture.empty() == c.input.empty()) throw ValidationError("give exactly one of --input and --fixture");
  if (!c.fixture.empty()) return fixtures::named_observables(c.fixture);
  const json j = read_json(c.input);
  if (j.is_object() && j.contains("matrix")) return fixtures::pair_from_matrix(matrix_from_json(j["matrix"]));
  return observables_from_json(j);
}

RVector to_rvector(const std::vector<double>& xs) {
  RVector v(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v(static_cast<Eigen::Index>(i)) = xs[i];
  return v;
}

RVector require_alpha(const RunConfig& c, const ObservableSet& u) {
  if (c.alpha.empty()) throw ValidationError("--alpha is required");
  if (static_cast<Eigen::Index>(c.alpha.size()) != u.r()) {
    throw ValidationError("--alpha has " + std::to_string(c.alpha.size()) + " entries, expected " +
                          std::to_string(u.r()));
  }
  return to_rvector(c.alpha);
}

SolverOptions solver_options(const RunConfig& c) {
  SolverOptions o;
  o.tol = c.solver_tol;
  o.degeneracy_tol = c.degeneracy_tol;
  return o;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Complex parse_complex(const std::vector<double>& xs, const std::string& what) {
  if (xs.size() == 1) return {xs[0], 0.0};
  if (xs.size() == 2) return {xs[0], xs[1]};
  throw ValidationError(what + " takes re or re,im");
}

struct ProbeCurve {
  std::string description;
  RVector target;
  Curve curve;
  std::vector<double> schedule = dyadic_schedule();
};

// Point of W(A) exposed at angle theta, as an (x, y) pair; the middle of
// the exposed segment when it is flat.
RVector exposed_pair(const CMatrix& a, double theta, double degeneracy_tol) {
  const auto s = support_data(a, theta, degeneracy_tol);
  const Complex z = s.point(0.5 * (s.t_min + s.t_max));
  RVector v(2);
  v << z.real(), z.imag();
  return v;
}

ProbeCurve select_curve(const RunConfig& c, const ObservableSet& u) {
  std::string kind = c.curve;
  if (kind == "auto") {
    if (c.fixture == "example-5-2") {
      kind = "limit";
    } else if (!c.points_file.empty()) {
      kind = "points";
    } else if (!c.from.empty()) {
      kind = "segment";
    } else if (u.r() == 2) {
      kind = "circle";
    } else {
      throw ValidationError("no default curve for this input; pass --curve");
    }
  }
  ProbeCurve p;
  if (kind == "limit") {
    if (c.fixture != "example-5-2") throw ValidationError("--curve limit needs --fixture example-5-2");
    p.description = "alpha(eps), the exposed points converging to (1, 1, 1/2)";
    p.target = fixtures::limit_alpha(0.0);
    p.curve = fixtures::limit_alpha;
  } else if (kind == "circle") {
    if (u.r() != 2) throw ValidationError("--curve circle needs two observables");
    const CMatrix a = fixtures::matrix_from_pair(u);
    const double phi = c.angle, tol = c.degeneracy_tol;
    p.description = "boundary points exposed at angle " + std::to_string(phi) + " + eps";
    p.target = exposed_pair(a, phi, tol);
    p.curve = [a, phi, tol](double e) { return exposed_pair(a, phi + e, tol); };
  } else if (kind == "segment") {
    const RVector target = require_alpha(c, u);
    if (static_cast<Eigen::Index>(c.from.size()) != u.r()) throw ValidationError("--from needs r entries");
    const RVector dir = to_rvector(c.from) - target;
    p.description = "segment towards the target";
    p.target = target;
    p.curve = [target, dir](double e) { return RVector(target + e * dir); };
  } else if (kind == "points") {
    const json j = read_json(c.points_file);
    if (!j.is_object() || !j.contains("target") || !j.contains("points") || !j["points"].is_array() ||
        j["points"].empty()) {
      throw ValidationError("points file needs \"target\" and a non-empty \"points\" array");
    }
    p.target = real_vector_from_json(j["target"]);
    auto pts = std::make_shared<std::vector<RVector>>();
    for (const auto& x : j["points"]) pts->push_back(real_vector_from_json(x));
    for (const auto& x : *pts) {
      if (x.size() != u.r()) throw ValidationError("every point needs r entries");
    }
    if (p.target.size() != u.r()) throw ValidationError("target needs r entries");
    // the k-th point (0-based) sits at eps = 2^-(k+1)
    p.schedule.clear();
    for (std::size_t k = 0; k < pts->size(); ++k) p.schedule.push_back(std::ldexp(1.0, -static_cast<int>(k) - 1));
    p.description = "listed points";
    p.curve = [pts](double e) {
      const auto k = static_cast<std::size_t>(std::lround(-std::log2(e))) - 1;
      return (*pts)[std::min(k, pts->size() - 1)];
    };
  } else {
    throw ValidationError("unknown curve " + kind + " (limit, circle, segment, points)");
  }
  return p;
}

}  // namespace

void RunConfig::validate() const {
  if (!(solver_tol > 0) || !(degeneracy_tol > 0)) throw ValidationError("tolerances must be positive");
  if (resolution < 16) throw ValidationError("--resolution must be at least 16");
  for (const auto& f : formats) {
    if (f != "json" && f != "csv" && f != "svg") throw ValidationError("unknown format " + f);
  }
}

void write_output(const RunConfig& config, const std::string& file, const std::string& content) {
  std::filesystem::create_directories(config.out_dir);
  const auto path = config.out_dir / file;
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

int cmd_maxent(const RunConfig& c, std::ostream& out) {
  const auto u = load_input_observables(c);
  const RVector alpha = require_alpha(c, u);
  json report = {{"command", "maxent"}, {"source", describe_source(c)}, {"alpha", vector_to_json(alpha)}};
  try {
    const auto sol = maxent(u, alpha, solver_options(c));
    report["feasible"] = true;
    report["solution"] = to_json(sol);
    if (c.wants("json")) write_output(c, "maxent.json", dump(report));
    out << "maxent: " << to_string(sol.status) << ", entropy " << von_neumann_entropy(sol.state) << ", residual "
        << sol.constraint_residual << "\n";
    return kExitOk;
  } catch (const InfeasibleError& e) {
    report["feasible"] = false;
    report["violation"] = e.violation();
    report["direction"] = vector_to_json(e.direction());
    report["message"] = e.what();
    if (c.wants("json")) write_output(c, "maxent.json", dump(report));
    out << "maxent: infeasible, " << e.what() << "\n";
    return kExitInfeasible;
  }
}

int cmd_nr(const RunConfig& c, std::ostream& out) {
  const auto u = load_input_observables(c);
  if (u.r() != 2) throw ValidationError("nr needs two observables or a matrix");
  const CMatrix a = fixtures::matrix_from_pair(u);
  const auto atlas = boundary_sweep(a, c.resolution);
  const auto scan = discontinuity_candidates(a, c.resolution);
  json report = {{"command", "nr"}, {"source", describe_source(c)}, {"matrix", matrix_to_json(a)}};
  report["classification"] = atlas_classification_json(atlas, scan);
  report["reduction"] = to_json(unitary_reducibility(a, c.seed));
  if (u.d() == 3) report["analysis_3x3"] = to_json(analyze_3x3(u[0], u[1], c.resolution));
  if (c.wants("json")) write_output(c, "nr.json", dump(report));
  if (c.wants("csv")) write_output(c, "nr.csv", atlas_csv(atlas));
  if (c.wants("svg")) write_output(c, "nr.svg", atlas_svg(atlas, &scan, "W(A): " + describe_source(c)));
  const auto& cls = report["classification"];
  out << "nr: " << cls["corners"].size() << " corners, " << cls["flat_segments"].size() << " flat portions, "
      << scan.points.size() << " discontinuity candidates";
  for (const auto& p : scan.points) out << " (" << p.point.real() << ", " << p.point.imag() << ")";
  for (const auto& arc : scan.arcs) out << (arc.whole_boundary ? ", whole boundary multiply generated" : ", arc");
  out << "\n";
  return kExitOk;
}

int cmd_probe(const RunConfig& c, std::ostream& out) {
  const auto u = load_input_observables(c);
  const auto p = select_curve(c, u);
  const auto opts = solver_options(c);
  const auto continuity = continuity_probe(u, p.target, p.curve, p.schedule, p.description, opts);
  const auto lsc = lsc_probe(u, p.curve, p.schedule, opts);
  const json report = {{"command", "probe"},
                       {"source", describe_source(c)},
                       {"curve", p.description},
                       {"continuity", to_json(continuity)},
                       {"lsc", to_json(lsc)}};
  if (c.wants("json")) write_output(c, "probe.json", dump(report));
  if (c.wants("svg")) write_output(c, "probe.svg", probe_trace_svg(continuity, "probe: " + describe_source(c)));
  out << "probe: " << to_string(continuity.verdict) << ", gap " << continuity.gap_trace_distance
      << ", entropy jump " << continuity.entropy_jump << ", lsc " << (lsc.lsc_violated ? "violated" : "holds")
      << "\n";
  return kExitOk;
}

int cmd_c3(const RunConfig& c, std::ostream& out) {
  if (c.input.empty() == c.ghz.empty()) throw ValidationError("give exactly one of --input and --ghz");
  json report = {{"command", "c3"}};
  DensityMatrix rho;
  if (!c.ghz.empty()) {
    const Complex a = parse_complex(c.ghz, "--ghz");
    if (std::abs(a) > 1) throw ValidationError("--ghz amplitude must have modulus at most 1");
    rho = density_from_vector(ghz_vector(a));
    report["source"] = "ghz";
    report["a"] = complex_to_json(a);
    report["closed_form"] = binary_entropy(std::norm(a));
    if (c.c3_probe) {
      report["probe"] = to_json(c3_discontinuity_probe(a, c.gammas.empty() ? default_gamma_schedule() : c.gammas));
    }
  } else {
    const json j = read_json(c.input);
    rho = j.is_array() ? density_from_vector(complex_vector_from_json(j)) : state_from_json(j);
    report["source"] = c.input.string();
    if (c.c3_probe) throw ValidationError("--probe needs --ghz");
  }
  const auto eval = c3_evaluate(rho);
  report["evaluation"] = to_json(eval);
  if (c.wants("json")) write_output(c, "c3.json", dump(report));
  out << "c3: " << eval.value;
  if (report.contains("probe")) out << ", probe gap " << report["probe"]["gap"].get<double>();
  out << "\n";
  return kExitOk;
}

int cmd_reproduce(const RunConfig& c, std::ostream& out) {
  const auto names = reproduction_names();
  if (std::find(names.begin(), names.end(), c.name) == names.end()) {
    throw ValidationError("unknown reproduction " + c.name);
  }
  const auto golden_path = c.golden_dir / (c.name + ".json");
  const json golden = read_json(golden_path);
  const json values = reproduction_values(c);
  const auto checks = compare_with_golden(values, golden);
  bool all = true;
  json results = json::array();
  for (const auto& chk : checks) {
    all = all && chk.pass;
    results.push_back({{"key", chk.key}, {"pass", chk.pass}, {"detail", chk.detail}});
    out << (chk.pass ? "  ok   " : "  FAIL ") << chk.key << ": " << chk.detail << "\n";
  }
  if (c.wants("json")) {
    write_output(c, "reproduce-" + c.name + ".json",
                 dump({{"name", c.name}, {"pass", all}, {"values", values}, {"checks", results}}));
  }
  out << c.name << ": " << (all ? "PASS" : "FAIL") << "\n";
  return all ? kExitOk : kExitInternal;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximum-entropy inference and numerical range geometry"};
  app.require_subcommand(1);
  RunConfig c;
  std::string formats = "json,csv,svg";

  auto common = [&](CLI::App* s, bool observables) {
    if (observables) {
      s->add_option("--input", c.input, "observable-set JSON, or {\"matrix\": A}");
      s->add_option("--fixture", c.fixture, "built-in observable set")
          ->check(CLI::IsMember(fixtures::observable_fixture_names()));
    }
    s->add_option("--solver-tol", c.solver_tol, "dual gradient tolerance");
    s->add_option("--degeneracy-tol", c.degeneracy_tol, "eigenvalue degeneracy tolerance");
    s->add_option("--resolution", c.resolution, "angles in boundary sweeps");
    s->add_option("--out-dir", c.out_dir, "output directory");
    s->add_option("--format", formats, "comma separated subset of json,csv,svg");
    s->add_option("--seed", c.seed, "seed for randomized steps");
  };

  auto* maxent_cmd = app.add_subcommand("maxent", "maximum-entropy state for target expectations");
  common(maxent_cmd, true);
  maxent_cmd->add_option("--alpha", c.alpha, "target expected values")->delimiter(',');

  auto* nr_cmd = app.add_subcommand("nr", "numerical range atlas and discontinuity candidates");
  common(nr_cmd, true);

  auto* probe_cmd = app.add_subcommand("probe", "continuity and face-dimension probe along a curve");
  common(probe_cmd, true);
  probe_cmd->add_option("--curve", c.curve, "auto, limit, circle, segment or points");
  probe_cmd->add_option("--alpha", c.alpha, "target of a segment curve")->delimiter(',');
  probe_cmd->add_option("--from", c.from, "start of a segment curve")->delimiter(',');
  probe_cmd->add_option("--angle", c.angle, "exposing angle of a circle curve");
  probe_cmd->add_option("--points-file", c.points_file, "JSON {\"target\": [...], \"points\": [[...], ...]}");

  auto* c3_cmd = app.add_subcommand("c3", "irreducible three-party correlation of a three-qubit state");
  common(c3_cmd, false);
  c3_cmd->add_option("--input", c.input, "state JSON or state vector JSON");
  c3_cmd->add_option("--ghz", c.ghz, "amplitude of |000>: re or re,im")->delimiter(',');
  c3_cmd->add_flag("--probe", c.c3_probe, "tilt the GHZ-type state and report the jump");
  c3_cmd->add_option("--gammas", c.gammas, "tilt angles")->delimiter(',');

  auto* repro_cmd = app.add_subcommand("reproduce", "run a worked example and compare with golden values");
  common(repro_cmd, false);
  repro_cmd->add_option("name", c.name, "example name")->required()->check(CLI::IsMember(reproduction_names()));
  c.golden_dir = QMAXENT_GOLDEN_DIR;
  repro_cmd->add_option("--golden-dir", c.golden_dir, "directory of golden files");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitMalformed;
  }

  try {
    c.formats.clear();
    std::stringstream fs(formats);
    for (std::string f; std::getline(fs, f, ',');) {
      if (!f.empty()) c.formats.insert(f);
    }
    c.validate();
    const auto* sub = app.get_subcommands().front();
    c.command = sub->get_name();
    if (c.command == "maxent") return cmd_maxent(c, out);
    if (c.command == "nr") return cmd_nr(c, out);
    if (c.command == "probe") return cmd_probe(c, out);
    if (c.command == "c3") return cmd_c3(c, out);
    return cmd_reproduce(c, out);
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const ValidationError& e) {
    err << "malformed input: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const json::exception& e) {
    err << "malformed input: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace qmaxent::cli
