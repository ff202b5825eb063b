#include "support.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "qmaxent/fixtures.hpp"
#include "qmaxent/report.hpp"

using namespace qmaxent;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("qmaxent-cli-test-" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& content) {
  fs::create_directories(dir);
  std::ofstream(dir / name) << content;
  return dir / name;
}

}  // namespace

TEST_CASE("maxent command") {
  const auto dir = fresh_dir("maxent");
  auto r = run({"maxent", "--fixture", "example-5-2", "--alpha", "1,1,0.5", "--out-dir", dir.string()});
  REQUIRE(r.code == cli::kExitOk);
  const auto j = read_json(dir / "maxent.json");
  const auto rho = state_from_json(j["solution"]["state"]);
  CHECK(trace_distance(rho.matrix(), fixtures::limit_face_projection() / 2.0) < 1e-7);
  CHECK(j["solution"]["status"] == "face-compressed");

  r = run({"maxent", "--fixture", "bloch", "--alpha", "0,0,0", "--out-dir", dir.string()});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(trace_distance(state_from_json(read_json(dir / "maxent.json")["solution"]["state"]),
                       DensityMatrix::maximally_mixed(2)) < 1e-12);

  r = run({"maxent", "--fixture", "bloch", "--alpha", "2,0,0", "--out-dir", dir.string()});
  CHECK(r.code == cli::kExitInfeasible);
  const auto inf = read_json(dir / "maxent.json");
  CHECK(inf["feasible"] == false);
  CHECK(inf["violation"].get<double>() > 0);

  // observable-set file input
  const auto input = write_file(dir, "pauli.json", observables_to_json(fixtures::pauli_pair()).dump());
  r = run({"maxent", "--input", input.string(), "--alpha", "0.6,0", "--out-dir", dir.string(), "--format", "json"});
  CHECK(r.code == cli::kExitOk);
}

TEST_CASE("malformed input exits with 3") {
  const auto dir = fresh_dir("malformed");
  const auto bad = write_file(dir, "bad.json", R"({"d": 2, "observables": [[[0, 1], [0, 0]]]})");
  const auto garbage = write_file(dir, "garbage.json", "{not json");
  const std::vector<std::vector<std::string>> cases{
      {"maxent", "--input", bad.string(), "--alpha", "0"},
      {"maxent", "--input", garbage.string(), "--alpha", "0"},
      {"maxent", "--input", (dir / "missing.json").string(), "--alpha", "0"},
      {"maxent", "--fixture", "bloch", "--alpha", "0,0"},
      {"maxent", "--fixture", "bloch"},
      {"maxent", "--fixture", "no-such-fixture", "--alpha", "0"},
      {"maxent", "--fixture", "bloch", "--alpha", "0,0,0", "--solver-tol", "-1"},
      {"nr", "--fixture", "thm-3x3", "--resolution", "8"},
      {"nr", "--fixture", "bloch"},
      {"nr", "--fixture", "thm-3x3", "--format", "png"},
      {"probe", "--fixture", "bloch"},
      {"c3"},
      {"c3", "--ghz", "2"},
      {"reproduce", "no-such-example"},
      {"frobnicate"},
      {},
  };
  for (const auto& args : cases) {
    auto with_dir = args;
    if (!args.empty() && args[0] != "frobnicate") {
      with_dir.push_back("--out-dir");
      with_dir.push_back(dir.string());
    }
    const auto r = run(with_dir);
    CAPTURE(args.empty() ? std::string("<none>") : args[0] + " " + (args.size() > 1 ? args[1] : ""));
    CHECK(r.code == cli::kExitMalformed);
  }
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("nr command") {
  const auto dir = fresh_dir("nr");
  auto r = run({"nr", "--fixture", "thm-3x3", "--out-dir", dir.string()});
  REQUIRE(r.code == cli::kExitOk);
  const auto j = read_json(dir / "nr.json");
  const auto& cand = j["classification"]["discontinuity_candidates"]["points"];
  REQUIRE(cand.size() == 1);
  CHECK(std::abs(cand[0]["point"][0].get<double>() - 1) < 1e-6);
  CHECK(std::abs(cand[0]["point"][1].get<double>()) < 1e-6);
  CHECK(j["analysis_3x3"]["shape"] == "disk-with-boundary-eigenvalue");
  CHECK(slurp(dir / "nr.svg").starts_with("<svg"));
  CHECK(slurp(dir / "nr.csv").starts_with("theta,h,re,im,class\n"));

  r = run({"nr", "--fixture", "triangle", "--out-dir", dir.string(), "--resolution", "512"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(read_json(dir / "nr.json")["classification"]["corners"].size() == 3);

  r = run({"nr", "--fixture", "disk-4x4", "--out-dir", dir.string(), "--resolution", "512"});
  REQUIRE(r.code == cli::kExitOk);
  const auto arcs = read_json(dir / "nr.json")["classification"]["discontinuity_candidates"]["arcs"];
  REQUIRE(arcs.size() == 1);
  CHECK(arcs[0]["whole_boundary"] == true);

  // {"matrix": A} input
  const auto input = write_file(dir, "m.json", json({{"matrix", matrix_to_json(fixtures::normal_triangle())}}).dump());
  r = run({"nr", "--input", input.string(), "--out-dir", dir.string(), "--resolution", "256", "--format", "json"});
  CHECK(r.code == cli::kExitOk);
}

TEST_CASE("outputs are byte-identical across runs") {
  const auto a = fresh_dir("det-a"), b = fresh_dir("det-b");
  for (const auto& d : {a, b}) {
    REQUIRE(run({"nr", "--fixture", "disk-and-point", "--resolution", "256", "--out-dir", d.string()}).code == 0);
    REQUIRE(run({"probe", "--fixture", "thm-3x3", "--out-dir", d.string()}).code == 0);
  }
  for (const char* f : {"nr.json", "nr.csv", "nr.svg", "probe.json", "probe.svg"}) {
    CAPTURE(f);
    CHECK(slurp(a / f) == slurp(b / f));
    CHECK(!slurp(a / f).empty());
  }
}

TEST_CASE("probe command") {
  const auto dir = fresh_dir("probe");
  REQUIRE(run({"probe", "--fixture", "example-5-2", "--out-dir", dir.string()}).code == 0);
  auto j = read_json(dir / "probe.json");
  CHECK(std::abs(j["continuity"]["gap_trace_distance"].get<double>() - 0.5) < 1e-4);
  CHECK(j["lsc"]["lsc_violated"] == true);

  REQUIRE(run({"probe", "--fixture", "thm-3x3", "--out-dir", dir.string()}).code == 0);
  j = read_json(dir / "probe.json");
  CHECK(j["continuity"]["verdict"] == "discontinuous-along-curve");
  CHECK(std::abs(j["continuity"]["entropy_jump"].get<double>() - std::log(2.0)) < 1e-6);

  REQUIRE(run({"probe", "--fixture", "thm-3x3", "--alpha", "0.1,0.1", "--from", "0.3,-0.2", "--out-dir",
               dir.string()})
              .code == 0);
  CHECK(read_json(dir / "probe.json")["continuity"]["verdict"] == "continuous-along-curve");

  // listed points approaching the target along the circle
  json pts = json::array();
  // stops at 2^-20: closer to 1 the fiber is numerically not a singleton
  for (int k = 1; k <= 18; ++k) {
    const double t = std::ldexp(1.0, -k - 2);
    pts.push_back({std::cos(t), std::sin(t)});
  }
  const auto file = write_file(dir, "points.json", json({{"target", {1.0, 0.0}}, {"points", pts}}).dump());
  REQUIRE(run({"probe", "--fixture", "thm-3x3", "--points-file", file.string(), "--out-dir", dir.string()}).code == 0);
  j = read_json(dir / "probe.json");
  CHECK(j["continuity"]["verdict"] == "discontinuous-along-curve");
  CHECK(j["continuity"]["schedule"].size() == 18);
}

TEST_CASE("c3 command") {
  const auto dir = fresh_dir("c3");
  REQUIRE(run({"c3", "--ghz", "0.7071067811865476", "--out-dir", dir.string()}).code == 0);
  CHECK(std::abs(read_json(dir / "c3.json")["evaluation"]["c3"].get<double>() - std::log(2.0)) < 1e-6);

  REQUIRE(run({"c3", "--ghz", "0.6", "--probe", "--gammas", "0.3,0.1", "--out-dir", dir.string()}).code == 0);
  CHECK(std::abs(read_json(dir / "c3.json")["probe"]["gap"].get<double>() - binary_entropy(0.36)) < 1e-4);

  json v = json::array();
  for (int k = 0; k < 8; ++k) v.push_back(k == 0 ? 1.0 : 0.0);
  const auto file = write_file(dir, "zero.json", v.dump());
  REQUIRE(run({"c3", "--input", file.string(), "--out-dir", dir.string()}).code == 0);
  CHECK(std::abs(read_json(dir / "c3.json")["evaluation"]["c3"].get<double>()) < 1e-6);

  const auto wrong = write_file(dir, "wrong.json", R"({"dim": 2, "entries": [[0.5, 0], [0, 0], [0, 0], [0.5, 0]]})");
  CHECK(run({"c3", "--input", wrong.string(), "--out-dir", dir.string()}).code == cli::kExitMalformed);
}

TEST_CASE("golden comparison") {
  const json golden = json::parse(R"({"checks": {
      "x": {"value": 1.0, "tol": 1e-6}, "v": {"value": [0, 1], "tol": 1e-9},
      "flag": {"value": true}, "small": {"max": 1e-4}, "missing": {"value": 1}}})");
  const json values = {{"x", 1.0 + 1e-7}, {"v", {0.0, 1.0 + 1e-8}}, {"flag", true}, {"small", 2e-4}};
  std::map<std::string, bool> pass;
  for (const auto& c : cli::compare_with_golden(values, golden)) pass[c.key] = c.pass;
  CHECK(pass["x"]);
  CHECK(!pass["v"]);
  CHECK(pass["flag"]);
  CHECK(!pass["small"]);
  CHECK(!pass["missing"]);
  CHECK_THROWS_AS(cli::compare_with_golden(values, json::object()), ValidationError);
}

TEST_CASE("reproduce detects a mismatch") {
  const auto dir = fresh_dir("golden");
  write_file(dir / "golden", "skew-cone.json", R"({"checks": {"origin_face_dim": {"value": 2}}})");
  const auto r = run({"reproduce", "skew-cone", "--golden-dir", (dir / "golden").string(), "--out-dir", dir.string()});
  CHECK(r.code == cli::kExitInternal);
  CHECK(r.out.find("FAIL") != std::string::npos);
  CHECK(run({"reproduce", "skew-cone", "--out-dir", dir.string()}).code == cli::kExitOk);
}
