#pragma once

// Batch front end: argument parsing, the per-command drivers and the
// reproduction pipelines with their golden-file comparison.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qmaxent/linalg.hpp"

namespace qmaxent::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;  // also: reproduction mismatch
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitMalformed = 3;

struct RunConfig {
  std::string command;
  std::filesystem::path input;
  std::string fixture;
  std::vector<double> alpha;
  int resolution = 2048;
  double solver_tol = 1e-10;
  double degeneracy_tol = kDegeneracyTol;
  std::filesystem::path out_dir = "qmaxent-out";
  std::set<std::string> formats{"json", "csv", "svg"};
  std::uint64_t seed = 42;

  // probe
  std::string curve = "auto";
  double angle = 0.0;
  std::vector<double> from;
  std::filesystem::path points_file;
  // c3
  std::vector<double> ghz;
  bool c3_probe = false;
  std::vector<double> gammas;
  // reproduce
  std::string name;
  std::filesystem::path golden_dir;

  [[nodiscard]] bool wants(const std::string& format) const { return formats.contains(format); }
  /// Throws ValidationError on non-positive tolerances, resolution < 16 or
  /// unknown formats.
  void validate() const;
};

/// Parses argv-style arguments (without the program name) and runs the
/// command. Never throws; returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_maxent(const RunConfig& config, std::ostream& out);
int cmd_nr(const RunConfig& config, std::ostream& out);
int cmd_probe(const RunConfig& config, std::ostream& out);
int cmd_c3(const RunConfig& config, std::ostream& out);
int cmd_reproduce(const RunConfig& config, std::ostream& out);

std::vector<std::string> reproduction_names();

/// Computed quantities of a reproduction, keyed as in the golden files.
/// Also writes the pipeline's artifacts into config.out_dir.
nlohmann::json reproduction_values(const RunConfig& config);

struct GoldenCheck {
  std::string key;
  bool pass = false;
  std::string detail;
};

/// Compares computed values with a golden document
/// {"checks": {key: {"value": v, "tol": t} | {"max": b} | {"min": b}}}.
std::vector<GoldenCheck> compare_with_golden(const nlohmann::json& values, const nlohmann::json& golden);

/// Writes `content` to out_dir/file, creating the directory.
void write_output(const RunConfig& config, const std::string& file, const std::string& content);

}  // namespace qmaxent::cli
