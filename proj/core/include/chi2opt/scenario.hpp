#pragma once

#include <string>
#include <vector>

#include "chi2opt/nonlinear.hpp"

namespace chi2opt {

struct SweepSpec {
  std::string path;  // e.g. "medium.x_end"
  double start = 0.0;
  double stop = 0.0;
  int points = 0;
  bool log_scale = false;
};

struct OutputSpec {
  std::string quantity;  // spdc_probability | squeezing | biphoton
  std::string format;    // csv | json
  std::string path;
};

/// A fully validated simulation scenario. Unknown keys in the source
/// document are hard errors; defaults are documented in the README.
struct Scenario {
  // medium
  double chi2 = 0.0;
  double x_start = 0.0;
  double x_end = 0.0;
  // pump
  PumpField pump;
  // kinematics
  ThreeWaveKinematics kin;
  // detector positions for biphoton/squeezing quantities
  double detector_x = 0.0;
  double detector_y = 0.0;

  std::vector<SweepSpec> sweeps;
  std::vector<OutputSpec> outputs;

  std::string raw_document;  // original text, hashed into the manifest

  Chi2Medium medium() const;
  ThreeWaveKinematics kinematics() const;  // kin with pump attached
};

/// Parses and validates a scenario document (JSON, nested tables of
/// key-value pairs). Throws ValidationError with a key path or parser
/// position on failure.
Scenario parse_scenario(const std::string& document);
Scenario parse_scenario_file(const std::string& path);

struct RunResult {
  std::vector<std::string> artifacts;  // files written, manifest last
  double wall_time_s = 0.0;
};

/// Executes the scenario sweeps and writes the requested outputs plus a run
/// manifest, all atomically (temp file + rename). Output bytes are
/// deterministic for identical inputs. Relative output paths resolve
/// against output_dir.
RunResult run_scenario(const Scenario& s, const std::string& output_dir = ".");

/// Fixed 17-significant-digit float formatting used for all CSV output.
std::string format_double(double v);

/// FNV-1a hash of a byte string, hex-encoded (input hash in manifests).
std::string fnv1a_hex(const std::string& bytes);

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace chi2opt
