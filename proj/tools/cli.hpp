#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pixelport/cv_teleport.hpp"
#include "pixelport/oracle_suite.hpp"
#include "pixelport/spdc_squeezing.hpp"

namespace pixelport::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitOracleFailed = 3;

enum class SqueezingMode { Ideal, Spdc };

struct RunConfig {
  SqueezingMode mode = SqueezingMode::Ideal;
  std::optional<double> ideal_r;
  std::optional<SpdcParams> spdc;  // mode=spdc, physical parameters
  std::optional<RingParams> ring;  // mode=spdc, ring given directly
  std::uint64_t seed = 0;
  std::uint64_t shots = 0;
  double pitch = 1.0;
  std::optional<Vec2> origin;  // default: grid centered on the optical axis
  OutputPlane plane = OutputPlane::Upright;
  std::filesystem::path input;
  std::filesystem::path output = "teleported.cimg";
  std::filesystem::path fidelity_map = "fidelity_map.csv";
  std::filesystem::path summary = "summary.json";

  /// Builds and validates a config from flat key=value pairs. Throws ConfigError.
  static RunConfig from_key_values(const std::map<std::string, std::string>& kv);

  /// Ring actually used in spdc mode (derived from `spdc` when needed).
  RingParams effective_ring() const;

  /// Every parameter as ordered key/value strings, for output headers.
  std::vector<std::pair<std::string, std::string>> describe() const;
};

/// Runs the teleport pipeline and writes the output image, fidelity map, and
/// summary. Returns an exit code; diagnostics go to `err`.
int run_teleport(const RunConfig& config, std::ostream& err);

/// Ring cross-section CSV with columns x,eta,eta_sq_normalized.
void write_profile_csv(std::ostream& out, const RingParams& ring, int samples,
                       const std::vector<std::string>& comments = {});

/// Fidelity curve CSV with columns x and one fidelity column per Xi.
void write_fidelity_curve_csv(std::ostream& out, const RingParams& ring, const std::vector<double>& xis,
                              int samples, const std::vector<std::string>& comments = {});

/// Preset ring geometries for the cross-section and fidelity presets: (r0, R) pairs.
const std::vector<std::pair<double, double>>& preset_rings();

/// Prints the oracle table (or JSON) and returns 0 if every row passes, else 3.
int run_oracle_verify(const OracleSuiteOptions& options, bool json, std::ostream& out, std::ostream& err);

/// Full command-line entry point.
int cli_main(int argc, char** argv);

}  // namespace pixelport::cli
