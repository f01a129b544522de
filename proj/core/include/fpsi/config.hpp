#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "fpsi/demo.hpp"
#include "fpsi/params.hpp"

namespace fpsi {

enum class ProblemKind { BenchmarkCase1, BenchmarkCase2, StokesBiotCustom, NsBiotDemo };

std::string_view to_string(ProblemKind kind);

/// Run configuration. Benchmark and custom runs use the unit-square pair
/// with 2n cells per side; the demo uses `channel`.
struct Config {
  ProblemKind kind = ProblemKind::BenchmarkCase1;
  PhysicalParams params;
  int n = 4;
  ChannelGeometry channel;
  std::string output_dir = "fpsi-out";
  int snapshot_every = 0;  // steps between VTK snapshots; 0 disables them
  bool sequential = false;
  DiscretizationOptions discretization;
  bool override_resource_guard = false;
  double solver_tolerance = 1e-10;  // fixed-point trace tolerance
  int fixed_point_iterations = 0;   // 0 = loosely coupled

  bool operator==(const Config&) const = default;
};

/// Defaults for a problem kind before any key is applied.
Config default_config(ProblemKind kind);

/// Parses `key = value` lines with `#` comments. `kind` is required. Errors
/// (Config) name the key and line.
Config parse_config_string(std::string_view text, std::string_view source = "<string>");
Config parse_config(const std::filesystem::path& path);

/// Every key written explicitly; parse_config_string(serialize(c)) == c.
std::string serialize(const Config& config);

/// Semantic checks shared by the parser and programmatic callers.
void validate(const Config& config);

}  // namespace fpsi
