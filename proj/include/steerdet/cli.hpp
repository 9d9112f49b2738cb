#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "steerdet/states.hpp"
#include "steerdet/steer.hpp"

namespace steerdet::cli {

enum class Command { verdict, family, sweep, region, selftest };
enum class Format { json, csv };

// Exit codes for scripting.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitBadInput = 2;

/// Environment variable that overrides the selftest threshold tolerance.
inline constexpr const char* kSelftestTolEnv = "STEERDET_SELFTEST_TOL";

struct CliConfig {
  Command command = Command::selftest;
  std::optional<std::string> input_path;
  std::optional<Family> family;
  std::map<std::string, double> params;
  double mu = kMaxMu;
  std::string detector = "thm1";
  Format format = Format::json;
  std::optional<std::string> output_path;
  int grid_alpha = 201;
  int grid_theta = 201;
  std::uint64_t seed = 42;
  std::optional<double> lo;
  std::optional<double> hi;
  double tol = 1e-6;
  unsigned threads = 0;
};

/// Parses argv (without the program name). Throws InputError on bad usage.
/// Returns nullopt when help was requested; the help text is written to `out`.
std::optional<CliConfig> parse_args(const std::vector<std::string>& args, std::ostream& out);

int run_verdict(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int run_family(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int run_sweep(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int run_region(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int run_selftest(const CliConfig& cfg, std::ostream& out, std::ostream& err);

/// Dispatches on cfg.command and maps exceptions to exit codes.
int run(const CliConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_args + run; what main() calls.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace steerdet::cli
