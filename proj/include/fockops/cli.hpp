#pragma once

#include "fockops/berezin.hpp"
#include "fockops/criteria.hpp"
#include "fockops/symbols.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fockops {

enum class Command { Berezin, Norm, Classify, Schatten, Sweep, Crosscheck };

const char* to_string(Command c);

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitDisagreement = 4;

struct RandomFamily {
  std::size_t count = 50;
  int max_degree = 5;
  std::uint64_t seed = 0;
};

/// A validated run configuration. See README for the file schema.
struct RunConfig {
  Command command = Command::Classify;
  std::optional<SymbolPair> pair;
  /// Sweep input: explicit pairs or a random polynomial family.
  std::vector<SymbolPair> family;
  std::optional<RandomFamily> random_family;
  double p = 2.0;
  double q = 2.0;
  double alpha = 1.0;
  GridSpec grid;
  int N = 128;
  std::vector<double> schatten_p{1.0, 2.0, 3.0, 4.0};
  Tolerance tol;
  int kernel_samples = 10;
  std::string output;
  std::string cache_dir;
};

/// Validates before anything is computed; throws ConfigError.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

struct RunOverrides {
  std::optional<std::string> out;
  std::optional<std::string> cache_dir;
  std::optional<std::uint64_t> seed;
  bool no_cache = false;
};

/// Applies command-line overrides. A seed replaces the random family seed.
void apply_overrides(RunConfig& config, const RunOverrides& o);

/// The resolved config without output and cache fields, keys sorted: the
/// content the cache key is computed from.
nlohmann::json canonical_config(const RunConfig& config);

/// 64-bit FNV-1a of the canonical config, as 16 hex digits.
std::string cache_key(const RunConfig& config);

struct RunResult {
  int exit_code = kExitOk;
  bool cache_hit = false;
  std::string cache_key;
  /// The main artifact (JSON, or CSV for the berezin command).
  std::string primary;
  /// Singular-value CSV of the schatten command.
  std::string secondary;
  /// Where the artifacts were written; empty when not written.
  std::string primary_path;
  std::string secondary_path;
};

/// Runs one command. Artifacts go to config.output (the schatten CSV next to
/// it as <stem>.singular_values.csv); the cache directory, when set, is
/// consulted first and updated by atomic replace. Cache hits are logged.
RunResult run(const RunConfig& config, std::ostream& log);

/// Command-line entry point used by the tool: parses flags, runs, prints the
/// primary artifact to `out` when no output path is given, returns the exit code.
int run_main(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace fockops
