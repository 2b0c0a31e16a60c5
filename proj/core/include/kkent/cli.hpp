#ifndef KKENT_CLI_HPP
#define KKENT_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "kkent/io.hpp"
#include "kkent/model.hpp"
#include "kkent/sweep.hpp"

namespace kkent {

enum class Mode { point, sweep, extrapolate };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view name);

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,      // unexpected error
  kExitConfig = 2,       // invalid configuration or arguments
  kExitPartial = 3,      // sweep finished but some rows carry an error status
  kExitIo = 4,           // input/output failure
};

// A validated run. Only the payload matching `mode` is meaningful.
struct RunConfig {
  Mode mode = Mode::point;

  // point
  ModelParams params;
  double temperature = 0.0;

  // sweep
  SweepSpec sweep;

  // extrapolate
  std::filesystem::path input_path;

  std::filesystem::path output_path;  // empty: standard output
  OutputFormat output_format = OutputFormat::csv;
  int worker_budget = 1;
  bool include_observables = false;
  std::optional<std::filesystem::path> cache_dir;
  int max_sites = kDefaultMaxSites;

  // Canonical JSON echo of the parsed document, for output metadata.
  std::string echo;
};

// Parses a JSON configuration document. Unknown keys are errors.
//
// Common keys:  mode (point|sweep|extrapolate, required), output, format (csv|json),
//               workers (>= 1), observables (bool), cache_dir, max_sites.
// point:        n_sites (required), k_coupling (required), temperature (required),
//               j_spin = 0, i_pseudo = 0, field_spin, field_pseudo (default off).
// sweep:        k_coupling (required), temperatures (required, list),
//               cut = diagonal, range = {lo: -1, hi: 1, points: 41},
//               points ([[j, i], ...] for cut = explicit_list), n_sites (list) = [6],
//               field_spin, field_pseudo.
// extrapolate:  input (path to a sweep CSV/JSON, required).
// Fields are objects {"pattern": off|uniform|staggered, "magnitude": real}.
//
// Throws ConfigError naming the offending key and its expected domain.
RunConfig parse_config(std::string_view text);

// Rough peak working-set estimate for one worker at this chain length.
std::uint64_t estimate_memory_bytes(int n_sites);

// Executes a run, writing results to the configured output (or `out` when no
// path is set) and diagnostics to `err`. Returns an ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace kkent

#endif  // KKENT_CLI_HPP
