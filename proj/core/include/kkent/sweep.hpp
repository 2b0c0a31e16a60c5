#ifndef KKENT_SWEEP_HPP
#define KKENT_SWEEP_HPP

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kkent/model.hpp"
#include "kkent/observables.hpp"
#include "kkent/spectra.hpp"

namespace kkent {

enum class Cut { diagonal, antidiagonal, explicit_list };

std::string_view to_string(Cut cut);
Cut parse_cut(std::string_view name);

// Linear grid lo, lo + step, ..., hi with `points` entries (endpoints included).
struct GridRange {
  double lo = -1.0;
  double hi = 1.0;
  int points = 41;
};

// Default temperature list for cut sweeps.
inline const std::vector<double> kReferenceTemperatures = {0.001, 0.05, 0.1, 0.15};

// Declarative sweep over a one-parameter cut of the (I, J) plane.
//   diagonal:      I = J = x
//   antidiagonal:  J = x, I = -x
//   explicit_list: (J, I) pairs taken from `explicit_points`
struct SweepSpec {
  Cut cut = Cut::diagonal;
  GridRange range;
  std::vector<std::pair<double, double>> explicit_points;  // (j_spin, i_pseudo)
  double k_coupling = 0.0;
  std::vector<double> temperatures;
  std::vector<int> n_sites_list = {6};
  FieldSpec field_spin;
  FieldSpec field_pseudo;
  bool observables_enabled = false;
  int max_sites = kDefaultMaxSites;
};

void validate(const SweepSpec& spec);

struct GridPoint {
  ModelParams params;
  double temperature = 0.0;
};

// n_sites outermost, cut parameter next, temperature innermost.
std::vector<GridPoint> expand_grid(const SweepSpec& spec);

inline constexpr std::string_view kStatusOk = "ok";

struct SweepRow {
  ModelParams params;
  double temperature = 0.0;
  double log_negativity = 0.0;
  double trace_norm = 1.0;
  double ground_energy = 0.0;
  int ground_degeneracy = 1;
  std::optional<ObservableSummary> observables;
  double wall_time_ms = 0.0;
  // "ok", or "error: <message>" with numeric fields set to NaN.
  std::string status{kStatusOk};

  bool ok() const { return status == kStatusOk; }
};

// One row for a temperature, given an existing decomposition of `params`.
SweepRow evaluate_temperature(const ModelParams& params, const SpectralDecomposition& spec,
                              double temperature, bool with_observables);

// Build, diagonalize and evaluate a single point from scratch.
SweepRow evaluate_point(const ModelParams& params, double temperature, bool with_observables,
                        int max_sites = kDefaultMaxSites);

struct SweepOptions {
  int worker_budget = 1;
  std::filesystem::path cache_dir;  // empty: no decomposition cache
};

// Rows come back in expand_grid order whatever the worker count. A failing
// grid point yields error-marked rows; the sweep itself never throws for it.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SweepOptions& options);
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int worker_budget);

struct ExtrapolationResult {
  double intercept = 0.0;  // value at 1/N -> 0
  double slope = 0.0;
  double residual = 0.0;   // RMS of fit residuals
  int n_points = 0;
};

// Least-squares fit of value = intercept + slope / N. Needs >= 2 distinct N.
ExtrapolationResult extrapolate(std::span<const std::pair<int, double>> points);

// Extrapolation of log_negativity for one (couplings, fields, temperature) group.
struct ExtrapolationRow {
  ModelParams params;  // n_sites is unused
  double temperature = 0.0;
  std::vector<int> sizes;
  ExtrapolationResult result;
};

// Groups successful rows by everything except n_sites, in order of first
// appearance; groups with fewer than two distinct sizes are skipped.
std::vector<ExtrapolationRow> extrapolate_rows(std::span<const SweepRow> rows);

}  // namespace kkent

#endif  // KKENT_SWEEP_HPP
