#include "kkent/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <thread>

#include "kkent/entanglement.hpp"
#include "kkent/error.hpp"
#include "kkent/thermal.hpp"

namespace kkent {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Exact endpoints, and symmetric grids give exactly negated values.
double grid_value(const GridRange& r, int k) {
  if (r.points == 1) return r.lo;
  const double span = r.points - 1;
  return (r.lo * (span - k) + r.hi * k) / span;
}

SweepRow error_row(const ModelParams& params, double temperature, const std::string& what) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  SweepRow row;
  row.params = params;
  row.temperature = temperature;
  row.log_negativity = nan;
  row.trace_norm = nan;
  row.ground_energy = nan;
  row.ground_degeneracy = 0;
  row.status = "error: " + what;
  return row;
}

// Each unit is one (n_sites, cut point) pair: a single diagonalization shared
// by all temperatures.
struct WorkUnit {
  ModelParams params;
  std::size_t first_row = 0;
};

void run_unit(const WorkUnit& unit, const SweepSpec& spec, const SweepOptions& options,
              std::vector<SweepRow>& rows) {
  const auto start = Clock::now();
  SpectralDecomposition decomposition;
  try {
    decomposition = diagonalize_cached(unit.params, options.cache_dir, spec.max_sites);
  } catch (const std::exception& e) {
    for (std::size_t k = 0; k < spec.temperatures.size(); ++k) {
      rows[unit.first_row + k] = error_row(unit.params, spec.temperatures[k], e.what());
    }
    return;
  }
  const double diag_ms = elapsed_ms(start);

  for (std::size_t k = 0; k < spec.temperatures.size(); ++k) {
    const double t = spec.temperatures[k];
    try {
      rows[unit.first_row + k] =
          evaluate_temperature(unit.params, decomposition, t, spec.observables_enabled);
    } catch (const std::exception& e) {
      rows[unit.first_row + k] = error_row(unit.params, t, e.what());
    }
  }
  // The shared diagonalization is billed to the first temperature of the unit.
  rows[unit.first_row].wall_time_ms += diag_ms;
}

}  // namespace

std::string_view to_string(Cut cut) {
  switch (cut) {
    case Cut::diagonal: return "diagonal";
    case Cut::antidiagonal: return "antidiagonal";
    case Cut::explicit_list: return "explicit_list";
  }
  return "?";
}

Cut parse_cut(std::string_view name) {
  if (name == "diagonal") return Cut::diagonal;
  if (name == "antidiagonal") return Cut::antidiagonal;
  if (name == "explicit_list") return Cut::explicit_list;
  throw InvalidArgument("unknown cut '" + std::string(name) +
                        "' (expected diagonal|antidiagonal|explicit_list)");
}

void validate(const SweepSpec& spec) {
  if (spec.cut == Cut::explicit_list) {
    if (spec.explicit_points.empty()) throw InvalidArgument("explicit_list cut needs at least one point");
    for (const auto& [j, i] : spec.explicit_points) {
      if (!std::isfinite(j) || !std::isfinite(i)) throw InvalidArgument("explicit point is not finite");
    }
  } else {
    const GridRange& r = spec.range;
    if (r.points < 1) throw InvalidArgument("range.points must be >= 1");
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi) {
      throw InvalidArgument("range needs finite lo <= hi");
    }
  }
  if (spec.temperatures.empty()) throw InvalidArgument("temperatures must not be empty");
  for (double t : spec.temperatures) {
    if (!std::isfinite(t) || t < 0.0) throw InvalidArgument("temperatures must be finite and >= 0");
  }
  if (spec.n_sites_list.empty()) throw InvalidArgument("n_sites_list must not be empty");
  for (int n : spec.n_sites_list) {
    ModelParams p;
    p.n_sites = n;
    validate(p, spec.max_sites);
  }
  if (!std::isfinite(spec.k_coupling)) throw InvalidArgument("k_coupling must be finite");
}

std::vector<GridPoint> expand_grid(const SweepSpec& spec) {
  validate(spec);
  std::vector<std::pair<double, double>> couplings;  // (j, i)
  switch (spec.cut) {
    case Cut::diagonal:
      for (int k = 0; k < spec.range.points; ++k) {
        const double x = grid_value(spec.range, k);
        couplings.emplace_back(x, x);
      }
      break;
    case Cut::antidiagonal:
      for (int k = 0; k < spec.range.points; ++k) {
        const double x = grid_value(spec.range, k);
        couplings.emplace_back(x, -x);
      }
      break;
    case Cut::explicit_list:
      couplings = spec.explicit_points;
      break;
  }

  std::vector<GridPoint> grid;
  grid.reserve(spec.n_sites_list.size() * couplings.size() * spec.temperatures.size());
  for (int n : spec.n_sites_list) {
    for (const auto& [j, i] : couplings) {
      ModelParams p;
      p.n_sites = n;
      p.j_spin = j;
      p.i_pseudo = i;
      p.k_coupling = spec.k_coupling;
      p.field_spin = spec.field_spin;
      p.field_pseudo = spec.field_pseudo;
      for (double t : spec.temperatures) grid.push_back({p, t});
    }
  }
  return grid;
}

SweepRow evaluate_temperature(const ModelParams& params, const SpectralDecomposition& spec,
                              double temperature, bool with_observables) {
  const auto start = Clock::now();
  const DensityMatrix rho = thermal_density_matrix(spec, temperature);
  const NegativityResult ln = logarithmic_negativity(rho, Sector::spin);

  SweepRow row;
  row.params = params;
  row.temperature = temperature;
  row.log_negativity = ln.log_negativity;
  row.trace_norm = ln.trace_norm;
  row.ground_energy = spec.ground_energy();
  row.ground_degeneracy = spec.ground_degeneracy();
  if (with_observables) row.observables = compute_observables(rho, params).summary();
  row.wall_time_ms = elapsed_ms(start);
  return row;
}

SweepRow evaluate_point(const ModelParams& params, double temperature, bool with_observables,
                        int max_sites) {
  const auto start = Clock::now();
  const SpectralDecomposition spec =
      diagonalize(build_hamiltonian(params, max_sites), hilbert_dimension(max_sites));
  SweepRow row = evaluate_temperature(params, spec, temperature, with_observables);
  row.wall_time_ms = elapsed_ms(start);
  return row;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SweepOptions& options) {
  if (options.worker_budget < 1) throw InvalidArgument("worker_budget must be >= 1");
  const std::vector<GridPoint> grid = expand_grid(spec);
  const std::size_t per_unit = spec.temperatures.size();

  std::vector<WorkUnit> units;
  for (std::size_t r = 0; r < grid.size(); r += per_unit) units.push_back({grid[r].params, r});

  std::vector<SweepRow> rows(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t u = next++; u < units.size(); u = next++) run_unit(units[u], spec, options, rows);
  };

  const auto n_workers =
      std::min<std::size_t>(static_cast<std::size_t>(options.worker_budget), units.size());
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }
  return rows;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int worker_budget) {
  SweepOptions options;
  options.worker_budget = worker_budget;
  return run_sweep(spec, options);
}

ExtrapolationResult extrapolate(std::span<const std::pair<int, double>> points) {
  std::set<int> sizes;
  for (const auto& [n, v] : points) {
    if (n < 1) throw InvalidArgument("extrapolate: n_sites must be >= 1");
    if (!std::isfinite(v)) throw InvalidArgument("extrapolate: non-finite value");
    sizes.insert(n);
  }
  if (sizes.size() < 2) {
    throw InvalidArgument("extrapolate: need at least 2 distinct chain lengths, got " +
                          std::to_string(sizes.size()));
  }

  const auto m = static_cast<double>(points.size());
  double x_mean = 0.0;
  double y_mean = 0.0;
  for (const auto& [n, v] : points) {
    x_mean += 1.0 / n;
    y_mean += v;
  }
  x_mean /= m;
  y_mean /= m;

  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [n, v] : points) {
    const double dx = 1.0 / n - x_mean;
    sxx += dx * dx;
    sxy += dx * (v - y_mean);
  }

  ExtrapolationResult r;
  r.n_points = static_cast<int>(points.size());
  r.slope = sxy / sxx;
  r.intercept = y_mean - r.slope * x_mean;
  double ss = 0.0;
  for (const auto& [n, v] : points) {
    const double e = v - (r.intercept + r.slope / n);
    ss += e * e;
  }
  r.residual = std::sqrt(ss / m);
  return r;
}

std::vector<ExtrapolationRow> extrapolate_rows(std::span<const SweepRow> rows) {
  struct Group {
    ExtrapolationRow row;
    std::vector<std::pair<int, double>> points;
  };
  std::vector<Group> groups;

  const auto same_point = [](const SweepRow& a, const ExtrapolationRow& b) {
    ModelParams pa = a.params;
    pa.n_sites = b.params.n_sites;
    return pa == b.params && a.temperature == b.temperature;
  };

  for (const SweepRow& r : rows) {
    if (!r.ok()) continue;
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const Group& g) { return same_point(r, g.row); });
    if (it == groups.end()) {
      Group g;
      g.row.params = r.params;
      g.row.params.n_sites = 0;
      g.row.temperature = r.temperature;
      groups.push_back(std::move(g));
      it = std::prev(groups.end());
    }
    it->points.emplace_back(r.params.n_sites, r.log_negativity);
  }

  std::vector<ExtrapolationRow> out;
  for (Group& g : groups) {
    std::set<int> sizes;
    for (const auto& p : g.points) sizes.insert(p.first);
    if (sizes.size() < 2) continue;
    g.row.sizes.assign(sizes.begin(), sizes.end());
    g.row.result = extrapolate(g.points);
    out.push_back(std::move(g.row));
  }
  return out;
}

}  // namespace kkent
