// kkent: logarithmic negativity of the spin/pseudospin bipartition of the
// Kugel-Khomskii chain, for single points, cut sweeps and 1/N extrapolation.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kkent/cli.hpp"
#include "kkent/error.hpp"
#include "kkent/io.hpp"
#include "kkent/version.hpp"

namespace {

struct Overrides {
  std::string config;
  std::string input;
  std::string output;
  std::string format;
  int workers = 0;
  bool observables = false;
  std::string cache;
  int max_sites = 0;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON run configuration");
  cmd->add_option("--output", o.output, "Output file (default: standard output)");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--workers", o.workers, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  cmd->add_flag("--observables", o.observables, "Add bond correlators and magnetizations");
  cmd->add_option("--cache", o.cache, "Directory for cached decompositions");
  cmd->add_option("--max-sites", o.max_sites, "Override the chain-length cap")
      ->check(CLI::Range(1, kkent::kAbsoluteMaxSites));
}

kkent::RunConfig build_config(kkent::Mode mode, const Overrides& o) {
  kkent::RunConfig cfg;
  if (!o.config.empty()) {
    cfg = kkent::parse_config(kkent::read_text_file(o.config));
    if (cfg.mode != mode) {
      throw kkent::ConfigError("config mode \"" + std::string(kkent::to_string(cfg.mode)) +
                               "\" does not match subcommand \"" +
                               std::string(kkent::to_string(mode)) + "\"");
    }
  } else if (mode == kkent::Mode::extrapolate && !o.input.empty()) {
    cfg.mode = mode;
  } else {
    throw kkent::ConfigError("--config is required for this subcommand");
  }
  if (!o.input.empty()) cfg.input_path = o.input;
  if (!o.output.empty()) cfg.output_path = o.output;
  if (!o.format.empty()) cfg.output_format = kkent::parse_output_format(o.format);
  if (o.workers > 0) cfg.worker_budget = o.workers;
  if (o.observables) cfg.include_observables = true;
  if (!o.cache.empty()) cfg.cache_dir = o.cache;
  if (o.max_sites > 0) cfg.max_sites = o.max_sites;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin/pseudospin entanglement of the Kugel-Khomskii chain"};
  app.set_version_flag("--version", std::string(kkent::kToolVersion));
  app.require_subcommand(1);

  Overrides point_opts, sweep_opts, extrap_opts;
  auto* point = app.add_subcommand("point", "Logarithmic negativity at one parameter point");
  add_common(point, point_opts);
  auto* sweep = app.add_subcommand("sweep", "Sweep a cut of the (I, J) plane over temperatures");
  add_common(sweep, sweep_opts);
  auto* extrap = app.add_subcommand("extrapolate", "Fit sweep results linearly in 1/N");
  add_common(extrap, extrap_opts);
  extrap->add_option("--input", extrap_opts.input, "Sweep CSV or JSON spanning several N");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kkent::kExitOk : kkent::kExitConfig;
  }

  kkent::Mode mode = kkent::Mode::point;
  const Overrides* opts = &point_opts;
  if (sweep->parsed()) {
    mode = kkent::Mode::sweep;
    opts = &sweep_opts;
  } else if (extrap->parsed()) {
    mode = kkent::Mode::extrapolate;
    opts = &extrap_opts;
  }

  kkent::RunConfig cfg;
  try {
    cfg = build_config(mode, *opts);
  } catch (const kkent::ConfigError& e) {
    std::cerr << "kkent: configuration error: " << e.what() << '\n';
    return kkent::kExitConfig;
  } catch (const kkent::InvalidArgument& e) {
    std::cerr << "kkent: configuration error: " << e.what() << '\n';
    return kkent::kExitConfig;
  } catch (const kkent::IoError& e) {
    std::cerr << "kkent: I/O error: " << e.what() << '\n';
    return kkent::kExitIo;
  }

  if (opts->max_sites > 0) {
    const double gib = static_cast<double>(kkent::estimate_memory_bytes(opts->max_sites)) /
                       (1024.0 * 1024.0 * 1024.0);
    std::cerr << "kkent: site cap raised to " << opts->max_sites << "; estimated peak memory "
              << std::fixed << std::setprecision(2) << gib << " GiB per worker at that size\n";
  }

  return kkent::run(cfg, std::cout, std::cerr);
}
