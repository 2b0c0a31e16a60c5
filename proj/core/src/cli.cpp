#include "kkent/cli.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

#include "kkent/error.hpp"
#include "kkent/version.hpp"

namespace kkent {

namespace {

using json = nlohmann::json;

// Strict accessor over one JSON object: every key must be consumed or declared.
class Document {
 public:
  Document(const json& obj, std::string prefix) : obj_(obj), prefix_(std::move(prefix)) {
    if (!obj_.is_object()) fail("", "an object");
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  const json& at(const std::string& key) {
    used_.insert(key);
    return obj_.at(key);
  }

  [[noreturn]] void fail(const std::string& key, const std::string& expected) const {
    const std::string name = key.empty() ? prefix_ : prefix_ + key;
    throw ConfigError("config key \"" + (name.empty() ? std::string("<root>") : name) +
                      "\": expected " + expected);
  }

  double real(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number()) fail(key, "a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(key, "a finite number");
    return x;
  }

  double real_or(const std::string& key, double fallback) { return has(key) ? real(key) : fallback; }

  int integer(const std::string& key, int lo, int hi) {
    const json& v = at(key);
    if (!v.is_number_integer() || v.get<long long>() < lo || v.get<long long>() > hi) {
      fail(key, "an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return v.get<int>();
  }

  bool boolean(const std::string& key) {
    const json& v = at(key);
    if (!v.is_boolean()) fail(key, "true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& key) {
    const json& v = at(key);
    if (!v.is_string()) fail(key, "a string");
    return v.get<std::string>();
  }

  template <typename Parse>
  auto enumeration(const std::string& key, const std::string& choices, Parse parse) {
    const std::string s = string(key);
    try {
      return parse(s);
    } catch (const InvalidArgument&) {
      fail(key, "one of " + choices + ", got \"" + s + "\"");
    }
  }

  void require(const std::string& key, const std::string& why) const {
    if (!has(key)) fail(key, why + " (missing)");
  }

  void reject_unknown() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!used_.contains(key)) {
        throw ConfigError("config key \"" + prefix_ + key + "\": unknown key");
      }
    }
  }

  const std::string& prefix() const { return prefix_; }

 private:
  const json& obj_;
  std::string prefix_;
  std::set<std::string> used_;
};

FieldSpec parse_field(Document& parent, const std::string& key) {
  if (!parent.has(key)) return {};
  Document doc(parent.at(key), parent.prefix() + key + ".");
  FieldSpec f;
  doc.require("pattern", "off|uniform|staggered");
  f.pattern = doc.enumeration("pattern", "off|uniform|staggered", parse_field_pattern);
  f.magnitude = doc.real_or("magnitude", 0.0);
  doc.reject_unknown();
  return f;
}

std::vector<double> parse_temperatures(Document& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_array() || v.empty()) doc.fail(key, "a non-empty list of temperatures >= 0");
  std::vector<double> out;
  for (const json& t : v) {
    if (!t.is_number() || !std::isfinite(t.get<double>()) || t.get<double>() < 0.0) {
      doc.fail(key, "a non-empty list of temperatures >= 0");
    }
    out.push_back(t.get<double>());
  }
  return out;
}

void parse_point(Document& doc, RunConfig& cfg) {
  doc.require("n_sites", "an integer chain length");
  doc.require("k_coupling", "a number");
  doc.require("temperature", "a temperature >= 0");
  cfg.params.n_sites = doc.integer("n_sites", 1, kAbsoluteMaxSites);
  cfg.params.j_spin = doc.real_or("j_spin", 0.0);
  cfg.params.i_pseudo = doc.real_or("i_pseudo", 0.0);
  cfg.params.k_coupling = doc.real("k_coupling");
  cfg.params.field_spin = parse_field(doc, "field_spin");
  cfg.params.field_pseudo = parse_field(doc, "field_pseudo");
  cfg.temperature = doc.real("temperature");
  if (cfg.temperature < 0.0) doc.fail("temperature", "a temperature >= 0");
}

void parse_sweep(Document& doc, RunConfig& cfg) {
  SweepSpec& s = cfg.sweep;
  doc.require("k_coupling", "a number");
  doc.require("temperatures", "a non-empty list of temperatures >= 0");
  s.k_coupling = doc.real("k_coupling");
  s.temperatures = parse_temperatures(doc, "temperatures");
  if (doc.has("cut")) {
    s.cut = doc.enumeration("cut", "diagonal|antidiagonal|explicit_list", parse_cut);
  }
  if (doc.has("range")) {
    Document r(doc.at("range"), "range.");
    s.range.lo = r.real_or("lo", s.range.lo);
    s.range.hi = r.real_or("hi", s.range.hi);
    if (r.has("points")) s.range.points = r.integer("points", 1, 1'000'000);
    r.reject_unknown();
    if (s.range.lo > s.range.hi) doc.fail("range", "lo <= hi");
  }
  if (doc.has("points")) {
    const json& pts = doc.at("points");
    const std::string what = "a non-empty list of [j_spin, i_pseudo] pairs";
    if (!pts.is_array() || pts.empty()) doc.fail("points", what);
    for (const json& p : pts) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        doc.fail("points", what);
      }
      s.explicit_points.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
  }
  if (s.cut == Cut::explicit_list && s.explicit_points.empty()) {
    doc.fail("points", "a list of [j_spin, i_pseudo] pairs when cut = explicit_list");
  }
  if (s.cut != Cut::explicit_list && !s.explicit_points.empty()) {
    doc.fail("points", "only to be given when cut = explicit_list");
  }
  if (doc.has("n_sites")) {
    const json& ns = doc.at("n_sites");
    const std::string what = "a non-empty list of integers in [1, " +
                             std::to_string(kAbsoluteMaxSites) + "]";
    if (!ns.is_array() || ns.empty()) doc.fail("n_sites", what);
    s.n_sites_list.clear();
    for (const json& n : ns) {
      if (!n.is_number_integer() || n.get<int>() < 1 || n.get<int>() > kAbsoluteMaxSites) {
        doc.fail("n_sites", what);
      }
      s.n_sites_list.push_back(n.get<int>());
    }
  }
  s.field_spin = parse_field(doc, "field_spin");
  s.field_pseudo = parse_field(doc, "field_pseudo");
}

OutputMetadata metadata_for(const RunConfig& cfg, double wall_ms) {
  return {std::string(kToolVersion), cfg.echo, wall_ms};
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output_path.empty()) {
    out << text;
  } else {
    write_text_file(cfg.output_path, text);
  }
}

int run_point(const RunConfig& cfg, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const SweepRow row = evaluate_point(cfg.params, cfg.temperature, cfg.include_observables, cfg.max_sites);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  out << format_real(row.log_negativity) << '\n';
  if (!cfg.output_path.empty()) {
    write_rows(std::span(&row, 1), cfg.output_format, cfg.output_path, cfg.include_observables,
               metadata_for(cfg, ms));
  }
  return kExitOk;
}

int run_sweep_mode(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  SweepSpec spec = cfg.sweep;
  spec.observables_enabled = cfg.include_observables;
  spec.max_sites = cfg.max_sites;
  SweepOptions options;
  options.worker_budget = cfg.worker_budget;
  if (cfg.cache_dir) options.cache_dir = *cfg.cache_dir;

  const std::vector<SweepRow> rows = run_sweep(spec, options);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  const std::string text = cfg.output_format == OutputFormat::csv
                               ? format_csv(rows, cfg.include_observables)
                               : format_json(rows, cfg.include_observables, metadata_for(cfg, ms));
  emit(cfg, text, out);

  std::size_t failed = 0;
  for (const SweepRow& r : rows) failed += r.ok() ? 0 : 1;
  if (failed > 0) {
    err << "kkent: " << failed << " of " << rows.size() << " rows failed\n";
    return kExitPartial;
  }
  return kExitOk;
}

int run_extrapolate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<SweepRow> rows = read_rows(cfg.input_path);
  const std::vector<ExtrapolationRow> fits = extrapolate_rows(rows);
  if (fits.empty()) err << "kkent: no group in " << cfg.input_path << " spans two chain lengths\n";
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  emit(cfg, cfg.output_format == OutputFormat::csv ? format_extrapolation_csv(fits)
                                                   : format_extrapolation_json(fits, metadata_for(cfg, ms)),
       out);
  return kExitOk;
}

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::point: return "point";
    case Mode::sweep: return "sweep";
    case Mode::extrapolate: return "extrapolate";
  }
  return "?";
}

Mode parse_mode(std::string_view name) {
  if (name == "point") return Mode::point;
  if (name == "sweep") return Mode::sweep;
  if (name == "extrapolate") return Mode::extrapolate;
  throw InvalidArgument("unknown mode '" + std::string(name) + "'");
}

RunConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed config document: ") + e.what());
  }

  Document doc(root, "");
  RunConfig cfg;
  doc.require("mode", "point|sweep|extrapolate");
  cfg.mode = doc.enumeration("mode", "point|sweep|extrapolate", parse_mode);

  if (doc.has("output")) cfg.output_path = doc.string("output");
  if (doc.has("format")) cfg.output_format = doc.enumeration("format", "csv|json", parse_output_format);
  if (doc.has("workers")) cfg.worker_budget = doc.integer("workers", 1, 4096);
  if (doc.has("observables")) cfg.include_observables = doc.boolean("observables");
  if (doc.has("cache_dir")) cfg.cache_dir = doc.string("cache_dir");
  if (doc.has("max_sites")) cfg.max_sites = doc.integer("max_sites", 1, kAbsoluteMaxSites);

  switch (cfg.mode) {
    case Mode::point: parse_point(doc, cfg); break;
    case Mode::sweep: parse_sweep(doc, cfg); break;
    case Mode::extrapolate:
      doc.require("input", "a path to a sweep CSV or JSON file");
      cfg.input_path = doc.string("input");
      break;
  }
  doc.reject_unknown();
  cfg.echo = root.dump();
  return cfg;
}

std::uint64_t estimate_memory_bytes(int n_sites) {
  const auto d = static_cast<std::uint64_t>(hilbert_dimension(n_sites));
  // Hamiltonian/eigenvectors, Gram check, density matrix, partial transpose
  // and the eigensolver workspace: about five dense d x d matrices.
  return 5 * d * d * sizeof(double);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.worker_budget < 1) throw ConfigError("workers must be >= 1");
    switch (config.mode) {
      case Mode::point:
        try {
          validate(config.params, config.max_sites);
        } catch (const std::exception& e) {
          throw ConfigError(e.what());
        }
        return run_point(config, out);
      case Mode::sweep: {
        SweepSpec spec = config.sweep;
        spec.max_sites = config.max_sites;
        try {
          validate(spec);
        } catch (const std::exception& e) {
          throw ConfigError(e.what());
        }
        return run_sweep_mode(config, out, err);
      }
      case Mode::extrapolate:
        return run_extrapolate(config, out, err);
    }
  } catch (const ConfigError& e) {
    err << "kkent: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "kkent: I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "kkent: error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace kkent
