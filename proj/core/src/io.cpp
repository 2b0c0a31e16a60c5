#include "kkent/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kkent/error.hpp"

namespace kkent {

namespace {

using json = nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::string>& base_columns() {
  static const std::vector<std::string> cols = {
      "n_sites",       "j_spin",         "i_pseudo",      "k_coupling",      "field_s_mag",
      "field_s_pattern", "field_t_mag",  "field_t_pattern", "temperature",   "log_negativity",
      "trace_norm",    "ground_energy",  "ground_degeneracy"};
  return cols;
}

const std::vector<std::string>& observable_columns() {
  static const std::vector<std::string> cols = {"ss_bond_mean", "tt_bond_mean", "sstt_bond_mean",
                                                "mag_s", "mag_t"};
  return cols;
}

std::vector<std::string> columns(bool with_observables) {
  std::vector<std::string> cols = base_columns();
  if (with_observables) cols.insert(cols.end(), observable_columns().begin(), observable_columns().end());
  cols.emplace_back("wall_time_ms");
  cols.emplace_back("status");
  return cols;
}

// Status text must stay a single CSV field.
std::string sanitize_status(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c == ',' || c == '"') c = ';';
    if (c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_real(std::string_view s, std::string_view column) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw IoError("column '" + std::string(column) + "': cannot parse '" + std::string(s) +
                  "' as a number");
  }
  return v;
}

int parse_int(std::string_view s, std::string_view column) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw IoError("column '" + std::string(column) + "': cannot parse '" + std::string(s) +
                  "' as an integer");
  }
  return v;
}

FieldPattern parse_pattern_field(std::string_view s) {
  try {
    return parse_field_pattern(s);
  } catch (const InvalidArgument& e) {
    throw IoError(e.what());
  }
}

json real_to_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double real_from_json(const json& j) { return j.is_null() ? kNaN : j.get<double>(); }

json row_to_json(const SweepRow& r, bool with_observables) {
  json o;
  o["n_sites"] = r.params.n_sites;
  o["j_spin"] = r.params.j_spin;
  o["i_pseudo"] = r.params.i_pseudo;
  o["k_coupling"] = r.params.k_coupling;
  o["field_s_mag"] = r.params.field_spin.magnitude;
  o["field_s_pattern"] = to_string(r.params.field_spin.pattern);
  o["field_t_mag"] = r.params.field_pseudo.magnitude;
  o["field_t_pattern"] = to_string(r.params.field_pseudo.pattern);
  o["temperature"] = r.temperature;
  o["log_negativity"] = real_to_json(r.log_negativity);
  o["trace_norm"] = real_to_json(r.trace_norm);
  o["ground_energy"] = real_to_json(r.ground_energy);
  o["ground_degeneracy"] = r.ground_degeneracy;
  if (with_observables) {
    const ObservableSummary s = r.observables.value_or(
        ObservableSummary{kNaN, kNaN, kNaN, kNaN, kNaN});
    o["ss_bond_mean"] = real_to_json(s.ss_bond_mean);
    o["tt_bond_mean"] = real_to_json(s.tt_bond_mean);
    o["sstt_bond_mean"] = real_to_json(s.sstt_bond_mean);
    o["mag_s"] = real_to_json(s.mag_s);
    o["mag_t"] = real_to_json(s.mag_t);
  }
  o["wall_time_ms"] = r.wall_time_ms;
  o["status"] = r.status;
  return o;
}

json metadata_to_json(const OutputMetadata& m) {
  json meta;
  meta["tool_version"] = m.tool_version;
  meta["spec"] = m.spec_echo_json.empty() ? json(nullptr) : json::parse(m.spec_echo_json);
  meta["total_wall_time_ms"] = m.total_wall_time_ms;
  return meta;
}

}  // namespace

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::csv ? "csv" : "json";
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw InvalidArgument("unknown output format '" + std::string(name) + "' (expected csv|json)");
}

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

std::string csv_header(bool with_observables) {
  std::string out;
  for (const auto& c : columns(with_observables)) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

std::string format_csv(std::span<const SweepRow> rows, bool with_observables) {
  std::string out = csv_header(with_observables) + '\n';
  for (const SweepRow& r : rows) {
    std::vector<std::string> f = {
        std::to_string(r.params.n_sites),
        format_real(r.params.j_spin),
        format_real(r.params.i_pseudo),
        format_real(r.params.k_coupling),
        format_real(r.params.field_spin.magnitude),
        std::string(to_string(r.params.field_spin.pattern)),
        format_real(r.params.field_pseudo.magnitude),
        std::string(to_string(r.params.field_pseudo.pattern)),
        format_real(r.temperature),
        format_real(r.log_negativity),
        format_real(r.trace_norm),
        format_real(r.ground_energy),
        std::to_string(r.ground_degeneracy)};
    if (with_observables) {
      if (r.observables) {
        const ObservableSummary& s = *r.observables;
        for (double v : {s.ss_bond_mean, s.tt_bond_mean, s.sstt_bond_mean, s.mag_s, s.mag_t}) {
          f.push_back(format_real(v));
        }
      } else {
        f.insert(f.end(), observable_columns().size(), "nan");
      }
    }
    f.push_back(format_real(r.wall_time_ms));
    f.push_back(sanitize_status(r.status));
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i > 0) out += ',';
      out += f[i];
    }
    out += '\n';
  }
  return out;
}

std::string format_json(std::span<const SweepRow> rows, bool with_observables,
                        const OutputMetadata& metadata) {
  json doc;
  doc["metadata"] = metadata_to_json(metadata);
  doc["rows"] = json::array();
  for (const SweepRow& r : rows) doc["rows"].push_back(row_to_json(r, with_observables));
  return doc.dump(2) + '\n';
}

void write_rows(std::span<const SweepRow> rows, OutputFormat format,
                const std::filesystem::path& path, bool with_observables,
                const OutputMetadata& metadata) {
  write_text_file(path, format == OutputFormat::csv ? format_csv(rows, with_observables)
                                                    : format_json(rows, with_observables, metadata));
}

std::vector<SweepRow> parse_csv_rows(std::string_view text) {
  std::vector<std::string_view> lines = split(text, '\n');
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  for (auto& l : lines) {
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
  }
  if (lines.empty()) throw IoError("CSV input is empty (no header)");

  bool with_observables = false;
  if (lines[0] == csv_header(true)) {
    with_observables = true;
  } else if (lines[0] != csv_header(false)) {
    throw IoError("CSV header does not match the sweep column contract");
  }
  const std::vector<std::string> cols = columns(with_observables);

  std::vector<SweepRow> rows;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    const auto f = split(lines[ln], ',');
    if (f.size() != cols.size()) {
      throw IoError("CSV line " + std::to_string(ln + 1) + ": expected " +
                    std::to_string(cols.size()) + " fields, got " + std::to_string(f.size()));
    }
    SweepRow r;
    std::size_t k = 0;
    r.params.n_sites = parse_int(f[k++], "n_sites");
    r.params.j_spin = parse_real(f[k++], "j_spin");
    r.params.i_pseudo = parse_real(f[k++], "i_pseudo");
    r.params.k_coupling = parse_real(f[k++], "k_coupling");
    r.params.field_spin.magnitude = parse_real(f[k++], "field_s_mag");
    r.params.field_spin.pattern = parse_pattern_field(f[k++]);
    r.params.field_pseudo.magnitude = parse_real(f[k++], "field_t_mag");
    r.params.field_pseudo.pattern = parse_pattern_field(f[k++]);
    r.temperature = parse_real(f[k++], "temperature");
    r.log_negativity = parse_real(f[k++], "log_negativity");
    r.trace_norm = parse_real(f[k++], "trace_norm");
    r.ground_energy = parse_real(f[k++], "ground_energy");
    r.ground_degeneracy = parse_int(f[k++], "ground_degeneracy");
    if (with_observables) {
      ObservableSummary s;
      s.ss_bond_mean = parse_real(f[k++], "ss_bond_mean");
      s.tt_bond_mean = parse_real(f[k++], "tt_bond_mean");
      s.sstt_bond_mean = parse_real(f[k++], "sstt_bond_mean");
      s.mag_s = parse_real(f[k++], "mag_s");
      s.mag_t = parse_real(f[k++], "mag_t");
      r.observables = s;
    }
    r.wall_time_ms = parse_real(f[k++], "wall_time_ms");
    r.status = std::string(f[k++]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<SweepRow> parse_json_rows(std::string_view text) {
  try {
    const json doc = json::parse(text);
    std::vector<SweepRow> rows;
    for (const json& o : doc.at("rows")) {
      SweepRow r;
      r.params.n_sites = o.at("n_sites").get<int>();
      r.params.j_spin = o.at("j_spin").get<double>();
      r.params.i_pseudo = o.at("i_pseudo").get<double>();
      r.params.k_coupling = o.at("k_coupling").get<double>();
      r.params.field_spin.magnitude = o.at("field_s_mag").get<double>();
      r.params.field_spin.pattern = parse_pattern_field(o.at("field_s_pattern").get<std::string>());
      r.params.field_pseudo.magnitude = o.at("field_t_mag").get<double>();
      r.params.field_pseudo.pattern = parse_pattern_field(o.at("field_t_pattern").get<std::string>());
      r.temperature = o.at("temperature").get<double>();
      r.log_negativity = real_from_json(o.at("log_negativity"));
      r.trace_norm = real_from_json(o.at("trace_norm"));
      r.ground_energy = real_from_json(o.at("ground_energy"));
      r.ground_degeneracy = o.at("ground_degeneracy").get<int>();
      if (o.contains("ss_bond_mean")) {
        ObservableSummary s;
        s.ss_bond_mean = real_from_json(o.at("ss_bond_mean"));
        s.tt_bond_mean = real_from_json(o.at("tt_bond_mean"));
        s.sstt_bond_mean = real_from_json(o.at("sstt_bond_mean"));
        s.mag_s = real_from_json(o.at("mag_s"));
        s.mag_t = real_from_json(o.at("mag_t"));
        r.observables = s;
      }
      r.wall_time_ms = o.at("wall_time_ms").get<double>();
      r.status = o.at("status").get<std::string>();
      rows.push_back(std::move(r));
    }
    return rows;
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed JSON rows: ") + e.what());
  }
}

std::vector<SweepRow> read_rows(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  if (path.extension() == ".json") return parse_json_rows(text);
  return parse_csv_rows(text);
}

std::string extrapolation_csv_header() {
  return "j_spin,i_pseudo,k_coupling,field_s_mag,field_s_pattern,field_t_mag,field_t_pattern,"
         "temperature,sizes,intercept,slope,residual,n_points";
}

std::string format_extrapolation_csv(std::span<const ExtrapolationRow> rows) {
  std::ostringstream out;
  out << extrapolation_csv_header() << '\n';
  for (const ExtrapolationRow& r : rows) {
    std::string sizes;
    for (int n : r.sizes) {
      if (!sizes.empty()) sizes += ' ';
      sizes += std::to_string(n);
    }
    out << format_real(r.params.j_spin) << ',' << format_real(r.params.i_pseudo) << ','
        << format_real(r.params.k_coupling) << ',' << format_real(r.params.field_spin.magnitude)
        << ',' << to_string(r.params.field_spin.pattern) << ','
        << format_real(r.params.field_pseudo.magnitude) << ','
        << to_string(r.params.field_pseudo.pattern) << ',' << format_real(r.temperature) << ','
        << sizes << ',' << format_real(r.result.intercept) << ',' << format_real(r.result.slope)
        << ',' << format_real(r.result.residual) << ',' << r.result.n_points << '\n';
  }
  return out.str();
}

std::string format_extrapolation_json(std::span<const ExtrapolationRow> rows,
                                      const OutputMetadata& metadata) {
  json doc;
  doc["metadata"] = metadata_to_json(metadata);
  doc["rows"] = json::array();
  for (const ExtrapolationRow& r : rows) {
    json o;
    o["j_spin"] = r.params.j_spin;
    o["i_pseudo"] = r.params.i_pseudo;
    o["k_coupling"] = r.params.k_coupling;
    o["field_s_mag"] = r.params.field_spin.magnitude;
    o["field_s_pattern"] = to_string(r.params.field_spin.pattern);
    o["field_t_mag"] = r.params.field_pseudo.magnitude;
    o["field_t_pattern"] = to_string(r.params.field_pseudo.pattern);
    o["temperature"] = r.temperature;
    o["sizes"] = r.sizes;
    o["intercept"] = r.result.intercept;
    o["slope"] = r.result.slope;
    o["residual"] = r.result.residual;
    o["n_points"] = r.result.n_points;
    doc["rows"].push_back(std::move(o));
  }
  return doc.dump(2) + '\n';
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace kkent
