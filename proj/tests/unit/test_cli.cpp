#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <sstream>

#include "kkent/cli.hpp"
#include "kkent/error.hpp"
#include "kkent/io.hpp"

using namespace kkent;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

SweepRow sample_row(double ln) {
  SweepRow r;
  r.params.n_sites = 4;
  r.params.j_spin = 0.1;
  r.params.i_pseudo = -1.0 / 3.0;
  r.params.k_coupling = -1.0;
  r.params.field_spin = {0.25, FieldPattern::staggered};
  r.temperature = 0.05;
  r.log_negativity = ln;
  r.trace_norm = std::exp(ln);
  r.ground_energy = -2.718281828459045;
  r.ground_degeneracy = 3;
  r.wall_time_ms = 12.5;
  return r;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST(ParseConfig, MinimalPointGetsDefaults) {
  const RunConfig c = parse_config(R"({"mode": "point", "n_sites": 2, "k_coupling": -1, "temperature": 0.1})");
  EXPECT_EQ(c.mode, Mode::point);
  EXPECT_EQ(c.params.n_sites, 2);
  EXPECT_EQ(c.params.k_coupling, -1.0);
  EXPECT_EQ(c.params.j_spin, 0.0);
  EXPECT_EQ(c.params.i_pseudo, 0.0);
  EXPECT_EQ(c.params.field_spin.pattern, FieldPattern::off);
  EXPECT_EQ(c.params.field_pseudo.pattern, FieldPattern::off);
  EXPECT_EQ(c.temperature, 0.1);
  EXPECT_EQ(c.worker_budget, 1);
  EXPECT_EQ(c.output_format, OutputFormat::csv);
  EXPECT_FALSE(c.cache_dir.has_value());
}

TEST(ParseConfig, SweepWithReferenceTemperatures) {
  const RunConfig c = parse_config(R"({
    "mode": "sweep", "cut": "diagonal", "k_coupling": -1,
    "temperatures": [0.001, 0.05, 0.1, 0.15],
    "range": {"lo": -1, "hi": 1, "points": 41},
    "field_pseudo": {"pattern": "staggered", "magnitude": 0.5},
    "workers": 3, "format": "json", "observables": true, "cache_dir": "/tmp/x"})");
  EXPECT_EQ(c.mode, Mode::sweep);
  EXPECT_EQ(c.sweep.cut, Cut::diagonal);
  EXPECT_EQ(c.sweep.temperatures, kReferenceTemperatures);
  EXPECT_EQ(c.sweep.range.points, 41);
  EXPECT_EQ(c.sweep.n_sites_list, (std::vector<int>{6}));
  EXPECT_EQ(c.sweep.field_pseudo.pattern, FieldPattern::staggered);
  EXPECT_EQ(c.sweep.field_pseudo.magnitude, 0.5);
  EXPECT_EQ(c.worker_budget, 3);
  EXPECT_EQ(c.output_format, OutputFormat::json);
  EXPECT_TRUE(c.include_observables);
  EXPECT_EQ(*c.cache_dir, fs::path("/tmp/x"));
}

TEST(ParseConfig, ExplicitPoints) {
  const RunConfig c = parse_config(R"({"mode": "sweep", "cut": "explicit_list", "k_coupling": 1,
    "temperatures": [0], "points": [[0.5, -0.5], [1, 1]], "n_sites": [4, 5]})");
  ASSERT_EQ(c.sweep.explicit_points.size(), 2u);
  EXPECT_EQ(c.sweep.explicit_points[0], (std::pair<double, double>{0.5, -0.5}));
  EXPECT_EQ(c.sweep.n_sites_list, (std::vector<int>{4, 5}));
}

TEST(ParseConfig, UnknownKeyIsNamed) {
  const std::string msg =
      config_error(R"({"mode": "point", "n_sites": 2, "k_coupling": -1, "temperature": 0.1, "jj_spin": 1})");
  EXPECT_NE(msg.find("\"jj_spin\""), std::string::npos) << msg;
  EXPECT_NE(msg.find("unknown"), std::string::npos) << msg;
  const std::string nested = config_error(
      R"({"mode": "sweep", "k_coupling": 0, "temperatures": [0.1], "range": {"lo": 0, "step": 1}})");
  EXPECT_NE(nested.find("range.step"), std::string::npos) << nested;
}

TEST(ParseConfig, ConstraintViolationsNameTheKey) {
  EXPECT_NE(config_error(R"({"mode": "point", "n_sites": 2, "temperature": 0.1})").find("k_coupling"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"mode": "sweep", "k_coupling": 0})").find("temperatures"), std::string::npos);
  EXPECT_NE(config_error(R"({"mode": "sweep", "k_coupling": 0, "temperatures": [-1]})").find("temperatures"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"mode": "point", "n_sites": 2, "k_coupling": 0, "temperature": 0, "workers": 0})")
                .find("workers"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"mode": "point", "n_sites": 2, "k_coupling": 0, "temperature": 0,
                             "field_spin": {"pattern": "checker"}})")
                .find("field_spin.pattern"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"mode": "scan"})").find("mode"), std::string::npos);
  EXPECT_NE(config_error(R"({})").find("mode"), std::string::npos);
  EXPECT_NE(config_error("{not json").find("malformed"), std::string::npos);
  EXPECT_NE(config_error("[1, 2]").find("<root>"), std::string::npos);
}

TEST(WriteRows, EmptyListIsHeaderOnly) {
  EXPECT_EQ(format_csv({}, false), csv_header(false) + "\n");
  EXPECT_EQ(csv_header(false),
            "n_sites,j_spin,i_pseudo,k_coupling,field_s_mag,field_s_pattern,field_t_mag,"
            "field_t_pattern,temperature,log_negativity,trace_norm,ground_energy,ground_degeneracy,"
            "wall_time_ms,status");
  EXPECT_EQ(csv_header(true),
            "n_sites,j_spin,i_pseudo,k_coupling,field_s_mag,field_s_pattern,field_t_mag,"
            "field_t_pattern,temperature,log_negativity,trace_norm,ground_energy,ground_degeneracy,"
            "ss_bond_mean,tt_bond_mean,sstt_bond_mean,mag_s,mag_t,wall_time_ms,status");
}

TEST(WriteRows, DecoupledRowPrintsZero) {
  ModelParams p;
  p.n_sites = 2;
  p.j_spin = 1.0;
  const SweepRow row = evaluate_point(p, 0.1, false);
  const std::string csv = format_csv(std::span(&row, 1), false);
  const std::string body = csv.substr(csv.find('\n') + 1);
  // n_sites .. temperature are 9 columns; log_negativity is the 10th.
  std::size_t pos = 0;
  for (int k = 0; k < 9; ++k) pos = body.find(',', pos) + 1;
  EXPECT_EQ(body.substr(pos, body.find(',', pos) - pos), "0");
}

TEST(WriteRows, FormatRealIsShortestRoundTrip) {
  EXPECT_EQ(format_real(0.0), "0");
  EXPECT_EQ(format_real(0.1), "0.1");
  EXPECT_EQ(format_real(-1.0), "-1");
  EXPECT_EQ(format_real(std::nan("")), "nan");
  const double third = 1.0 / 3.0;
  EXPECT_EQ(std::stod(format_real(third)), third);
}

TEST(WriteRows, JsonRoundTripIsBitExact) {
  std::vector<SweepRow> rows = {sample_row(0.1234567890123456789), sample_row(0.0)};
  rows[1].observables = ObservableSummary{-0.123, 1.0 / 7.0, 0.0625, 1e-17, -0.5};
  rows[1].params.field_pseudo = {-0.75, FieldPattern::uniform};
  const auto back = parse_json_rows(format_json(rows, true, {"1.0.0", R"({"mode":"sweep"})", 3.5}));
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(back[k].params, rows[k].params);
    EXPECT_TRUE(same_bits(back[k].temperature, rows[k].temperature));
    EXPECT_TRUE(same_bits(back[k].log_negativity, rows[k].log_negativity));
    EXPECT_TRUE(same_bits(back[k].trace_norm, rows[k].trace_norm));
    EXPECT_TRUE(same_bits(back[k].ground_energy, rows[k].ground_energy));
    EXPECT_TRUE(same_bits(back[k].wall_time_ms, rows[k].wall_time_ms));
    EXPECT_EQ(back[k].ground_degeneracy, rows[k].ground_degeneracy);
    EXPECT_EQ(back[k].status, rows[k].status);
  }
  ASSERT_TRUE(back[1].observables.has_value());
  EXPECT_TRUE(same_bits(back[1].observables->tt_bond_mean, 1.0 / 7.0));
  EXPECT_TRUE(same_bits(back[1].observables->mag_s, 1e-17));
}

TEST(WriteRows, JsonCarriesMetadata) {
  const std::string text = format_json({}, false, {"9.9.9", R"({"mode":"point"})", 42.0});
  EXPECT_NE(text.find("\"tool_version\""), std::string::npos);
  EXPECT_NE(text.find("9.9.9"), std::string::npos);
  EXPECT_NE(text.find("\"total_wall_time_ms\""), std::string::npos);
  EXPECT_NE(text.find("\"rows\""), std::string::npos);
}

TEST(WriteRows, CsvRoundTripAndErrorRows) {
  std::vector<SweepRow> rows = {sample_row(0.5), sample_row(0.0)};
  rows[1].status = "error: bad, \"quoted\"\nthing";
  rows[1].log_negativity = std::nan("");
  const auto back = parse_csv_rows(format_csv(rows, false));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_TRUE(same_bits(back[0].log_negativity, 0.5));
  EXPECT_EQ(back[0].params, rows[0].params);
  EXPECT_FALSE(back[1].ok());
  EXPECT_TRUE(std::isnan(back[1].log_negativity));
  EXPECT_EQ(back[1].status.find('\n'), std::string::npos);
  EXPECT_THROW(parse_csv_rows("a,b,c\n1,2,3\n"), IoError);
}

TEST(WriteRows, UnwritablePathIsIoError) {
  EXPECT_THROW(write_rows({}, OutputFormat::csv, "/nonexistent-dir/out.csv", false), IoError);
}

TEST(Run, PointPrintsLogNegativity) {
  RunConfig c = parse_config(R"({"mode": "point", "n_sites": 2, "k_coupling": -1, "temperature": 0})");
  std::ostringstream out, err;
  EXPECT_EQ(run(c, out, err), kExitOk);
  EXPECT_EQ(out.str(), "0\n");
}

TEST(Run, ExitCodes) {
  std::ostringstream out, err;
  RunConfig big = parse_config(R"({"mode": "point", "n_sites": 9, "k_coupling": -1, "temperature": 0})");
  EXPECT_EQ(run(big, out, err), kExitConfig);
  EXPECT_NE(err.str().find("configuration error"), std::string::npos);

  RunConfig io = parse_config(
      R"({"mode": "point", "n_sites": 2, "k_coupling": -1, "temperature": 0, "output": "/nonexistent-dir/x.csv"})");
  EXPECT_EQ(run(io, out, err), kExitIo);

  RunConfig missing = parse_config(R"({"mode": "extrapolate", "input": "/nonexistent-dir/rows.csv"})");
  EXPECT_EQ(run(missing, out, err), kExitIo);
}

TEST(Run, PartialSweepHasDistinctExitCode) {
  TempDir tmp("kkent-cli-partial");
  const fs::path blocker = tmp.path / "file";
  write_text_file(blocker, "x");
  RunConfig c = parse_config(R"({"mode": "sweep", "k_coupling": -1, "temperatures": [0.1],
                                 "range": {"points": 2}, "n_sites": [2]})");
  c.cache_dir = blocker / "cache";
  c.output_path = tmp.path / "rows.csv";
  std::ostringstream out, err;
  EXPECT_EQ(run(c, out, err), kExitPartial);
  const auto rows = read_rows(c.output_path);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_FALSE(rows[0].ok());
}

TEST(Run, SweepThenExtrapolate) {
  TempDir tmp("kkent-cli-extrapolate");
  RunConfig sweep = parse_config(R"({"mode": "sweep", "cut": "explicit_list", "k_coupling": -1,
                                     "temperatures": [0.05, 0.5], "points": [[1, 1]],
                                     "n_sites": [2, 3, 4], "format": "json"})");
  sweep.output_path = tmp.path / "rows.json";
  std::ostringstream out, err;
  ASSERT_EQ(run(sweep, out, err), kExitOk) << err.str();
  const auto rows = read_rows(sweep.output_path);
  ASSERT_EQ(rows.size(), 6u);

  RunConfig ex = parse_config(R"({"mode": "extrapolate", "input": ")" + sweep.output_path.string() + "\"}");
  std::ostringstream fits;
  ASSERT_EQ(run(ex, fits, err), kExitOk);
  const std::string text = fits.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), extrapolation_csv_header());
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);

  std::vector<std::pair<int, double>> pts;
  for (const SweepRow& r : rows) {
    if (r.temperature == 0.05) pts.emplace_back(r.params.n_sites, r.log_negativity);
  }
  const std::string second = text.substr(text.find('\n') + 1);
  EXPECT_NE(second.find(format_real(extrapolate(pts).intercept)), std::string::npos);
  EXPECT_NE(second.find(",2 3 4,"), std::string::npos);
}

TEST(Run, MemoryEstimate) {
  EXPECT_EQ(estimate_memory_bytes(2), 5u * 16 * 16 * 8);
  EXPECT_EQ(estimate_memory_bytes(6), 5ull * 4096 * 4096 * 8);
}
