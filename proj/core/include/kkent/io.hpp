#ifndef KKENT_IO_HPP
#define KKENT_IO_HPP

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kkent/sweep.hpp"

namespace kkent {

enum class OutputFormat { csv, json };

std::string_view to_string(OutputFormat format);
OutputFormat parse_output_format(std::string_view name);

// Shortest decimal that parses back to the same double; "nan" for NaN.
std::string format_real(double value);

// Column contract shared with the plotting scripts. Stable within a major version.
std::string csv_header(bool with_observables);
std::string format_csv(std::span<const SweepRow> rows, bool with_observables);

struct OutputMetadata {
  std::string tool_version;
  std::string spec_echo_json;  // echoed verbatim into the JSON metadata; may be empty
  double total_wall_time_ms = 0.0;
};

std::string format_json(std::span<const SweepRow> rows, bool with_observables,
                        const OutputMetadata& metadata);

// Whole-file write; throws IoError.
void write_rows(std::span<const SweepRow> rows, OutputFormat format,
                const std::filesystem::path& path, bool with_observables,
                const OutputMetadata& metadata = {});

// Parsers for our own output; malformed input throws IoError.
std::vector<SweepRow> parse_csv_rows(std::string_view text);
std::vector<SweepRow> parse_json_rows(std::string_view text);
std::vector<SweepRow> read_rows(const std::filesystem::path& path);

std::string extrapolation_csv_header();
std::string format_extrapolation_csv(std::span<const ExtrapolationRow> rows);
std::string format_extrapolation_json(std::span<const ExtrapolationRow> rows,
                                      const OutputMetadata& metadata);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace kkent

#endif  // KKENT_IO_HPP
