#pragma once

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Minimal comma-separated reader/writer helpers. Fields are unquoted; leading
// and trailing whitespace (and a trailing '\r') are trimmed.
namespace fcut::csv {

std::vector<std::string> split(std::string_view line);

// Reads one line; returns nullopt at end of stream. Strips a UTF-8 BOM on the
// first line when `strip_bom` is set.
std::optional<std::string> next_line(std::istream& in, bool strip_bom = false);

// Strict numeric parse of a whole field.
std::optional<double> parse_double(std::string_view field);

// Shortest representation that round-trips through parse_double.
std::string format_number(double value);

std::string join(const std::vector<std::string>& fields);

}  // namespace fcut::csv
