#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hhelm {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);
void append_double(std::string& out, double v);
std::optional<double> parse_double(std::string_view text);

/// Plain comma split; the formats written here never quote fields.
std::vector<std::string_view> split_fields(std::string_view line);

/// Writes to a sibling temp file and renames it over the target.
void write_file_atomic(const std::string& path, std::string_view content);
std::string read_file(const std::string& path);

/// Splits on '\n', dropping a trailing '\r' from each line.
std::vector<std::string_view> split_lines(std::string_view text);

}  // namespace hhelm
