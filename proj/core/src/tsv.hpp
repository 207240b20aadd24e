#pragma once

// Shared helpers for the "#: key value" headed TSV formats.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace subtok::tsv {

inline constexpr std::string_view kHeaderPrefix = "#: ";

struct HeaderField {
  std::string key;
  std::string value;
  std::size_t line_no = 0;
};

// Whole stream as lines; a trailing newline adds no empty line and a CR
// before LF is dropped.
std::vector<std::string> read_lines(std::istream& in);

// Consumes leading header lines. Returns the index of the first data line.
// Duplicate keys are a parse error.
std::size_t parse_header(const std::vector<std::string>& lines,
                         std::vector<HeaderField>& fields);

void write_header_line(std::ostream& out, std::string_view key, std::string_view value);

[[noreturn]] void fail(std::size_t line_no, const std::string& message);

std::vector<std::string_view> split(std::string_view text, char sep);

std::string format_double(double value);
double parse_double(std::string_view text, std::size_t line_no);
std::uint64_t parse_uint(std::string_view text, std::size_t line_no);

}  // namespace subtok::tsv
