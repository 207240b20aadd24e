#include "tsv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>

#include "subtok/error.hpp"

namespace subtok::tsv {

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed");
  return lines;
}

std::size_t parse_header(const std::vector<std::string>& lines,
                         std::vector<HeaderField>& fields) {
  std::set<std::string, std::less<>> seen;
  std::size_t i = 0;
  for (; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (!line.starts_with(kHeaderPrefix)) break;
    line.remove_prefix(kHeaderPrefix.size());
    const auto space = line.find(' ');
    if (space == std::string_view::npos || space == 0) fail(i + 1, "malformed header line");
    std::string key(line.substr(0, space));
    if (!seen.insert(key).second) fail(i + 1, "duplicate header key '" + key + "'");
    fields.push_back({std::move(key), std::string(line.substr(space + 1)), i + 1});
  }
  return i;
}

void write_header_line(std::ostream& out, std::string_view key, std::string_view value) {
  out << kHeaderPrefix << key << ' ' << value << '\n';
}

void fail(std::size_t line_no, const std::string& message) {
  throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": " + message);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

double parse_double(std::string_view text, std::size_t line_no) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() ||
      !std::isfinite(value)) {
    fail(line_no, "malformed number '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t parse_uint(std::string_view text, std::size_t line_no) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    fail(line_no, "malformed integer '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace subtok::tsv
