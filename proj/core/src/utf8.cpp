#include "subtok/utf8.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <cstdint>

#include "subtok/error.hpp"

namespace subtok::utf8 {

std::optional<std::size_t> find_invalid(std::string_view text) {
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) return static_cast<std::size_t>(start);
  }
  return std::nullopt;
}

void validate(std::string_view text) {
  if (auto offset = find_invalid(text)) {
    throw Error(ErrorCode::kDecode,
                "invalid UTF-8 at byte offset " + std::to_string(*offset));
  }
}

std::vector<char32_t> decode(std::string_view text) {
  validate(text);
  std::vector<char32_t> out;
  out.reserve(text.size());
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

void append(std::string& out, char32_t scalar) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t n = 0;
  UBool error = false;
  U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(scalar), error);
  if (error) {
    throw Error(ErrorCode::kInvalidArgument, "not a Unicode scalar value");
  }
  out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
}

bool is_whitespace(char32_t scalar) {
  return u_isUWhiteSpace(static_cast<UChar32>(scalar));
}

std::vector<std::string_view> split_whitespace(std::string_view text) {
  validate(text);
  std::vector<std::string_view> pieces;
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  int32_t word_start = -1;
  while (i < length) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (u_isUWhiteSpace(c)) {
      if (word_start >= 0) {
        pieces.push_back(text.substr(word_start, start - word_start));
        word_start = -1;
      }
    } else if (word_start < 0) {
      word_start = start;
    }
  }
  if (word_start >= 0) pieces.push_back(text.substr(word_start));
  return pieces;
}

bool contains_whitespace(std::string_view text) {
  for (char32_t c : decode(text)) {
    if (is_whitespace(c)) return true;
  }
  return false;
}

}  // namespace subtok::utf8
