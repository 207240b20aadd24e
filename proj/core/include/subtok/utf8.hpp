#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace subtok::utf8 {

// Byte offset of the first malformed sequence, or nullopt if `text` is valid.
std::optional<std::size_t> find_invalid(std::string_view text);

// Throws Error(kDecode) naming the byte offset of the first malformed byte.
void validate(std::string_view text);

// Decodes valid UTF-8. Behavior on malformed input is to throw.
std::vector<char32_t> decode(std::string_view text);

void append(std::string& out, char32_t scalar);

bool is_whitespace(char32_t scalar);

// Splits on runs of Unicode White_Space; never yields empty pieces.
std::vector<std::string_view> split_whitespace(std::string_view text);

bool contains_whitespace(std::string_view text);

}  // namespace subtok::utf8
