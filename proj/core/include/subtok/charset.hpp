#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "subtok/common.hpp"
#include "subtok/corpus.hpp"
#include "subtok/lexicon.hpp"

namespace subtok {

// Splits a non-empty, whitespace-free word into character units. The units
// concatenate back to `word` exactly.
std::vector<std::string> segment_word(std::string_view word, SegmentationMode mode);

// Number of character units in `text` (0 for the empty string).
std::size_t unit_length(std::string_view text, SegmentationMode mode);

struct CharInventory {
  std::vector<std::string> units;  // code-point order, no duplicates
  SegmentationMode mode = SegmentationMode::kScalar;
  std::map<std::string, std::uint64_t, std::less<>> counts;  // weighted by word count

  bool contains(std::string_view unit) const { return counts.contains(unit); }
};

CharInventory extract_charset(const WordFrequencyTable& table, SegmentationMode mode);

// Character baseline tokenizer: one token per unit, unseen units map to unk.
class CharModel {
 public:
  CharModel(std::vector<std::string> units, SegmentationMode mode,
            std::string unk_token = std::string(kDefaultUnkToken));

  const std::vector<std::string>& vocab() const noexcept { return units_; }
  SegmentationMode mode() const noexcept { return mode_; }
  const std::string& unk_token() const noexcept { return unk_token_; }
  bool contains(std::string_view unit) const;

  std::vector<std::string> encode_word(std::string_view word) const;

  bool operator==(const CharModel&) const = default;

 private:
  std::vector<std::string> units_;  // sorted
  SegmentationMode mode_;
  std::string unk_token_;
};

CharModel train_char(const WordFrequencyTable& table, SegmentationMode mode);

Lexicon build_char_lexicon(const WordFrequencyTable& table, SegmentationMode mode);

}  // namespace subtok
