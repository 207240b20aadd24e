#include "subtok/charset.hpp"

#include <unicode/brkiter.h>
#include <unicode/utext.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <memory>

#include "subtok/error.hpp"
#include "subtok/utf8.hpp"

namespace subtok {
namespace {

icu::BreakIterator& grapheme_iterator() {
  thread_local std::unique_ptr<icu::BreakIterator> iter;
  if (!iter) {
    UErrorCode status = U_ZERO_ERROR;
    iter.reset(icu::BreakIterator::createCharacterInstance(icu::Locale::getRoot(), status));
    if (U_FAILURE(status) || !iter) {
      throw Error(ErrorCode::kIo, std::string("ICU grapheme iterator unavailable: ") +
                                      u_errorName(status));
    }
  }
  return *iter;
}

// Assumes valid UTF-8.
template <typename Emit>
void for_each_unit(std::string_view text, SegmentationMode mode, Emit&& emit) {
  if (text.empty()) return;
  if (mode == SegmentationMode::kScalar) {
    const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
    const auto length = static_cast<int32_t>(text.size());
    int32_t i = 0;
    while (i < length) {
      const int32_t start = i;
      U8_FWD_1(bytes, i, length);
      emit(text.substr(start, i - start));
    }
    return;
  }
  UErrorCode status = U_ZERO_ERROR;
  UText* ut = utext_openUTF8(nullptr, text.data(), static_cast<int64_t>(text.size()), &status);
  icu::BreakIterator& iter = grapheme_iterator();
  iter.setText(ut, status);
  if (U_FAILURE(status)) {
    utext_close(ut);
    throw Error(ErrorCode::kDecode, std::string("grapheme segmentation failed: ") +
                                        u_errorName(status));
  }
  int32_t start = iter.first();
  for (int32_t end = iter.next(); end != icu::BreakIterator::DONE; start = end, end = iter.next()) {
    emit(text.substr(start, end - start));
  }
  utext_close(ut);
}

}  // namespace

std::vector<std::string> segment_word(std::string_view word, SegmentationMode mode) {
  if (word.empty()) throw Error(ErrorCode::kInvalidArgument, "cannot segment an empty word");
  if (utf8::contains_whitespace(word)) {
    throw Error(ErrorCode::kInvalidArgument,
                "word contains whitespace: '" + std::string(word) + "'");
  }
  std::vector<std::string> units;
  for_each_unit(word, mode, [&](std::string_view unit) { units.emplace_back(unit); });
  return units;
}

std::size_t unit_length(std::string_view text, SegmentationMode mode) {
  utf8::validate(text);
  std::size_t n = 0;
  for_each_unit(text, mode, [&](std::string_view) { ++n; });
  return n;
}

CharInventory extract_charset(const WordFrequencyTable& table, SegmentationMode mode) {
  if (table.empty()) throw Error(ErrorCode::kEmptyCorpus, "empty word table");
  CharInventory inventory;
  inventory.mode = mode;
  for (const auto& [word, count] : table.entries()) {
    for (auto& unit : segment_word(word, mode)) inventory.counts[std::move(unit)] += count;
  }
  inventory.units.reserve(inventory.counts.size());
  for (const auto& [unit, count] : inventory.counts) inventory.units.push_back(unit);
  return inventory;
}

CharModel::CharModel(std::vector<std::string> units, SegmentationMode mode,
                     std::string unk_token)
    : units_(std::move(units)), mode_(mode), unk_token_(std::move(unk_token)) {
  std::sort(units_.begin(), units_.end());
  if (std::adjacent_find(units_.begin(), units_.end()) != units_.end()) {
    throw Error(ErrorCode::kConsistency, "duplicate character unit in vocabulary");
  }
  for (const auto& unit : units_) {
    if (unit_length(unit, mode_) != 1) {
      throw Error(ErrorCode::kConsistency, "'" + unit + "' is not a single character unit");
    }
  }
}

bool CharModel::contains(std::string_view unit) const {
  return std::binary_search(units_.begin(), units_.end(), unit);
}

std::vector<std::string> CharModel::encode_word(std::string_view word) const {
  auto units = segment_word(word, mode_);
  for (auto& unit : units) {
    if (!contains(unit)) unit = unk_token_;
  }
  return units;
}

CharModel train_char(const WordFrequencyTable& table, SegmentationMode mode) {
  return CharModel(extract_charset(table, mode).units, mode);
}

Lexicon build_char_lexicon(const WordFrequencyTable& table, SegmentationMode mode) {
  if (table.empty()) throw Error(ErrorCode::kEmptyCorpus, "empty word table");
  Lexicon lexicon;
  lexicon.model_kind = ModelKind::kChar;
  lexicon.mode = mode;
  for (const auto& [word, count] : table.entries()) {
    lexicon.entries.emplace(word, segment_word(word, mode));
  }
  return lexicon;
}

}  // namespace subtok
