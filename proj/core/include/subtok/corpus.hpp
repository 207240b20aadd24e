#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace subtok {

enum class UnicodeForm { kNfc, kNfkc, kNone };

std::string_view to_string(UnicodeForm form);
UnicodeForm parse_unicode_form(std::string_view name);

struct NormalizationConfig {
  UnicodeForm unicode_form = UnicodeForm::kNfc;
  bool lowercase = false;
  bool strip_punctuation = false;
  // Scalars removed when strip_punctuation is set. Left empty, every scalar
  // in a Unicode punctuation category (P*) is removed instead.
  std::set<char32_t> punctuation_set;
};

// Applies, in order: the Unicode normal form, lowercasing, punctuation
// removal, then the normal form again so the result is a fixed point.
// Throws Error(kDecode) with the byte offset on malformed UTF-8.
std::string normalize_text(std::string_view text, const NormalizationConfig& cfg);

struct RawCorpus {
  std::vector<std::string> lines;
  std::string source_id;
};

// Reads LF or CRLF text. CR characters and U+FEFF are dropped; a trailing
// newline does not produce an extra empty line.
RawCorpus load_corpus(const std::filesystem::path& path, const NormalizationConfig& cfg);
RawCorpus load_corpus(std::istream& in, const NormalizationConfig& cfg,
                      std::string source_id);

// Strips CR and U+FEFF from a single line read by getline. Validates UTF-8.
std::string clean_line(std::string_view line);

// Unique whitespace-free words with exact occurrence counts. Immutable once
// built; iteration order is code-point order of the words.
class WordFrequencyTable {
 public:
  using Entries = std::map<std::string, std::uint64_t, std::less<>>;

  WordFrequencyTable() = default;

  // Validates every word (non-empty, no whitespace, valid UTF-8) and count.
  static WordFrequencyTable from_counts(Entries counts, std::string source_id = {});

  const Entries& entries() const noexcept { return entries_; }
  std::uint64_t total_tokens() const noexcept { return total_tokens_; }
  const std::string& source_id() const noexcept { return source_id_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::uint64_t count(std::string_view word) const;

 private:
  Entries entries_;
  std::uint64_t total_tokens_ = 0;
  std::string source_id_;
};

// Throws Error(kEmptyCorpus) if the corpus holds no words.
WordFrequencyTable build_word_table(const RawCorpus& corpus);

}  // namespace subtok
