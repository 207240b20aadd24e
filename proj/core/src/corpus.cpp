#include "subtok/corpus.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <fstream>
#include <istream>

#include "subtok/error.hpp"
#include "subtok/utf8.hpp"

namespace subtok {
namespace {

const icu::Normalizer2* normalizer_for(UnicodeForm form) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = nullptr;
  switch (form) {
    case UnicodeForm::kNfc: norm = icu::Normalizer2::getNFCInstance(status); break;
    case UnicodeForm::kNfkc: norm = icu::Normalizer2::getNFKCInstance(status); break;
    case UnicodeForm::kNone: return nullptr;
  }
  if (U_FAILURE(status)) {
    throw Error(ErrorCode::kIo, std::string("ICU normalizer unavailable: ") +
                                    u_errorName(status));
  }
  return norm;
}

icu::UnicodeString apply_form(const icu::Normalizer2* norm, const icu::UnicodeString& s) {
  if (norm == nullptr) return s;
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = norm->normalize(s, status);
  if (U_FAILURE(status)) {
    throw Error(ErrorCode::kDecode, std::string("normalization failed: ") +
                                        u_errorName(status));
  }
  return out;
}

bool is_punctuation(UChar32 c, const NormalizationConfig& cfg) {
  if (cfg.punctuation_set.empty()) return u_ispunct(c);
  return cfg.punctuation_set.contains(static_cast<char32_t>(c));
}

constexpr std::string_view kBom = "\xEF\xBB\xBF";

}  // namespace

std::string_view to_string(UnicodeForm form) {
  switch (form) {
    case UnicodeForm::kNfc: return "nfc";
    case UnicodeForm::kNfkc: return "nfkc";
    case UnicodeForm::kNone: return "none";
  }
  return "none";
}

UnicodeForm parse_unicode_form(std::string_view name) {
  if (name == "nfc") return UnicodeForm::kNfc;
  if (name == "nfkc") return UnicodeForm::kNfkc;
  if (name == "none") return UnicodeForm::kNone;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown normalization form '" + std::string(name) + "'");
}

std::string normalize_text(std::string_view text, const NormalizationConfig& cfg) {
  utf8::validate(text);
  const icu::Normalizer2* norm = normalizer_for(cfg.unicode_form);
  icu::UnicodeString s = apply_form(
      norm, icu::UnicodeString::fromUTF8(
                icu::StringPiece(text.data(), static_cast<int32_t>(text.size()))));
  if (cfg.lowercase) s.toLower(icu::Locale::getRoot());
  if (cfg.strip_punctuation) {
    icu::UnicodeString kept;
    for (int32_t i = 0; i < s.length();) {
      const UChar32 c = s.char32At(i);
      i += U16_LENGTH(c);
      if (!is_punctuation(c, cfg)) kept.append(c);
    }
    s = std::move(kept);
  }
  if (cfg.lowercase || cfg.strip_punctuation) s = apply_form(norm, s);
  std::string out;
  s.toUTF8String(out);
  return out;
}

std::string clean_line(std::string_view line) {
  utf8::validate(line);
  std::string out;
  out.reserve(line.size());
  for (std::size_t i = 0; i < line.size();) {
    if (line[i] == '\r') {
      ++i;
    } else if (line.substr(i, kBom.size()) == kBom) {
      i += kBom.size();
    } else {
      out.push_back(line[i++]);
    }
  }
  return out;
}

RawCorpus load_corpus(std::istream& in, const NormalizationConfig& cfg,
                      std::string source_id) {
  RawCorpus corpus;
  corpus.source_id = std::move(source_id);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    try {
      corpus.lines.push_back(normalize_text(clean_line(line), cfg));
    } catch (const Error& e) {
      throw Error(e.code(), corpus.source_id + ":" + std::to_string(line_no) + ": " +
                                e.detail());
    }
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed: " + corpus.source_id);
  return corpus;
}

RawCorpus load_corpus(const std::filesystem::path& path, const NormalizationConfig& cfg) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return load_corpus(in, cfg, path.string());
}

WordFrequencyTable WordFrequencyTable::from_counts(Entries counts, std::string source_id) {
  WordFrequencyTable table;
  for (const auto& [word, count] : counts) {
    if (word.empty()) throw Error(ErrorCode::kInvalidArgument, "empty word in table");
    if (utf8::contains_whitespace(word)) {
      throw Error(ErrorCode::kInvalidArgument, "word contains whitespace: '" + word + "'");
    }
    if (count == 0) {
      throw Error(ErrorCode::kInvalidArgument, "zero count for word '" + word + "'");
    }
    table.total_tokens_ += count;
  }
  table.entries_ = std::move(counts);
  table.source_id_ = std::move(source_id);
  return table;
}

std::uint64_t WordFrequencyTable::count(std::string_view word) const {
  auto it = entries_.find(word);
  return it == entries_.end() ? 0 : it->second;
}

WordFrequencyTable build_word_table(const RawCorpus& corpus) {
  WordFrequencyTable::Entries counts;
  for (const auto& line : corpus.lines) {
    for (std::string_view word : utf8::split_whitespace(line)) {
      auto it = counts.find(word);
      if (it == counts.end()) {
        counts.emplace(std::string(word), 1);
      } else {
        ++it->second;
      }
    }
  }
  if (counts.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "no words in corpus '" + corpus.source_id + "'");
  }
  return WordFrequencyTable::from_counts(std::move(counts), corpus.source_id);
}

}  // namespace subtok
