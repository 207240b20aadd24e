#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "subtok/corpus.hpp"
#include "subtok/error.hpp"
#include "unit/test_util.hpp"

namespace subtok {
namespace {

using testing::code_of;

NormalizationConfig defaults() { return {}; }

TEST(NormalizeText, AsciiIsUnchanged) { EXPECT_EQ(normalize_text("abc", defaults()), "abc"); }

TEST(NormalizeText, LowercaseAndStripListedPunctuation) {
  NormalizationConfig cfg;
  cfg.lowercase = true;
  cfg.strip_punctuation = true;
  cfg.punctuation_set = {U'.'};
  EXPECT_EQ(normalize_text("A.B", cfg), "ab");
}

TEST(NormalizeText, PunctuationSetIgnoredWithoutStrip) {
  NormalizationConfig cfg;
  cfg.punctuation_set = {U'.'};
  EXPECT_EQ(normalize_text("a.b", cfg), "a.b");
}

TEST(NormalizeText, EmptySetStripsEveryPunctuationCategory) {
  NormalizationConfig cfg;
  cfg.strip_punctuation = true;
  // U+0964 DEVANAGARI DANDA is Po, used as the Bengali full stop.
  EXPECT_EQ(normalize_text("a,b!(c)\xE0\xA5\xA4", cfg), "abc");
  EXPECT_EQ(normalize_text("a+b", cfg), "a+b");  // Sm, not punctuation
}

// Reference values from Python's unicodedata.normalize.
TEST(NormalizeText, NfcComposesBengaliTwoPartVowel) {
  // KA + E + AA -> KA + O
  EXPECT_EQ(normalize_text("\xE0\xA6\x95\xE0\xA7\x87\xE0\xA6\xBE", defaults()),
            "\xE0\xA6\x95\xE0\xA7\x8B");
}

TEST(NormalizeText, NfcDecomposesCompositionExclusion) {
  // U+09DC RRA -> U+09A1 U+09BC
  EXPECT_EQ(normalize_text("\xE0\xA7\x9C", defaults()), "\xE0\xA6\xA1\xE0\xA6\xBC");
}

TEST(NormalizeText, NfcLeavesKaPlusAaAlone) {
  const std::string ka_aa = "\xE0\xA6\x95\xE0\xA6\xBE";
  EXPECT_EQ(normalize_text(ka_aa, defaults()), ka_aa);
}

TEST(NormalizeText, NfkcFoldsCompatibilityLigature) {
  NormalizationConfig cfg;
  cfg.unicode_form = UnicodeForm::kNfkc;
  EXPECT_EQ(normalize_text("\xEF\xAC\x81", cfg), "fi");
  EXPECT_EQ(normalize_text("\xEF\xAC\x81", defaults()), "\xEF\xAC\x81");
}

TEST(NormalizeText, NoneKeepsDecomposedInput) {
  NormalizationConfig cfg;
  cfg.unicode_form = UnicodeForm::kNone;
  const std::string split = "\xE0\xA6\x95\xE0\xA7\x87\xE0\xA6\xBE";
  EXPECT_EQ(normalize_text(split, cfg), split);
}

TEST(NormalizeText, IsIdempotent) {
  NormalizationConfig cfg;
  cfg.lowercase = true;
  cfg.strip_punctuation = true;
  for (const char* text : {"Hello, World!", "\xE0\xA6\x95\xE0\xA7\x87\xE0\xA6\xBE.",
                           "\xE0\xA7\x9C\xE0\xA7\x87", "ÀÉÎ-õü", "\xEF\xAC\x81"}) {
    for (UnicodeForm form : {UnicodeForm::kNfc, UnicodeForm::kNfkc, UnicodeForm::kNone}) {
      cfg.unicode_form = form;
      const std::string once = normalize_text(text, cfg);
      EXPECT_EQ(normalize_text(once, cfg), once) << text;
    }
  }
}

TEST(NormalizeText, InvalidUtf8NamesByteOffset) {
  try {
    normalize_text("ab\xFF", defaults());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDecode);
    EXPECT_NE(std::string(e.what()).find("offset 2"), std::string::npos) << e.what();
  }
}

TEST(UnicodeForm, ParsesNames) {
  EXPECT_EQ(parse_unicode_form("nfkc"), UnicodeForm::kNfkc);
  EXPECT_EQ(to_string(UnicodeForm::kNone), "none");
  EXPECT_EQ(code_of([] { parse_unicode_form("nfd"); }), ErrorCode::kInvalidArgument);
}

TEST(LoadCorpus, ReadsLinesInOrder) {
  std::istringstream in("a b\nb\n");
  const RawCorpus c = load_corpus(in, defaults(), "mem");
  EXPECT_EQ(c.lines, (std::vector<std::string>{"a b", "b"}));
  EXPECT_EQ(c.source_id, "mem");
}

TEST(LoadCorpus, EmptyInputGivesNoLines) {
  std::istringstream in("");
  EXPECT_TRUE(load_corpus(in, defaults(), "mem").lines.empty());
}

TEST(LoadCorpus, TrailingNewlineDoesNotAddALine) {
  std::istringstream with("a b\nb\n");
  std::istringstream without("a b\nb");
  EXPECT_EQ(load_corpus(with, defaults(), "x").lines, load_corpus(without, defaults(), "x").lines);
}

TEST(LoadCorpus, StripsCarriageReturnsAndByteOrderMark) {
  std::istringstream in("\xEF\xBB\xBFx y\r\nz\r\n");
  EXPECT_EQ(load_corpus(in, defaults(), "x").lines, (std::vector<std::string>{"x y", "z"}));
}

TEST(LoadCorpus, DecodeErrorCarriesLineNumber) {
  std::istringstream in("ok\nbad\xC3\n");
  try {
    load_corpus(in, defaults(), "mem");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDecode);
    EXPECT_NE(std::string(e.what()).find("mem:2"), std::string::npos) << e.what();
  }
}

TEST(LoadCorpus, MissingFileIsIoError) {
  EXPECT_EQ(code_of([] { load_corpus(std::filesystem::path("/nonexistent/corpus.txt"), {}); }),
            ErrorCode::kIo);
}

TEST(LoadCorpus, ReadsFromDisk) {
  const auto path = std::filesystem::temp_directory_path() / "subtok_corpus_test.txt";
  {
    std::ofstream out(path, std::ios::binary);
    out << "one two\r\nthree\n";
  }
  const RawCorpus c = load_corpus(path, defaults());
  EXPECT_EQ(c.lines, (std::vector<std::string>{"one two", "three"}));
  std::filesystem::remove(path);
}

TEST(BuildWordTable, CountsRepeatedWords) {
  const auto t = build_word_table({{"a b a"}, "s"});
  EXPECT_EQ(t.count("a"), 2u);
  EXPECT_EQ(t.count("b"), 1u);
  EXPECT_EQ(t.total_tokens(), 3u);
  EXPECT_EQ(t.size(), 2u);
}

TEST(BuildWordTable, SingleWord) {
  const auto t = build_word_table({{"x"}, "s"});
  EXPECT_EQ(t.count("x"), 1u);
  EXPECT_EQ(t.total_tokens(), 1u);
}

TEST(BuildWordTable, CountsAcrossLines) {
  const auto t = build_word_table({{"a a", "a"}, "s"});
  EXPECT_EQ(t.count("a"), 3u);
  EXPECT_EQ(t.total_tokens(), 3u);
  EXPECT_EQ(t.count("zzz"), 0u);
}

TEST(BuildWordTable, SplitsOnUnicodeWhitespace) {
  // U+00A0 NO-BREAK SPACE and U+3000 IDEOGRAPHIC SPACE both separate words.
  const auto t = build_word_table({{"a\xC2\xA0" "b\xE3\x80\x80" "c\t d"}, "s"});
  EXPECT_EQ(t.size(), 4u);
  EXPECT_EQ(t.total_tokens(), 4u);
}

TEST(BuildWordTable, RejectsCorpusWithoutWords) {
  EXPECT_EQ(code_of([] { build_word_table({{}, "s"}); }), ErrorCode::kEmptyCorpus);
  EXPECT_EQ(code_of([] { build_word_table({{"", "  \t"}, "s"}); }), ErrorCode::kEmptyCorpus);
}

TEST(WordFrequencyTable, FromCountsValidates) {
  EXPECT_EQ(code_of([] { WordFrequencyTable::from_counts({{"a b", 1}}); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { WordFrequencyTable::from_counts({{"", 1}}); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { WordFrequencyTable::from_counts({{"a", 0}}); }),
            ErrorCode::kInvalidArgument);
  const auto t = WordFrequencyTable::from_counts({{"a", 4}, {"b", 6}});
  EXPECT_EQ(t.total_tokens(), 10u);
}

TEST(WordFrequencyTable, IteratesInCodePointOrder) {
  const auto t = build_word_table({{"\xE0\xA6\x95 b a B"}, "s"});
  std::vector<std::string> words;
  for (const auto& [w, c] : t.entries()) words.push_back(w);
  EXPECT_EQ(words, (std::vector<std::string>{"B", "a", "b", "\xE0\xA6\x95"}));
}

}  // namespace
}  // namespace subtok
