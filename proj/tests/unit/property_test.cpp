#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles/generators.hpp"
#include "subtok/charset.hpp"
#include "subtok/corpus.hpp"
#include "subtok/model_io.hpp"
#include "subtok/unigram.hpp"

namespace subtok {
namespace {

using Units = std::vector<std::string>;

std::string join(const Units& tokens) {
  std::string out;
  for (const auto& t : tokens) out += t;
  return out;
}

BpeModel bpe(const WordFrequencyTable& t, std::size_t n,
             SegmentationMode mode = SegmentationMode::kScalar) {
  BpeTrainerConfig cfg;
  cfg.target_vocab_size = n;
  cfg.mode = mode;
  return train_bpe(t, cfg);
}

TEST(BpeProperty, SmallerTargetGivesMergePrefix) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const auto t = oracle::to_table(oracle::random_ascii_table(rng, "abcd", 6, 7));
    const BpeModel small = bpe(t, 6);
    const BpeModel large = bpe(t, 12);
    ASSERT_LE(small.merges().size(), large.merges().size());
    EXPECT_TRUE(std::equal(small.merges().begin(), small.merges().end(), large.merges().begin()));
  }
}

TEST(BpeProperty, EncodeRoundTripsAndShrinksWithMoreMerges) {
  std::mt19937_64 rng(102);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = oracle::to_table(oracle::random_mixed_table(rng, 8, 6));
    for (auto mode : {SegmentationMode::kScalar, SegmentationMode::kGrapheme}) {
      const BpeModel small = bpe(t, 8, mode);
      const BpeModel large = bpe(t, 20, mode);
      for (const auto& [word, count] : t.entries()) {
        const Units a = small.encode_word(word);
        const Units b = large.encode_word(word);
        EXPECT_EQ(join(a), word);
        EXPECT_EQ(join(b), word);
        EXPECT_LE(b.size(), a.size());
      }
    }
  }
}

TEST(BpeProperty, VocabularyGrowsAtMostOnePerMerge) {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 200; ++trial) {
    const auto t = oracle::to_table(oracle::random_ascii_table(rng, "ab", 5, 8));
    const BpeModel m = bpe(t, 10);
    EXPECT_LE(m.vocab().size(), m.inventory_size() + m.merges().size());
    if (m.reached_target()) EXPECT_EQ(m.vocab().size(), std::max<std::size_t>(10, m.inventory_size()));
  }
}

TEST(CharProperty, RoundTripInBothModes) {
  std::mt19937_64 rng(104);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = oracle::to_table(oracle::random_mixed_table(rng, 8, 8));
    for (auto mode : {SegmentationMode::kScalar, SegmentationMode::kGrapheme}) {
      const CharModel m = train_char(t, mode);
      for (const auto& [word, count] : t.entries()) EXPECT_EQ(join(m.encode_word(word)), word);
    }
  }
}

TEST(UnigramProperty, FitIsNormalized) {
  std::mt19937_64 rng(105);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = oracle::to_table(oracle::random_mixed_table(rng, 6, 6));
    const UnigramModel m = fit_lm(seed_vocab(t, {}), t, 2);
    double sum = 0.0;
    for (const auto& p : m.pieces()) sum += std::exp(p.log_prob);
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(UnigramProperty, TrainingKeepsEveryUnitAndRoundTrips) {
  std::mt19937_64 rng(106);
  for (int trial = 0; trial < 40; ++trial) {
    const auto t = oracle::to_table(oracle::random_mixed_table(rng, 6, 6));
    UnigramTrainerConfig cfg;
    cfg.target_vocab_size = 10;
    const UnigramModel m = train_unigram(t, cfg);
    for (const auto& unit : extract_charset(t, cfg.mode).units) EXPECT_TRUE(m.contains(unit));
    for (const auto& [word, count] : t.entries()) {
      const Units tokens = m.encode_word(word);
      EXPECT_EQ(join(tokens), word);
      for (const auto& tok : tokens) EXPECT_NE(tok, m.unk_token());
    }
  }
}

template <typename Model>
std::string vocab_text(const Model& m) {
  std::ostringstream out;
  write_vocab(out, m);
  return out.str();
}

TEST(SerializationProperty, WriteReadWriteIsByteIdentical) {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 30; ++trial) {
    const auto t = oracle::to_table(oracle::random_mixed_table(rng, 6, 6));
    const CharModel c = train_char(t, SegmentationMode::kScalar);
    std::istringstream cin(vocab_text(c));
    EXPECT_EQ(vocab_text(read_char_model(cin)), vocab_text(c));

    const BpeModel b = bpe(t, 12);
    std::ostringstream merges;
    write_merges(merges, b);
    std::istringstream bv(vocab_text(b)), bm(merges.str());
    const BpeModel b2 = read_bpe_model(bv, bm);
    std::ostringstream merges2;
    write_merges(merges2, b2);
    EXPECT_EQ(vocab_text(b2), vocab_text(b));
    EXPECT_EQ(merges2.str(), merges.str());

    UnigramTrainerConfig cfg;
    cfg.target_vocab_size = 12;
    const UnigramModel u = train_unigram(t, cfg);
    std::istringstream uin(vocab_text(u));
    EXPECT_EQ(vocab_text(read_unigram_model(uin)), vocab_text(u));
  }
}

TEST(CorpusProperty, WordCountsSumToTokenCount) {
  std::mt19937_64 rng(108);
  const std::vector<std::string> pieces{"a", "b", "ক", "া", " ", "  ", "\t", "\xC2\xA0"};
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::uniform_int_distribution<int> len(1, 30);
  for (int trial = 0; trial < 300; ++trial) {
    RawCorpus corpus{{}, "gen"};
    std::size_t expected = 0;
    for (int line = 0; line < 3; ++line) {
      std::string text;
      bool in_word = false;
      for (int i = len(rng); i > 0; --i) {
        const std::string& p = pieces[pick(rng)];
        const bool space = p == " " || p == "  " || p == "\t" || p == "\xC2\xA0";
        if (!space && !in_word) ++expected;
        in_word = !space;
        text += p;
      }
      corpus.lines.push_back(text);
    }
    if (expected == 0) continue;
    const auto t = build_word_table(corpus);
    std::uint64_t sum = 0;
    for (const auto& [w, c] : t.entries()) sum += c;
    EXPECT_EQ(sum, t.total_tokens());
    EXPECT_EQ(t.total_tokens(), expected);
  }
}

TEST(CorpusProperty, NormalizationIsIdempotent) {
  std::mt19937_64 rng(109);
  const std::vector<std::string> pieces{"A", "b", ".", ",", "ক", "ে", "া", "ো", "\xE0\xA7\x9C",
                                        "\xEF\xAC\x81", "\xC3\x89", "e\xCC\x81", "!"};
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::uniform_int_distribution<int> len(0, 12);
  for (int trial = 0; trial < 500; ++trial) {
    std::string text;
    for (int i = len(rng); i > 0; --i) text += pieces[pick(rng)];
    NormalizationConfig cfg;
    cfg.lowercase = trial % 2 == 0;
    cfg.strip_punctuation = trial % 3 == 0;
    cfg.unicode_form = static_cast<UnicodeForm>(trial % 3);
    const std::string once = normalize_text(text, cfg);
    EXPECT_EQ(normalize_text(once, cfg), once);
  }
}

}  // namespace
}  // namespace subtok
