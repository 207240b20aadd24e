#include <gtest/gtest.h>

#include <random>

#include "subtok/charset.hpp"
#include "subtok/metrics.hpp"
#include "unit/test_util.hpp"

namespace subtok {
namespace {

using testing::code_of;
using Seq = std::vector<std::string>;

Seq chars(const std::string& s) {
  Seq out;
  for (char c : s) out.emplace_back(1, c);
  return out;
}

TEST(EditDistance, IdenticalIsZero) {
  const Alignment a = edit_distance(Seq{"a", "b", "c"}, Seq{"a", "b", "c"});
  EXPECT_EQ(a.distance, 0u);
  EXPECT_EQ(a.substitutions + a.insertions + a.deletions, 0u);
}

TEST(EditDistance, KittenSitting) {
  const Alignment a = edit_distance(chars("kitten"), chars("sitting"));
  EXPECT_EQ(a.distance, 3u);
  EXPECT_EQ(a.substitutions, 2u);
  EXPECT_EQ(a.insertions, 1u);
  EXPECT_EQ(a.deletions, 0u);
}

TEST(EditDistance, EmptyHypothesisIsAllDeletions) {
  const Alignment a = edit_distance(Seq{"a", "b", "c"}, Seq{});
  EXPECT_EQ(a.distance, 3u);
  EXPECT_EQ(a.deletions, 3u);
}

TEST(EditDistance, EmptyReferenceIsAllInsertions) {
  const Alignment a = edit_distance(Seq{}, Seq{"x", "y"});
  EXPECT_EQ(a.insertions, 2u);
  EXPECT_EQ(edit_distance(Seq{}, Seq{}).distance, 0u);
}

TEST(EditDistance, BacktracePrefersSubstitutionOverIndelPair) {
  // "ab" vs "ba": two substitutions, or a deletion plus an insertion.
  const Alignment a = edit_distance(chars("ab"), chars("ba"));
  EXPECT_EQ(a.distance, 2u);
  EXPECT_EQ(a.substitutions, 2u);
}

TEST(EditDistance, BacktracePrefersDeletionOverInsertion) {
  // "aab" vs "ab" and "ab" vs "aab" differ only in direction.
  const Alignment del = edit_distance(chars("aab"), chars("ab"));
  EXPECT_EQ(del.deletions, 1u);
  EXPECT_EQ(del.insertions, 0u);
  const Alignment ins = edit_distance(chars("ab"), chars("aab"));
  EXPECT_EQ(ins.insertions, 1u);
  EXPECT_EQ(ins.deletions, 0u);
}

TEST(EditDistance, MetricAxiomsOnRandomTriples) {
  std::mt19937_64 rng(7);
  auto random_seq = [&] {
    std::uniform_int_distribution<int> len(0, 7);
    std::uniform_int_distribution<int> sym(0, 3);
    Seq s;
    for (int i = len(rng); i > 0; --i) s.emplace_back(1, static_cast<char>('a' + sym(rng)));
    return s;
  };
  for (int trial = 0; trial < 2000; ++trial) {
    const Seq x = random_seq();
    const Seq y = random_seq();
    const Seq z = random_seq();
    const auto xy = edit_distance(x, y);
    EXPECT_EQ(edit_distance(x, x).distance, 0u);
    EXPECT_EQ(xy.distance, edit_distance(y, x).distance);
    EXPECT_EQ(xy.substitutions + xy.insertions + xy.deletions, xy.distance);
    EXPECT_LE(edit_distance(x, z).distance, xy.distance + edit_distance(y, z).distance);
  }
}

TEST(Wer, Identical) { EXPECT_DOUBLE_EQ(wer("a b c", "a b c").error_rate, 0.0); }

TEST(Wer, OneSubstitution) {
  const EvalReport r = wer("a b c", "a x c");
  EXPECT_EQ(r.error_rate, 1.0 / 3.0);
  EXPECT_EQ(r.substitutions, 1u);
  EXPECT_EQ(r.reference_length, 3u);
}

TEST(Wer, EmptyHypothesis) {
  const EvalReport r = wer("a b c", "");
  EXPECT_DOUBLE_EQ(r.error_rate, 1.0);
  EXPECT_EQ(r.deletions, 3u);
}

TEST(Wer, EmptyReferenceIsUndefined) {
  EXPECT_EQ(code_of([] { wer("  ", "a"); }), ErrorCode::kUndefinedRate);
}

TEST(Wer, RateCanExceedOne) {
  EXPECT_DOUBLE_EQ(wer("a", "x y z").error_rate, 3.0);
}

TEST(Ter, Identical) { EXPECT_DOUBLE_EQ(ter(Seq{"aa", "b"}, Seq{"aa", "b"}).error_rate, 0.0); }

TEST(Ter, OneDeletion) {
  const EvalReport r = ter(Seq{"aa", "a", "b"}, Seq{"aa", "b"});
  EXPECT_EQ(r.error_rate, 1.0 / 3.0);
  EXPECT_EQ(r.deletions, 1u);
}

TEST(Ter, EmptyReferenceIsUndefined) {
  EXPECT_EQ(code_of([] { ter(Seq{}, Seq{"a"}); }), ErrorCode::kUndefinedRate);
}

TEST(Ter, CharacterTerEqualsWerOfSpacedCharacters) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> len(1, 9);
  std::uniform_int_distribution<int> sym(0, 4);
  for (int trial = 0; trial < 500; ++trial) {
    std::string ref, hyp;
    for (int i = len(rng); i > 0; --i) ref += static_cast<char>('a' + sym(rng));
    for (int i = len(rng) - 1; i > 0; --i) hyp += static_cast<char>('a' + sym(rng));
    auto spaced = [](const std::string& s) {
      std::string out;
      for (char c : s) {
        if (!out.empty()) out += ' ';
        out += c;
      }
      return out;
    };
    const Seq r = segment_word(ref, SegmentationMode::kScalar);
    const Seq h = hyp.empty() ? Seq{} : segment_word(hyp, SegmentationMode::kScalar);
    EXPECT_EQ(ter(r, h).error_rate, wer(spaced(ref), spaced(hyp)).error_rate);
  }
}

TEST(CorpusErrorRate, IdenticalPairs) {
  const std::vector<SequencePair> pairs{{Seq{"a"}, Seq{"a"}}, {Seq{"b"}, Seq{"b"}}};
  EXPECT_DOUBLE_EQ(corpus_error_rate(pairs).error_rate, 0.0);
}

TEST(CorpusErrorRate, PoolsEditsOverReferenceLength) {
  const std::vector<SequencePair> pairs{{Seq{"a", "b", "c"}, Seq{"a", "x", "c"}},
                                        {Seq{"d"}, Seq{"d"}}};
  const EvalReport r = corpus_error_rate(pairs);
  EXPECT_EQ(r.error_rate, 0.25);
  EXPECT_EQ(r.reference_length, 4u);
  EXPECT_EQ(r.edits(), 1u);
}

TEST(CorpusErrorRate, SinglePairMatchesPerPairRate) {
  const std::vector<SequencePair> pairs{{Seq{"a", "b", "c"}, Seq{"a", "x"}}};
  EXPECT_EQ(corpus_error_rate(pairs).error_rate, ter(pairs[0].first, pairs[0].second).error_rate);
}

TEST(CorpusErrorRate, RejectsEmptyInput) {
  EXPECT_EQ(code_of([] { corpus_error_rate(std::vector<SequencePair>{}); }),
            ErrorCode::kUndefinedRate);
  EXPECT_EQ(code_of([] {
              corpus_error_rate(std::vector<SequencePair>{{Seq{}, Seq{"a"}}});
            }),
            ErrorCode::kUndefinedRate);
}

WordFrequencyTable table(std::initializer_list<std::pair<const std::string, std::uint64_t>> l) {
  return WordFrequencyTable::from_counts(WordFrequencyTable::Entries(l));
}

TEST(TokenizationStats, CharacterLexicon) {
  Lexicon lex;
  lex.entries["ab"] = {"a", "b"};
  const TokenizationStats s = tokenization_stats(lex, table({{"ab", 1}}), 2);
  EXPECT_DOUBLE_EQ(s.avg_tokens_per_word, 2.0);
  EXPECT_DOUBLE_EQ(s.avg_token_length, 1.0);
  EXPECT_DOUBLE_EQ(s.oov_char_rate, 0.0);
  EXPECT_EQ(s.corpus_token_count, 2u);
  EXPECT_EQ(s.vocab_size, 2u);
}

TEST(TokenizationStats, BpeLexiconWeighted) {
  Lexicon lex;
  lex.model_kind = ModelKind::kBpe;
  lex.entries["aaab"] = {"aa", "a", "b"};
  const TokenizationStats s = tokenization_stats(lex, table({{"aaab", 2}}), 3);
  EXPECT_DOUBLE_EQ(s.avg_tokens_per_word, 3.0);
  EXPECT_DOUBLE_EQ(s.avg_token_length, 4.0 / 3.0);
  EXPECT_EQ(s.corpus_token_count, 6u);
}

TEST(TokenizationStats, UnseenCharacterRaisesOovRate) {
  Lexicon lex;
  lex.entries["abz"] = {"ab", "<unk>"};
  const TokenizationStats s = tokenization_stats(lex, table({{"abz", 1}}), 3);
  EXPECT_DOUBLE_EQ(s.oov_char_rate, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.avg_token_length, 1.5);  // unk counts as one unit
}

TEST(TokenizationStats, ProductEqualsMeanWordLength) {
  // Every model maps an unseen unit to exactly one unk, so token lengths
  // always partition the word.
  Lexicon lex;
  lex.entries["abc"] = {"ab", "c"};
  lex.entries["xyz"] = {"x", "<unk>", "z"};
  lex.entries["q"] = {"q"};
  const auto t = table({{"abc", 3}, {"xyz", 1}, {"q", 2}});
  const TokenizationStats s = tokenization_stats(lex, t, 4);
  const double mean_len = (3.0 * 3 + 3.0 * 1 + 1.0 * 2) / 6.0;
  EXPECT_NEAR(s.avg_tokens_per_word * s.avg_token_length, mean_len, 1e-12);
  EXPECT_DOUBLE_EQ(s.oov_char_rate, 1.0 / 14.0);
}

TEST(TokenizationStats, MissingEntryIsAnError) {
  Lexicon lex;
  EXPECT_EQ(code_of([&] { tokenization_stats(lex, table({{"a", 1}}), 1); }),
            ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace subtok
