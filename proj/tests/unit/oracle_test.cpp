#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles/bpe_oracle.hpp"
#include "oracles/edit_oracle.hpp"
#include "oracles/generators.hpp"
#include "oracles/unigram_oracle.hpp"
#include "subtok/bpe.hpp"
#include "subtok/metrics.hpp"
#include "subtok/unigram.hpp"

namespace subtok {
namespace {

using Units = std::vector<std::string>;

oracle::LogProbs log_probs(const UnigramModel& m) {
  oracle::LogProbs lp;
  for (const auto& p : m.pieces()) lp[p.token] = p.log_prob;
  return lp;
}

TEST(BpeOracle, MatchesBruteForceOnSmallTables) {
  std::mt19937_64 rng(201);
  for (int trial = 0; trial < 150; ++trial) {
    const auto counts = oracle::random_ascii_table(rng, "abc", 4, 5);
    const auto table = oracle::to_table(counts);
    for (std::size_t n = 1; n <= 12; ++n) {
      const auto expected = oracle::brute_force_bpe(counts, n);
      BpeTrainerConfig cfg;
      cfg.target_vocab_size = n;
      const BpeModel m = train_bpe(table, cfg);
      ASSERT_EQ(m.vocab(), expected.vocab) << "trial " << trial << " n " << n;
      ASSERT_EQ(m.merges().size(), expected.merges.size());
      for (std::size_t i = 0; i < expected.merges.size(); ++i) {
        EXPECT_EQ(m.merges()[i].left, expected.merges[i].first);
        EXPECT_EQ(m.merges()[i].right, expected.merges[i].second);
      }
    }
  }
}

TEST(EditOracle, MatchesRecursiveDistance) {
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<int> len(0, 6);
  std::uniform_int_distribution<int> sym(0, 2);
  for (int trial = 0; trial < 1000; ++trial) {
    Units a, b;
    for (int i = len(rng); i > 0; --i) a.emplace_back(1, static_cast<char>('a' + sym(rng)));
    for (int i = len(rng); i > 0; --i) b.emplace_back(1, static_cast<char>('a' + sym(rng)));
    EXPECT_EQ(edit_distance(a, b).distance, oracle::recursive_edit_distance(a, b));
  }
}

// Random normalized model over a random subset of substrings of "abc"
// words; some single letters may be missing and fall back to unk.
UnigramModel random_model(std::mt19937_64& rng) {
  static const Units candidates{"a", "b", "c", "ab", "bc", "ca", "aa", "abc", "bca", "cab"};
  std::bernoulli_distribution keep(0.6);
  std::uniform_int_distribution<int> weight(1, 4);  // coarse weights provoke ties
  std::vector<std::pair<std::string, double>> raw;
  double total = 0.0;
  for (const auto& t : candidates) {
    if (!keep(rng)) continue;
    raw.emplace_back(t, weight(rng));
    total += raw.back().second;
  }
  if (raw.empty()) {
    raw.emplace_back("a", 1.0);
    total = 1.0;
  }
  std::vector<ScoredToken> pieces;
  for (const auto& [t, w] : raw) pieces.push_back({t, std::log(w / total)});
  return UnigramModel(std::move(pieces), UnigramTrainerConfig{});
}

TEST(UnigramOracle, ViterbiMatchesExhaustiveSearch) {
  std::mt19937_64 rng(203);
  std::uniform_int_distribution<int> len(1, 8);
  std::uniform_int_distribution<int> sym(0, 2);
  for (int trial = 0; trial < 400; ++trial) {
    const UnigramModel m = random_model(rng);
    const auto lp = log_probs(m);
    for (int w = 0; w < 5; ++w) {
      std::string word;
      for (int i = len(rng); i > 0; --i) word += static_cast<char>('a' + sym(rng));
      const Segmentation got = m.viterbi(word);
      const oracle::Best want = oracle::exhaustive_best(word, lp);
      EXPECT_EQ(got.tokens, want.tokens) << word;
      EXPECT_NEAR(got.score, want.score, 1e-9);
    }
  }
}

TEST(UnigramOracle, FitMatchesRefit) {
  std::mt19937_64 rng(204);
  for (int trial = 0; trial < 100; ++trial) {
    const auto counts = oracle::random_ascii_table(rng, "abc", 3, 6);
    const auto table = oracle::to_table(counts);
    const auto vocab = seed_vocab(table, {});
    const UnigramModel m = fit_lm(vocab, table, 2);
    const auto want = oracle::refit(vocab, counts, 2);
    for (const auto& [t, p] : want) EXPECT_NEAR(*m.log_prob(t), p, 1e-12) << t;
    EXPECT_NEAR(perplexity(m, table), oracle::perplexity(want, counts), 1e-9);
  }
}

TEST(UnigramOracle, ExactLossMatchesRefit) {
  std::mt19937_64 rng(205);
  for (int trial = 0; trial < 100; ++trial) {
    const auto counts = oracle::random_ascii_table(rng, "abc", 3, 6);
    const auto table = oracle::to_table(counts);
    const UnigramModel m = fit_lm(seed_vocab(table, {}), table, 2);
    const auto lp = log_probs(m);
    for (const auto& p : m.pieces()) {
      if (p.token.size() < 2) continue;
      const double got = token_loss(m, table, p.token, LossMode::kExact, 2).loss;
      EXPECT_NEAR(got, oracle::exact_loss(lp, counts, p.token, 2), 1e-9) << p.token;
    }
  }
}

}  // namespace
}  // namespace subtok
