#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "subtok/common.hpp"
#include "subtok/corpus.hpp"
#include "subtok/lexicon.hpp"

namespace subtok {

// Log-probability assigned to unk_token. It sits outside the normalized
// distribution.
inline constexpr double kUnkLogProb = -20.0;
// Additive smoothing applied to token counts in every fit.
inline constexpr double kSmoothing = 0.1;

struct UnigramTrainerConfig {
  std::size_t target_vocab_size = 1000;
  double alpha = 0.2;  // per-round pruning cap, in [0, 1]
  std::size_t max_seed_substring_len = 8;  // character units
  std::size_t em_iterations = 2;
  bool exact_loss = false;  // refit per candidate instead of renormalizing
  SegmentationMode mode = SegmentationMode::kScalar;

  // Throws Error(kInvalidArgument).
  void validate() const;

  bool operator==(const UnigramTrainerConfig&) const = default;
};

struct ScoredToken {
  std::string token;
  double log_prob = 0.0;

  bool operator==(const ScoredToken&) const = default;
};

struct Segmentation {
  std::vector<std::string> tokens;
  double score = 0.0;  // sum of token log-probabilities
};

class UnigramModel {
 public:
  // Throws Error(kConsistency) on duplicate tokens, non-finite scores, or a
  // distribution that does not sum to 1 within 1e-9.
  UnigramModel(std::vector<ScoredToken> pieces, UnigramTrainerConfig config,
               std::string unk_token = std::string(kDefaultUnkToken),
               double unk_log_prob = kUnkLogProb);

  const std::vector<ScoredToken>& pieces() const noexcept { return pieces_; }
  std::size_t size() const noexcept { return pieces_.size(); }
  std::vector<std::string> vocab() const;
  std::optional<double> log_prob(std::string_view token) const;
  bool contains(std::string_view token) const { return log_prob(token).has_value(); }

  SegmentationMode mode() const noexcept { return config_.mode; }
  const std::string& unk_token() const noexcept { return unk_token_; }
  double unk_log_prob() const noexcept { return unk_log_prob_; }
  // Training parameters, kept for serialization.
  const UnigramTrainerConfig& config() const noexcept { return config_; }

  // Maximum-probability segmentation; ties go to fewer tokens, then to the
  // lexicographically smallest token sequence. Units with no vocabulary
  // token become unk_token at unk_log_prob().
  Segmentation viterbi(std::string_view word) const;
  std::vector<std::string> encode_word(std::string_view word) const {
    return viterbi(word).tokens;
  }

  bool operator==(const UnigramModel& other) const;

 private:
  std::vector<ScoredToken> pieces_;
  UnigramTrainerConfig config_;
  std::string unk_token_;
  double unk_log_prob_;
  std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>> index_;
  std::size_t max_token_units_ = 1;
};

// Every word-internal substring of at most max_seed_substring_len units
// whose weighted occurrence count is >= 2, plus every single unit.
std::set<std::string> seed_vocab(const WordFrequencyTable& table,
                                 const UnigramTrainerConfig& cfg);

// Hard-EM fit: counts start at weighted substring occurrences, then each
// iteration Viterbi-segments the table and recounts token usage. Throws
// Error(kCoverage) naming a character unit missing from `vocab`.
UnigramModel fit_lm(const std::set<std::string>& vocab, const WordFrequencyTable& table,
                    std::size_t em_iterations,
                    SegmentationMode mode = SegmentationMode::kScalar);

Segmentation viterbi_encode(const UnigramModel& model, std::string_view word);

// exp(-(sum of count * Viterbi score) / (sum of count * Viterbi token count)).
double perplexity(const UnigramModel& model, const WordFrequencyTable& table);

enum class LossMode { kApproximate, kExact };

struct TokenLoss {
  std::string token;
  double loss = 0.0;  // perplexity with the token minus perplexity without it
};

// Approximate: drop the token and renormalize the rest. Exact: refit on the
// reduced vocabulary with `em_iterations`. Throws kInvalidArgument for a
// token outside the vocabulary, kUnprunable for a single character unit.
TokenLoss token_loss(const UnigramModel& model, const WordFrequencyTable& table,
                     std::string_view token, LossMode mode = LossMode::kApproximate,
                     std::size_t em_iterations = 2);

// Losses of every prunable (multi-unit) token, in code-point order.
// Approximate mode re-scores only from cached per-word lattices.
std::vector<TokenLoss> token_losses(const UnigramModel& model,
                                    const WordFrequencyTable& table,
                                    const UnigramTrainerConfig& cfg);

// Tokens removed by one pruning round: min(|V| - n, floor(alpha * |V|)),
// at least one. Exposed for logging and tests.
std::size_t prune_count(std::size_t vocab_size, std::size_t target, double alpha);

// Removes the prune_count() prunable tokens with the highest loss (ties: more
// units first, then code-point order). Single units are never removed.
// Throws kStagnation when nothing is prunable.
std::set<std::string> prune(const std::set<std::string>& vocab,
                            std::span<const TokenLoss> losses, std::size_t target,
                            double alpha, SegmentationMode mode = SegmentationMode::kScalar);

struct PruneRound {
  std::size_t vocab_before = 0;
  std::size_t removed = 0;
  std::size_t vocab_after = 0;
  double perplexity = 0.0;  // of the model fitted at the start of the round
};

struct UnigramTrainingLog {
  std::size_t seed_size = 0;
  std::vector<PruneRound> rounds;
  // Only single units remained while still above the target.
  bool floor_reached = false;
};

UnigramModel train_unigram(const WordFrequencyTable& table, const UnigramTrainerConfig& cfg,
                           UnigramTrainingLog* log = nullptr);

Lexicon build_unigram_lexicon(const UnigramModel& model, const WordFrequencyTable& table);

}  // namespace subtok
