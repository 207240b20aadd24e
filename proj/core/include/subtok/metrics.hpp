#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subtok/corpus.hpp"
#include "subtok/lexicon.hpp"

namespace subtok {

struct Alignment {
  std::size_t distance = 0;
  std::size_t substitutions = 0;
  std::size_t insertions = 0;
  std::size_t deletions = 0;
};

// Unit-cost Levenshtein distance. The S/I/D split comes from a backtrace
// that prefers the diagonal (match or substitution), then deletion, then
// insertion.
template <typename T>
Alignment edit_distance(std::span<const T> reference, std::span<const T> hypothesis) {
  const std::size_t n = reference.size();
  const std::size_t m = hypothesis.size();
  std::vector<std::size_t> d((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return d[i * (m + 1) + j]; };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = i;
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diag = at(i - 1, j - 1) + (reference[i - 1] == hypothesis[j - 1] ? 0 : 1);
      at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }

  Alignment result;
  result.distance = at(n, m);
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = reference[i - 1] == hypothesis[j - 1];
      if (at(i, j) == at(i - 1, j - 1) + (same ? 0 : 1)) {
        if (!same) ++result.substitutions;
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      ++result.deletions;
      --i;
    } else {
      ++result.insertions;
      --j;
    }
  }
  return result;
}

template <typename T>
Alignment edit_distance(const std::vector<T>& reference, const std::vector<T>& hypothesis) {
  return edit_distance(std::span<const T>(reference), std::span<const T>(hypothesis));
}

struct EvalReport {
  std::size_t substitutions = 0;
  std::size_t insertions = 0;
  std::size_t deletions = 0;
  std::size_t reference_length = 0;
  double error_rate = 0.0;  // (S + I + D) / reference_length

  std::size_t edits() const { return substitutions + insertions + deletions; }
};

// Throws Error(kUndefinedRate) when the reference is empty.
EvalReport error_rate(std::span<const std::string> reference,
                      std::span<const std::string> hypothesis);

// Word error rate over whitespace-split texts.
EvalReport wer(std::string_view reference_text, std::string_view hypothesis_text);

// Token error rate over tokenizer output sequences.
EvalReport ter(std::span<const std::string> reference_tokens,
               std::span<const std::string> hypothesis_tokens);

using SequencePair = std::pair<std::vector<std::string>, std::vector<std::string>>;

// Pooled rate: total edits over total reference length.
EvalReport corpus_error_rate(std::span<const SequencePair> pairs);

struct TokenizationStats {
  std::size_t vocab_size = 0;
  double avg_tokens_per_word = 0.0;
  double avg_token_length = 0.0;  // character units; unk counts as one unit
  double oov_char_rate = 0.0;     // fraction of character units encoded as unk
  std::uint64_t corpus_token_count = 0;
};

// Frequency-weighted statistics of `lexicon` over `table`. Throws
// Error(kInvalidArgument) if a table word has no lexicon entry.
TokenizationStats tokenization_stats(const Lexicon& lexicon, const WordFrequencyTable& table,
                                     std::size_t model_vocab_size);

}  // namespace subtok
