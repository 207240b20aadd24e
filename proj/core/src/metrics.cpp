#include "subtok/metrics.hpp"

#include "subtok/charset.hpp"
#include "subtok/error.hpp"
#include "subtok/utf8.hpp"

namespace subtok {

EvalReport error_rate(std::span<const std::string> reference,
                      std::span<const std::string> hypothesis) {
  if (reference.empty()) {
    throw Error(ErrorCode::kUndefinedRate, "reference is empty");
  }
  const Alignment a = edit_distance(reference, hypothesis);
  EvalReport report;
  report.substitutions = a.substitutions;
  report.insertions = a.insertions;
  report.deletions = a.deletions;
  report.reference_length = reference.size();
  report.error_rate =
      static_cast<double>(report.edits()) / static_cast<double>(report.reference_length);
  return report;
}

EvalReport wer(std::string_view reference_text, std::string_view hypothesis_text) {
  auto split = [](std::string_view text) {
    std::vector<std::string> words;
    for (auto w : utf8::split_whitespace(text)) words.emplace_back(w);
    return words;
  };
  const auto ref = split(reference_text);
  const auto hyp = split(hypothesis_text);
  return error_rate(ref, hyp);
}

EvalReport ter(std::span<const std::string> reference_tokens,
               std::span<const std::string> hypothesis_tokens) {
  return error_rate(reference_tokens, hypothesis_tokens);
}

EvalReport corpus_error_rate(std::span<const SequencePair> pairs) {
  if (pairs.empty()) throw Error(ErrorCode::kUndefinedRate, "no reference/hypothesis pairs");
  EvalReport pooled;
  for (const auto& [ref, hyp] : pairs) {
    const EvalReport r = error_rate(ref, hyp);
    pooled.substitutions += r.substitutions;
    pooled.insertions += r.insertions;
    pooled.deletions += r.deletions;
    pooled.reference_length += r.reference_length;
  }
  pooled.error_rate =
      static_cast<double>(pooled.edits()) / static_cast<double>(pooled.reference_length);
  return pooled;
}

TokenizationStats tokenization_stats(const Lexicon& lexicon, const WordFrequencyTable& table,
                                     std::size_t model_vocab_size) {
  if (table.empty()) throw Error(ErrorCode::kEmptyCorpus, "empty word table");
  double words = 0.0;
  double tokens = 0.0;
  double token_units = 0.0;
  double word_units = 0.0;
  double unknown_units = 0.0;
  std::uint64_t token_count = 0;
  for (const auto& [word, count] : table.entries()) {
    auto it = lexicon.entries.find(word);
    if (it == lexicon.entries.end()) {
      throw Error(ErrorCode::kInvalidArgument, "no lexicon entry for '" + word + "'");
    }
    const double weight = static_cast<double>(count);
    std::size_t units = 0;
    std::size_t unknown = 0;
    for (const auto& token : it->second) {
      if (token == lexicon.unk_token) {
        ++units;
        ++unknown;
      } else {
        units += unit_length(token, lexicon.mode);
      }
    }
    words += weight;
    tokens += weight * static_cast<double>(it->second.size());
    token_units += weight * static_cast<double>(units);
    word_units += weight * static_cast<double>(unit_length(word, lexicon.mode));
    unknown_units += weight * static_cast<double>(unknown);
    token_count += count * it->second.size();
  }
  TokenizationStats stats;
  stats.vocab_size = model_vocab_size;
  stats.avg_tokens_per_word = tokens / words;
  stats.avg_token_length = tokens > 0 ? token_units / tokens : 0.0;
  stats.oov_char_rate = word_units > 0 ? unknown_units / word_units : 0.0;
  stats.corpus_token_count = token_count;
  return stats;
}

}  // namespace subtok
