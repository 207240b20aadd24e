#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "subtok/common.hpp"
#include "subtok/corpus.hpp"
#include "subtok/lexicon.hpp"

namespace subtok {

struct MergeRule {
  std::string left;
  std::string right;
  std::size_t rank = 0;  // 0 = first learned

  bool operator==(const MergeRule&) const = default;
};

struct BpeTrainerConfig {
  std::size_t target_vocab_size = 1000;
  SegmentationMode mode = SegmentationMode::kScalar;
};

struct SegmentedWord {
  std::vector<std::string> units;
  std::uint64_t count = 0;
};
using SegmentedWords = std::map<std::string, SegmentedWord, std::less<>>;
using Bigram = std::pair<std::string, std::string>;
using BigramCounts = std::map<Bigram, std::uint64_t>;

// Adjacent-pair counts weighted by word count. Overlapping occurrences each
// count ("aaa" holds two (a,a) pairs); pairs never span words.
BigramCounts count_bigrams(const SegmentedWords& words);

// Learned merge list over a character inventory.
//
// vocab() lists the inventory units in code-point order followed by each
// token created by a merge, in creation order. A merge whose concatenation
// already exists in the vocabulary is kept as a rule but adds no token.
// The unknown token is held separately and is never part of a merge.
class BpeModel {
 public:
  // Throws Error(kConsistency) unless ranks are 0..k-1 in order and each
  // rule's operands are inventory units or outputs of earlier rules.
  BpeModel(std::vector<std::string> inventory, std::vector<MergeRule> merges,
           SegmentationMode mode, std::size_t target_vocab_size = 0,
           std::string unk_token = std::string(kDefaultUnkToken));

  const std::vector<std::string>& vocab() const noexcept { return vocab_; }
  std::span<const std::string> inventory() const noexcept {
    return {vocab_.data(), inventory_size_};
  }
  std::size_t inventory_size() const noexcept { return inventory_size_; }
  const std::vector<MergeRule>& merges() const noexcept { return merges_; }
  SegmentationMode mode() const noexcept { return mode_; }
  const std::string& unk_token() const noexcept { return unk_token_; }
  // Requested size at training time; 0 when unknown.
  std::size_t target_vocab_size() const noexcept { return target_vocab_size_; }
  // False when training ran out of bigrams before reaching the target.
  bool reached_target() const noexcept { return vocab_.size() >= target_vocab_size_; }

  bool contains(std::string_view token) const;

  // Splits into character units (unknown units become unk_token), then
  // replays the merges in rank order, each as a leftmost non-overlapping
  // scan. Throws Error(kInvalidArgument) on an empty word.
  std::vector<std::string> encode_word(std::string_view word) const;

  bool operator==(const BpeModel& other) const;

 private:
  std::vector<std::string> vocab_;
  std::size_t inventory_size_ = 0;
  std::vector<MergeRule> merges_;
  SegmentationMode mode_;
  std::size_t target_vocab_size_;
  std::string unk_token_;

  std::unordered_set<std::string> known_;
  std::unordered_set<std::string> inventory_set_;
  // Pair key -> ascending ranks. A pair recurs only when a merge re-creates
  // an existing token.
  std::unordered_map<std::string, std::vector<std::size_t>> ranks_;
};

// Learns merges until |vocab| >= target_vocab_size or no bigram remains.
// The most frequent bigram wins; ties go to the smallest (left, right) pair
// in code-point order.
BpeModel train_bpe(const WordFrequencyTable& table, const BpeTrainerConfig& cfg);

struct DecodeResult {
  std::string text;
  bool lossy = false;  // an unk token was present
};

// Concatenates tokens. Throws Error(kInvalidArgument) on an empty sequence.
DecodeResult decode(std::span<const std::string> tokens,
                    std::string_view unk_token = kDefaultUnkToken);

Lexicon build_bpe_lexicon(const BpeModel& model, const WordFrequencyTable& table);

}  // namespace subtok
