#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "subtok/bpe.hpp"
#include "subtok/charset.hpp"
#include "subtok/common.hpp"
#include "subtok/unigram.hpp"

namespace subtok {

inline constexpr int kFormatVersion = 1;

// Header of a vocab file, written as "#: key value" lines ahead of the data.
// Optional fields appear only for the model kinds that use them.
struct ModelHeader {
  int format_version = kFormatVersion;
  ModelKind model_kind = ModelKind::kChar;
  SegmentationMode mode = SegmentationMode::kScalar;
  std::size_t target_vocab_size = 0;
  std::string tie_break_rule;
  std::string unk_token{kDefaultUnkToken};
  std::optional<std::size_t> inventory_size;          // bpe
  std::optional<double> alpha;                        // unigram
  std::optional<std::size_t> em_iterations;           // unigram
  std::optional<std::size_t> max_seed_substring_len;  // unigram
  std::optional<bool> exact_loss;                     // unigram

  bool operator==(const ModelHeader&) const = default;
};

std::string_view tie_break_rule(ModelKind kind);

void write_header(std::ostream& out, const ModelHeader& header);

ModelHeader make_header(const CharModel& model);
ModelHeader make_header(const BpeModel& model);
ModelHeader make_header(const UnigramModel& model);

// Vocab file: header, then "token<TAB>id" per line with dense ids in model
// order, the unk token last. Unigram lines carry a third field, the
// log-probability with 17 significant digits.
void write_vocab(std::ostream& out, const CharModel& model);
void write_vocab(std::ostream& out, const BpeModel& model);
void write_vocab(std::ostream& out, const UnigramModel& model);

// Merges file: header, then "left<TAB>right" per rule in rank order.
void write_merges(std::ostream& out, const BpeModel& model);

struct VocabFile {
  ModelHeader header;
  std::vector<std::string> tokens;  // unk excluded
  std::vector<double> log_probs;    // unigram only, parallel to tokens
  double unk_log_prob = kUnkLogProb;
};

// Parse errors carry the 1-based line number: duplicate token, non-dense id,
// malformed number, wrong column count, unknown or missing header key.
VocabFile read_vocab(std::istream& in);
std::vector<MergeRule> read_merges(std::istream& in);

CharModel read_char_model(std::istream& vocab);
// Rules must reference vocab tokens (kConsistency otherwise) and be in
// learnable order; the replayed vocabulary must match the vocab file.
BpeModel read_bpe_model(std::istream& vocab, std::istream& merges);
UnigramModel read_unigram_model(std::istream& vocab);

}  // namespace subtok
