#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "subtok/bpe.hpp"
#include "subtok/charset.hpp"
#include "subtok/lexicon.hpp"
#include "subtok/unigram.hpp"

namespace subtok {

// One of the three interchangeable subword backends.
class Tokenizer {
 public:
  using Model = std::variant<CharModel, BpeModel, UnigramModel>;

  explicit Tokenizer(Model model) : model_(std::move(model)) {}

  ModelKind kind() const;
  SegmentationMode mode() const;
  const std::string& unk_token() const;
  // Vocabulary size excluding the unk token.
  std::size_t vocab_size() const;

  std::vector<std::string> encode_word(std::string_view word) const;
  Lexicon build_lexicon(const WordFrequencyTable& table) const;

  const Model& model() const noexcept { return model_; }

 private:
  Model model_;
};

inline constexpr std::string_view kVocabFileName = "vocab.tsv";
inline constexpr std::string_view kMergesFileName = "merges.tsv";

// Writes vocab.tsv (and merges.tsv for BPE) into `dir`, creating it.
void save_model(const std::filesystem::path& dir, const Tokenizer& tokenizer);
Tokenizer load_model(const std::filesystem::path& dir);

}  // namespace subtok
