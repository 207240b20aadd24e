#include "subtok/tokenizer.hpp"

#include <fstream>

#include "subtok/error.hpp"
#include "subtok/model_io.hpp"

namespace subtok {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  return out;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return in;
}

}  // namespace

ModelKind Tokenizer::kind() const {
  return std::visit(Overloaded{[](const CharModel&) { return ModelKind::kChar; },
                               [](const BpeModel&) { return ModelKind::kBpe; },
                               [](const UnigramModel&) { return ModelKind::kUnigram; }},
                    model_);
}

SegmentationMode Tokenizer::mode() const {
  return std::visit([](const auto& m) { return m.mode(); }, model_);
}

const std::string& Tokenizer::unk_token() const {
  return std::visit([](const auto& m) -> const std::string& { return m.unk_token(); }, model_);
}

std::size_t Tokenizer::vocab_size() const {
  return std::visit(Overloaded{[](const CharModel& m) { return m.vocab().size(); },
                               [](const BpeModel& m) { return m.vocab().size(); },
                               [](const UnigramModel& m) { return m.size(); }},
                    model_);
}

std::vector<std::string> Tokenizer::encode_word(std::string_view word) const {
  return std::visit([&](const auto& m) { return m.encode_word(word); }, model_);
}

Lexicon Tokenizer::build_lexicon(const WordFrequencyTable& table) const {
  Lexicon lexicon;
  lexicon.model_kind = kind();
  lexicon.mode = mode();
  lexicon.unk_token = unk_token();
  for (const auto& [word, count] : table.entries()) {
    lexicon.entries.emplace(word, encode_word(word));
  }
  return lexicon;
}

void save_model(const std::filesystem::path& dir, const Tokenizer& tokenizer) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
  auto vocab = open_for_write(dir / kVocabFileName);
  std::visit([&](const auto& m) { write_vocab(vocab, m); }, tokenizer.model());
  if (!vocab) throw Error(ErrorCode::kIo, "write failed: " + (dir / kVocabFileName).string());
  if (const auto* bpe = std::get_if<BpeModel>(&tokenizer.model())) {
    auto merges = open_for_write(dir / kMergesFileName);
    write_merges(merges, *bpe);
    if (!merges) throw Error(ErrorCode::kIo, "write failed: " + (dir / kMergesFileName).string());
  }
}

Tokenizer load_model(const std::filesystem::path& dir) {
  ModelKind kind;
  {
    auto vocab = open_for_read(dir / kVocabFileName);
    kind = read_vocab(vocab).header.model_kind;
  }
  auto vocab = open_for_read(dir / kVocabFileName);
  switch (kind) {
    case ModelKind::kChar: return Tokenizer(read_char_model(vocab));
    case ModelKind::kBpe: {
      auto merges = open_for_read(dir / kMergesFileName);
      return Tokenizer(read_bpe_model(vocab, merges));
    }
    case ModelKind::kUnigram: return Tokenizer(read_unigram_model(vocab));
  }
  throw Error(ErrorCode::kParse, "unknown model kind in " + dir.string());
}

}  // namespace subtok
