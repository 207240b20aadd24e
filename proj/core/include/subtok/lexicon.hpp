#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "subtok/common.hpp"

namespace subtok {

// Word -> token sequence mapping consumed by ASR decoders. For entries
// without unk_token, the tokens concatenate back to the word.
struct Lexicon {
  std::map<std::string, std::vector<std::string>, std::less<>> entries;
  ModelKind model_kind = ModelKind::kChar;
  SegmentationMode mode = SegmentationMode::kScalar;
  std::string unk_token{kDefaultUnkToken};

  bool operator==(const Lexicon&) const = default;
};

// "#: key value" header lines, then one "word<TAB>tok1 tok2 ..." line per
// entry in code-point order of the words.
void write_lexicon(std::ostream& out, const Lexicon& lexicon);
Lexicon read_lexicon(std::istream& in);

void write_lexicon(const std::filesystem::path& path, const Lexicon& lexicon);
Lexicon read_lexicon(const std::filesystem::path& path);

}  // namespace subtok
