#include "subtok/lexicon.hpp"

#include <fstream>
#include <ostream>

#include "subtok/error.hpp"
#include "tsv.hpp"

namespace subtok {

void write_lexicon(std::ostream& out, const Lexicon& lexicon) {
  tsv::write_header_line(out, "format_version", "1");
  tsv::write_header_line(out, "model_kind", to_string(lexicon.model_kind));
  tsv::write_header_line(out, "mode", to_string(lexicon.mode));
  tsv::write_header_line(out, "unk_token", lexicon.unk_token);
  for (const auto& [word, tokens] : lexicon.entries) {
    out << word << '\t';
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i > 0) out << ' ';
      out << tokens[i];
    }
    out << '\n';
  }
}

Lexicon read_lexicon(std::istream& in) {
  const auto lines = tsv::read_lines(in);
  std::vector<tsv::HeaderField> header;
  const std::size_t first = tsv::parse_header(lines, header);

  Lexicon lexicon;
  for (const auto& [key, value, line_no] : header) {
    try {
      if (key == "format_version") {
        if (value != "1") tsv::fail(line_no, "unsupported lexicon format version " + value);
      } else if (key == "model_kind") {
        lexicon.model_kind = parse_model_kind(value);
      } else if (key == "mode") {
        lexicon.mode = parse_segmentation_mode(value);
      } else if (key == "unk_token") {
        lexicon.unk_token = value;
      } else {
        tsv::fail(line_no, "unknown lexicon header key '" + key + "'");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kParse) throw;
      tsv::fail(line_no, e.detail());
    }
  }

  for (std::size_t i = first; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const std::string_view line = lines[i];
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) tsv::fail(line_no, "expected word<TAB>tokens");
    const std::string_view word = line.substr(0, tab);
    if (word.empty()) tsv::fail(line_no, "empty word");
    std::vector<std::string> tokens;
    for (auto token : tsv::split(line.substr(tab + 1), ' ')) {
      if (token.empty()) tsv::fail(line_no, "empty token field");
      tokens.emplace_back(token);
    }
    if (!lexicon.entries.emplace(std::string(word), std::move(tokens)).second) {
      tsv::fail(line_no, "duplicate word '" + std::string(word) + "'");
    }
  }
  return lexicon;
}

void write_lexicon(const std::filesystem::path& path, const Lexicon& lexicon) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  write_lexicon(out, lexicon);
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

Lexicon read_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return read_lexicon(in);
}

}  // namespace subtok
