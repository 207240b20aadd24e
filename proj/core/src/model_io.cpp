#include "subtok/model_io.hpp"

#include <istream>
#include <ostream>
#include <unordered_set>

#include "subtok/error.hpp"
#include "tsv.hpp"

namespace subtok {
namespace {

void write_data_line(std::ostream& out, const std::string& token, std::size_t id) {
  out << token << '\t' << id << '\n';
}

void write_data_line(std::ostream& out, const std::string& token, std::size_t id,
                     double log_prob) {
  out << token << '\t' << id << '\t' << tsv::format_double(log_prob) << '\n';
}

ModelHeader parse_model_header(const std::vector<tsv::HeaderField>& fields) {
  ModelHeader header;
  bool has_kind = false;
  bool has_mode = false;
  for (const auto& [key, value, line_no] : fields) {
    try {
      if (key == "format_version") {
        header.format_version = static_cast<int>(tsv::parse_uint(value, line_no));
        if (header.format_version != kFormatVersion) {
          tsv::fail(line_no, "unsupported format version " + value);
        }
      } else if (key == "model_kind") {
        header.model_kind = parse_model_kind(value);
        has_kind = true;
      } else if (key == "mode") {
        header.mode = parse_segmentation_mode(value);
        has_mode = true;
      } else if (key == "target_vocab_size") {
        header.target_vocab_size = tsv::parse_uint(value, line_no);
      } else if (key == "tie_break_rule") {
        header.tie_break_rule = value;
      } else if (key == "unk_token") {
        if (value.empty()) tsv::fail(line_no, "empty unk token");
        header.unk_token = value;
      } else if (key == "inventory_size") {
        header.inventory_size = tsv::parse_uint(value, line_no);
      } else if (key == "alpha") {
        header.alpha = tsv::parse_double(value, line_no);
      } else if (key == "em_iterations") {
        header.em_iterations = tsv::parse_uint(value, line_no);
      } else if (key == "max_seed_substring_len") {
        header.max_seed_substring_len = tsv::parse_uint(value, line_no);
      } else if (key == "loss") {
        if (value != "exact" && value != "approximate") {
          tsv::fail(line_no, "loss must be exact or approximate");
        }
        header.exact_loss = value == "exact";
      } else {
        tsv::fail(line_no, "unknown header key '" + key + "'");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kParse) throw;
      tsv::fail(line_no, e.detail());
    }
  }
  if (!has_kind) tsv::fail(1, "missing header key 'model_kind'");
  if (!has_mode) tsv::fail(1, "missing header key 'mode'");
  return header;
}

void expect_kind(const ModelHeader& header, ModelKind kind) {
  if (header.model_kind != kind) {
    tsv::fail(1, "expected a " + std::string(to_string(kind)) + " model, found " +
                     std::string(to_string(header.model_kind)));
  }
}

}  // namespace

std::string_view tie_break_rule(ModelKind kind) {
  switch (kind) {
    case ModelKind::kChar: return "none";
    case ModelKind::kBpe: return "max-count,min-pair-codepoint";
    case ModelKind::kUnigram: return "max-logprob,min-tokens,min-sequence-codepoint";
  }
  return "none";
}

void write_header(std::ostream& out, const ModelHeader& header) {
  tsv::write_header_line(out, "format_version", std::to_string(header.format_version));
  tsv::write_header_line(out, "model_kind", to_string(header.model_kind));
  tsv::write_header_line(out, "mode", to_string(header.mode));
  tsv::write_header_line(out, "target_vocab_size", std::to_string(header.target_vocab_size));
  tsv::write_header_line(out, "tie_break_rule", header.tie_break_rule);
  tsv::write_header_line(out, "unk_token", header.unk_token);
  if (header.inventory_size) {
    tsv::write_header_line(out, "inventory_size", std::to_string(*header.inventory_size));
  }
  if (header.alpha) tsv::write_header_line(out, "alpha", tsv::format_double(*header.alpha));
  if (header.em_iterations) {
    tsv::write_header_line(out, "em_iterations", std::to_string(*header.em_iterations));
  }
  if (header.max_seed_substring_len) {
    tsv::write_header_line(out, "max_seed_substring_len",
                           std::to_string(*header.max_seed_substring_len));
  }
  if (header.exact_loss) {
    tsv::write_header_line(out, "loss", *header.exact_loss ? "exact" : "approximate");
  }
}

ModelHeader make_header(const CharModel& model) {
  ModelHeader header;
  header.model_kind = ModelKind::kChar;
  header.mode = model.mode();
  header.target_vocab_size = model.vocab().size();
  header.tie_break_rule = tie_break_rule(ModelKind::kChar);
  header.unk_token = model.unk_token();
  return header;
}

ModelHeader make_header(const BpeModel& model) {
  ModelHeader header;
  header.model_kind = ModelKind::kBpe;
  header.mode = model.mode();
  header.target_vocab_size = model.target_vocab_size();
  header.tie_break_rule = tie_break_rule(ModelKind::kBpe);
  header.unk_token = model.unk_token();
  header.inventory_size = model.inventory_size();
  return header;
}

ModelHeader make_header(const UnigramModel& model) {
  const UnigramTrainerConfig& cfg = model.config();
  ModelHeader header;
  header.model_kind = ModelKind::kUnigram;
  header.mode = model.mode();
  header.target_vocab_size = cfg.target_vocab_size;
  header.tie_break_rule = tie_break_rule(ModelKind::kUnigram);
  header.unk_token = model.unk_token();
  header.alpha = cfg.alpha;
  header.em_iterations = cfg.em_iterations;
  header.max_seed_substring_len = cfg.max_seed_substring_len;
  header.exact_loss = cfg.exact_loss;
  return header;
}

void write_vocab(std::ostream& out, const CharModel& model) {
  write_header(out, make_header(model));
  std::size_t id = 0;
  for (const auto& unit : model.vocab()) write_data_line(out, unit, id++);
  write_data_line(out, model.unk_token(), id);
}

void write_vocab(std::ostream& out, const BpeModel& model) {
  write_header(out, make_header(model));
  std::size_t id = 0;
  for (const auto& token : model.vocab()) write_data_line(out, token, id++);
  write_data_line(out, model.unk_token(), id);
}

void write_vocab(std::ostream& out, const UnigramModel& model) {
  write_header(out, make_header(model));
  std::size_t id = 0;
  for (const auto& piece : model.pieces()) write_data_line(out, piece.token, id++, piece.log_prob);
  write_data_line(out, model.unk_token(), id, model.unk_log_prob());
}

void write_merges(std::ostream& out, const BpeModel& model) {
  tsv::write_header_line(out, "format_version", std::to_string(kFormatVersion));
  tsv::write_header_line(out, "merges", std::to_string(model.merges().size()));
  for (const auto& rule : model.merges()) out << rule.left << '\t' << rule.right << '\n';
}

VocabFile read_vocab(std::istream& in) {
  const auto lines = tsv::read_lines(in);
  std::vector<tsv::HeaderField> fields;
  const std::size_t first = tsv::parse_header(lines, fields);
  VocabFile file;
  file.header = parse_model_header(fields);
  const bool scored = file.header.model_kind == ModelKind::kUnigram;
  const std::size_t columns = scored ? 3 : 2;

  std::unordered_set<std::string_view> seen;
  bool unk_seen = false;
  for (std::size_t i = first; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto parts = tsv::split(lines[i], '\t');
    if (parts.size() != columns) {
      tsv::fail(line_no, "expected " + std::to_string(columns) + " tab-separated fields");
    }
    if (unk_seen) tsv::fail(line_no, "data after the unk token line");
    const std::string_view token = parts[0];
    if (token.empty()) tsv::fail(line_no, "empty token");
    if (!seen.insert(token).second) {
      tsv::fail(line_no, "duplicate token '" + std::string(token) + "'");
    }
    if (tsv::parse_uint(parts[1], line_no) != i - first) {
      tsv::fail(line_no, "ids must be dense from 0; expected " + std::to_string(i - first));
    }
    const double log_prob = scored ? tsv::parse_double(parts[2], line_no) : 0.0;
    if (token == file.header.unk_token) {
      unk_seen = true;
      file.unk_log_prob = log_prob;
      continue;
    }
    file.tokens.emplace_back(token);
    if (scored) file.log_probs.push_back(log_prob);
  }
  if (!unk_seen) tsv::fail(lines.size(), "missing unk token line '" + file.header.unk_token + "'");
  return file;
}

std::vector<MergeRule> read_merges(std::istream& in) {
  const auto lines = tsv::read_lines(in);
  std::vector<tsv::HeaderField> fields;
  const std::size_t first = tsv::parse_header(lines, fields);
  std::optional<std::uint64_t> declared;
  for (const auto& [key, value, line_no] : fields) {
    if (key == "format_version") {
      if (tsv::parse_uint(value, line_no) != kFormatVersion) {
        tsv::fail(line_no, "unsupported format version " + value);
      }
    } else if (key == "merges") {
      declared = tsv::parse_uint(value, line_no);
    } else {
      tsv::fail(line_no, "unknown header key '" + key + "'");
    }
  }
  std::vector<MergeRule> rules;
  for (std::size_t i = first; i < lines.size(); ++i) {
    const auto parts = tsv::split(lines[i], '\t');
    if (parts.size() != 2 || parts[0].empty() || parts[1].empty()) {
      tsv::fail(i + 1, "expected left<TAB>right");
    }
    rules.push_back({std::string(parts[0]), std::string(parts[1]), rules.size()});
  }
  if (declared && *declared != rules.size()) {
    tsv::fail(lines.size(), "header declares " + std::to_string(*declared) + " merges, found " +
                                std::to_string(rules.size()));
  }
  return rules;
}

CharModel read_char_model(std::istream& vocab) {
  VocabFile file = read_vocab(vocab);
  expect_kind(file.header, ModelKind::kChar);
  CharModel model(file.tokens, file.header.mode, file.header.unk_token);
  if (model.vocab() != file.tokens) {
    throw Error(ErrorCode::kConsistency, "character vocabulary is not in code-point order");
  }
  return model;
}

BpeModel read_bpe_model(std::istream& vocab, std::istream& merges) {
  VocabFile file = read_vocab(vocab);
  expect_kind(file.header, ModelKind::kBpe);
  if (!file.header.inventory_size) tsv::fail(1, "missing header key 'inventory_size'");
  const std::size_t inventory_size = *file.header.inventory_size;
  if (inventory_size > file.tokens.size()) {
    throw Error(ErrorCode::kConsistency, "inventory size exceeds vocabulary size");
  }
  std::vector<MergeRule> rules = read_merges(merges);
  const std::unordered_set<std::string> known(file.tokens.begin(), file.tokens.end());
  for (const auto& rule : rules) {
    for (const auto* operand : {&rule.left, &rule.right}) {
      if (!known.contains(*operand)) {
        throw Error(ErrorCode::kConsistency, "merge " + std::to_string(rule.rank) +
                                                 " references '" + *operand +
                                                 "', which is absent from the vocabulary");
      }
    }
  }
  std::vector<std::string> inventory(file.tokens.begin(),
                                     file.tokens.begin() + static_cast<std::ptrdiff_t>(inventory_size));
  BpeModel model(std::move(inventory), std::move(rules), file.header.mode,
                 file.header.target_vocab_size, file.header.unk_token);
  if (model.vocab() != file.tokens) {
    throw Error(ErrorCode::kConsistency, "replaying the merges does not reproduce the vocabulary");
  }
  return model;
}

UnigramModel read_unigram_model(std::istream& vocab) {
  VocabFile file = read_vocab(vocab);
  expect_kind(file.header, ModelKind::kUnigram);
  const ModelHeader& h = file.header;
  if (!h.alpha || !h.em_iterations || !h.max_seed_substring_len || !h.exact_loss) {
    tsv::fail(1, "unigram header needs alpha, em_iterations, max_seed_substring_len, loss");
  }
  UnigramTrainerConfig cfg;
  cfg.target_vocab_size = h.target_vocab_size;
  cfg.alpha = *h.alpha;
  cfg.em_iterations = *h.em_iterations;
  cfg.max_seed_substring_len = *h.max_seed_substring_len;
  cfg.exact_loss = *h.exact_loss;
  cfg.mode = h.mode;
  std::vector<ScoredToken> pieces;
  pieces.reserve(file.tokens.size());
  for (std::size_t i = 0; i < file.tokens.size(); ++i) {
    pieces.push_back({std::move(file.tokens[i]), file.log_probs[i]});
  }
  return UnigramModel(std::move(pieces), cfg, h.unk_token, file.unk_log_prob);
}

}  // namespace subtok
