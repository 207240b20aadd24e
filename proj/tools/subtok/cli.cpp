#include "cli.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "subtok/bpe.hpp"
#include "subtok/charset.hpp"
#include "subtok/corpus.hpp"
#include "subtok/error.hpp"
#include "subtok/lexicon.hpp"
#include "subtok/metrics.hpp"
#include "subtok/tokenizer.hpp"
#include "subtok/unigram.hpp"
#include "subtok/utf8.hpp"

namespace subtok::cli {
namespace {

// Bad flag values or combinations the parser itself cannot catch.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class LogLevel { kError, kInfo, kDebug };

class Log {
 public:
  Log(LogLevel level, std::ostream& err) : level_(level), err_(err) {}

  void error(const std::string& msg) { write("error", msg); }
  void warn(const std::string& msg) { write("warning", msg); }
  void info(const std::string& msg) {
    if (level_ >= LogLevel::kInfo) write("info", msg);
  }
  void debug(const std::string& msg) {
    if (level_ >= LogLevel::kDebug) write("debug", msg);
  }
  bool debug_enabled() const { return level_ >= LogLevel::kDebug; }

 private:
  void write(const char* tag, const std::string& msg) {
    std::lock_guard lock(mu_);
    err_ << "subtok: " << tag << ": " << msg << '\n';
  }

  LogLevel level_;
  std::ostream& err_;
  std::mutex mu_;
};

LogLevel log_level_from_env(std::ostream& err) {
  const char* raw = std::getenv("SUBTOK_LOG");
  if (raw == nullptr || *raw == '\0') return LogLevel::kInfo;
  const std::string value(raw);
  if (value == "error") return LogLevel::kError;
  if (value == "info") return LogLevel::kInfo;
  if (value == "debug") return LogLevel::kDebug;
  err << "subtok: warning: ignoring SUBTOK_LOG=" << value << " (expected error|info|debug)\n";
  return LogLevel::kInfo;
}

std::string fixed(double value, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

struct NormalizationFlags {
  std::string form = "nfc";
  bool lowercase = false;
  bool strip_punctuation = false;
  std::string punctuation;

  void attach(CLI::App* cmd) {
    cmd->add_option("--unicode-form", form, "Unicode normal form applied to input text")
        ->check(CLI::IsMember({"nfc", "nfkc", "none"}))
        ->capture_default_str();
    cmd->add_flag("--lowercase", lowercase, "Lowercase input text");
    cmd->add_flag("--strip-punctuation", strip_punctuation, "Remove punctuation");
    cmd->add_option("--punctuation", punctuation,
                    "Characters removed by --strip-punctuation (default: all Unicode P*)");
  }

  NormalizationConfig config() const {
    NormalizationConfig cfg;
    cfg.unicode_form = parse_unicode_form(form);
    cfg.lowercase = lowercase;
    cfg.strip_punctuation = strip_punctuation;
    for (char32_t c : utf8::decode(punctuation)) cfg.punctuation_set.insert(c);
    return cfg;
  }
};

RawCorpus read_corpus(const std::string& path, const NormalizationConfig& cfg, std::istream& in) {
  if (path.empty() || path == "-") return load_corpus(in, cfg, "<stdin>");
  return load_corpus(std::filesystem::path(path), cfg);
}

// Opens `path` for writing, or hands back `fallback` for an empty path.
class OutputSink {
 public:
  OutputSink(const std::string& path, std::ostream& fallback) : path_(path) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
      return;
    }
    file_.open(path, std::ios::binary);
    if (!file_) throw Error(ErrorCode::kIo, "cannot write " + path);
    stream_ = &file_;
  }

  std::ostream& stream() { return *stream_; }

  void finish() {
    stream_->flush();
    if (!*stream_) throw Error(ErrorCode::kIo, "write failed: " + (path_.empty() ? "<stdout>" : path_));
  }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

// Streams `path` line by line, or `fallback` for an empty path.
class InputSource {
 public:
  InputSource(const std::string& path, std::istream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
      return;
    }
    file_.open(path, std::ios::binary);
    if (!file_) throw Error(ErrorCode::kIo, "cannot open " + path);
    stream_ = &file_;
  }

  std::istream& stream() { return *stream_; }

 private:
  std::ifstream file_;
  std::istream* stream_ = nullptr;
};

// ----------------------------------------------------------------------------
// Shared stats columns for sweep and stats.

constexpr const char* kStatsColumns =
    "vocab_size\tavg_tokens_per_word\tavg_token_length\toov_char_rate\tcorpus_token_count\t"
    "word_coverage";

double word_coverage(const Lexicon& lexicon, const WordFrequencyTable& table) {
  std::uint64_t covered = 0;
  for (const auto& [word, count] : table.entries()) {
    const auto& tokens = lexicon.entries.find(word)->second;
    if (std::find(tokens.begin(), tokens.end(), lexicon.unk_token) == tokens.end()) {
      covered += count;
    }
  }
  return static_cast<double>(covered) / static_cast<double>(table.total_tokens());
}

std::string stats_fields(const Tokenizer& tokenizer, const WordFrequencyTable& table) {
  const Lexicon lexicon = tokenizer.build_lexicon(table);
  const TokenizationStats s = tokenization_stats(lexicon, table, tokenizer.vocab_size());
  std::ostringstream row;
  row << s.vocab_size << '\t' << fixed(s.avg_tokens_per_word) << '\t'
      << fixed(s.avg_token_length) << '\t' << fixed(s.oov_char_rate) << '\t'
      << s.corpus_token_count << '\t' << fixed(word_coverage(lexicon, table));
  return row.str();
}

// ----------------------------------------------------------------------------
// train

struct TrainArgs {
  std::string model;
  std::optional<std::size_t> vocab_size;
  double alpha = 0.2;
  std::string mode = "scalar";
  std::size_t em_iterations = 2;
  std::size_t max_seed_len = 8;
  bool exact_loss = false;
  std::string input;
  std::string output_dir;
  NormalizationFlags norm;
};

constexpr std::size_t kDefaultUnigramSize = 1000;

int cmd_train(const TrainArgs& args, std::istream& in, Log& log) {
  const auto start = std::chrono::steady_clock::now();
  const ModelKind kind = parse_model_kind(args.model);
  const SegmentationMode mode = parse_segmentation_mode(args.mode);
  if (kind == ModelKind::kBpe && !args.vocab_size) {
    throw UsageError("--vocab-size is required for bpe");
  }

  const WordFrequencyTable table = build_word_table(read_corpus(args.input, args.norm.config(), in));
  log.info("read " + std::to_string(table.size()) + " unique words, " +
           std::to_string(table.total_tokens()) + " tokens");

  std::ostringstream report;
  report << "kind\t" << to_string(kind) << '\n'
         << "mode\t" << to_string(mode) << '\n'
         << "unique_words\t" << table.size() << '\n'
         << "word_tokens\t" << table.total_tokens() << '\n';

  std::optional<Tokenizer> tokenizer;
  switch (kind) {
    case ModelKind::kChar: {
      tokenizer.emplace(train_char(table, mode));
      report << "target_vocab_size\t-\n";
      break;
    }
    case ModelKind::kBpe: {
      BpeTrainerConfig cfg;
      cfg.target_vocab_size = *args.vocab_size;
      cfg.mode = mode;
      BpeModel model = train_bpe(table, cfg);
      if (!model.reached_target()) {
        log.info("no bigrams left: stopped at vocab size " + std::to_string(model.vocab().size()) +
                 " of " + std::to_string(cfg.target_vocab_size));
      }
      report << "target_vocab_size\t" << cfg.target_vocab_size << '\n'
             << "inventory_size\t" << model.inventory_size() << '\n'
             << "merges\t" << model.merges().size() << '\n'
             << "reached_target\t" << (model.reached_target() ? "yes" : "no") << '\n';
      tokenizer.emplace(std::move(model));
      break;
    }
    case ModelKind::kUnigram: {
      UnigramTrainerConfig cfg;
      cfg.target_vocab_size = args.vocab_size.value_or(kDefaultUnigramSize);
      cfg.alpha = args.alpha;
      cfg.em_iterations = args.em_iterations;
      cfg.max_seed_substring_len = args.max_seed_len;
      cfg.exact_loss = args.exact_loss;
      cfg.mode = mode;
      cfg.validate();
      UnigramTrainingLog training;
      UnigramModel model = train_unigram(table, cfg, &training);
      if (training.floor_reached) {
        log.info("only single character units remain: stopped at vocab size " +
                 std::to_string(model.size()) + " of " + std::to_string(cfg.target_vocab_size));
      }
      report << "target_vocab_size\t" << cfg.target_vocab_size << '\n'
             << "alpha\t" << cfg.alpha << '\n'
             << "seed_size\t" << training.seed_size << '\n'
             << "rounds\t" << training.rounds.size() << '\n'
             << "floor_reached\t" << (training.floor_reached ? "yes" : "no") << '\n';
      for (std::size_t r = 0; r < training.rounds.size(); ++r) {
        const PruneRound& round = training.rounds[r];
        report << "round\t" << r + 1 << '\t' << round.vocab_before << '\t' << round.removed << '\t'
               << round.vocab_after << '\t' << fixed(round.perplexity) << '\n';
        log.debug("round " + std::to_string(r + 1) + ": " + std::to_string(round.vocab_before) +
                  " -> " + std::to_string(round.vocab_after));
      }
      tokenizer.emplace(std::move(model));
      break;
    }
  }

  const std::filesystem::path dir(args.output_dir);
  save_model(dir, *tokenizer);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report << "vocab_size\t" << tokenizer->vocab_size() << '\n'
         << "wall_time_seconds\t" << fixed(seconds, 3) << '\n';
  OutputSink sink((dir / "train.log").string(), std::cerr);
  sink.stream() << report.str();
  sink.finish();
  log.info("wrote " + std::string(to_string(kind)) + " model with " +
           std::to_string(tokenizer->vocab_size()) + " tokens to " + dir.string());
  return kExitOk;
}

// ----------------------------------------------------------------------------
// encode / decode

struct StreamArgs {
  std::string model_dir;
  std::string input;
  std::string output;
  std::string unk_token{kDefaultUnkToken};
  NormalizationFlags norm;
};

int cmd_encode(const StreamArgs& args, std::istream& in, std::ostream& out) {
  const Tokenizer tokenizer = load_model(args.model_dir);
  const NormalizationConfig cfg = args.norm.config();
  InputSource source(args.input, in);
  OutputSink sink(args.output, out);
  std::ostream& dst = sink.stream();
  std::string raw;
  for (std::size_t line_no = 1; std::getline(source.stream(), raw); ++line_no) {
    std::string line;
    try {
      line = normalize_text(clean_line(raw), cfg);
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.detail());
    }
    bool first_word = true;
    for (std::string_view word : utf8::split_whitespace(line)) {
      if (!first_word) dst << '\t';
      first_word = false;
      bool first_token = true;
      for (const auto& token : tokenizer.encode_word(word)) {
        if (!first_token) dst << ' ';
        first_token = false;
        dst << token;
      }
    }
    dst << '\n';
  }
  sink.finish();
  return kExitOk;
}

int cmd_decode(const StreamArgs& args, std::istream& in, std::ostream& out, Log& log) {
  std::string unk = args.unk_token;
  if (!args.model_dir.empty()) unk = load_model(args.model_dir).unk_token();
  InputSource source(args.input, in);
  OutputSink sink(args.output, out);
  std::ostream& dst = sink.stream();
  std::size_t lossy_lines = 0;
  std::string raw;
  for (std::size_t line_no = 1; std::getline(source.stream(), raw); ++line_no) {
    std::string line;
    try {
      line = clean_line(raw);
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.detail());
    }
    bool lossy = false;
    bool first_word = true;
    std::istringstream words(line);
    std::string field;
    while (std::getline(words, field, '\t')) {
      std::vector<std::string> tokens;
      std::istringstream pieces(field);
      std::string token;
      while (std::getline(pieces, token, ' ')) {
        if (!token.empty()) tokens.push_back(std::move(token));
      }
      if (tokens.empty()) continue;
      const DecodeResult word = decode(tokens, unk);
      lossy = lossy || word.lossy;
      if (!first_word) dst << ' ';
      first_word = false;
      dst << word.text;
    }
    dst << '\n';
    if (lossy) {
      ++lossy_lines;
      log.warn("line " + std::to_string(line_no) + ": contains " + unk +
               "; decoded text is lossy");
    }
  }
  sink.finish();
  if (lossy_lines > 0) log.info(std::to_string(lossy_lines) + " lossy line(s)");
  return kExitOk;
}

// ----------------------------------------------------------------------------
// lexicon

int cmd_lexicon(const StreamArgs& args, std::istream& in, std::ostream& out) {
  const Tokenizer tokenizer = load_model(args.model_dir);
  const WordFrequencyTable table = build_word_table(read_corpus(args.input, args.norm.config(), in));
  OutputSink sink(args.output, out);
  write_lexicon(sink.stream(), tokenizer.build_lexicon(table));
  sink.finish();
  return kExitOk;
}

// ----------------------------------------------------------------------------
// eval

struct EvalArgs {
  std::string ref;
  std::string hyp;
  std::string level = "word";
  std::string model_dir;
  std::string output;
  NormalizationFlags norm;
};

int cmd_eval(const EvalArgs& args, std::ostream& out) {
  std::optional<Tokenizer> tokenizer;
  if (args.level == "token") {
    if (args.model_dir.empty()) throw UsageError("--level token needs --model-dir");
    tokenizer.emplace(load_model(args.model_dir));
  }
  const NormalizationConfig cfg = args.norm.config();
  const RawCorpus ref = load_corpus(std::filesystem::path(args.ref), cfg);
  const RawCorpus hyp = load_corpus(std::filesystem::path(args.hyp), cfg);
  if (ref.lines.size() != hyp.lines.size()) {
    throw Error(ErrorCode::kConsistency,
                "line count mismatch: reference has " + std::to_string(ref.lines.size()) +
                    " lines, hypothesis has " + std::to_string(hyp.lines.size()));
  }

  auto units = [&](const std::string& line) {
    std::vector<std::string> seq;
    for (std::string_view word : utf8::split_whitespace(line)) {
      if (!tokenizer) {
        seq.emplace_back(word);
        continue;
      }
      for (auto& token : tokenizer->encode_word(word)) seq.push_back(std::move(token));
    }
    return seq;
  };

  OutputSink sink(args.output, out);
  std::ostream& dst = sink.stream();
  dst << "line\tsubstitutions\tinsertions\tdeletions\treference_length\terror_rate\n";
  Alignment pooled;
  std::size_t pooled_length = 0;
  for (std::size_t i = 0; i < ref.lines.size(); ++i) {
    const auto r = units(ref.lines[i]);
    const auto h = units(hyp.lines[i]);
    const Alignment a = edit_distance(r, h);
    pooled.substitutions += a.substitutions;
    pooled.insertions += a.insertions;
    pooled.deletions += a.deletions;
    pooled_length += r.size();
    dst << i + 1 << '\t' << a.substitutions << '\t' << a.insertions << '\t' << a.deletions << '\t'
        << r.size() << '\t'
        << (r.empty() ? std::string("undefined")
                      : fixed(static_cast<double>(a.distance) / static_cast<double>(r.size())))
        << '\n';
  }
  if (pooled_length == 0) {
    throw Error(ErrorCode::kUndefinedRate, "reference file holds no " + args.level + "s");
  }
  const std::size_t edits = pooled.substitutions + pooled.insertions + pooled.deletions;
  dst << "pooled\t" << pooled.substitutions << '\t' << pooled.insertions << '\t'
      << pooled.deletions << '\t' << pooled_length << '\t'
      << fixed(static_cast<double>(edits) / static_cast<double>(pooled_length)) << '\n';
  sink.finish();
  return kExitOk;
}

// ----------------------------------------------------------------------------
// sweep

struct SweepArgs {
  std::string input;
  std::vector<std::string> evals;
  std::vector<std::size_t> sizes{500, 1000, 2000, 3000};
  std::vector<std::string> kinds{"char", "bpe", "unigram"};
  std::string mode = "scalar";
  double alpha = 0.2;
  std::size_t jobs = 1;
  std::string output;
  NormalizationFlags norm;
};

struct SweepCorpus {
  std::string label;
  WordFrequencyTable table;
};

struct SweepCell {
  ModelKind kind;
  std::optional<std::size_t> size;  // none for the character baseline
};

std::vector<std::string> run_cell(const SweepCell& cell, SegmentationMode mode, double alpha,
                                  const std::vector<SweepCorpus>& corpora, Log& log) {
  const std::string kind(to_string(cell.kind));
  const std::string size = cell.size ? std::to_string(*cell.size) : "-";
  std::vector<std::string> rows;
  try {
    const WordFrequencyTable& train = corpora.front().table;
    std::optional<Tokenizer> tokenizer;
    switch (cell.kind) {
      case ModelKind::kChar: tokenizer.emplace(train_char(train, mode)); break;
      case ModelKind::kBpe: {
        BpeTrainerConfig cfg;
        cfg.target_vocab_size = *cell.size;
        cfg.mode = mode;
        tokenizer.emplace(train_bpe(train, cfg));
        break;
      }
      case ModelKind::kUnigram: {
        UnigramTrainerConfig cfg;
        cfg.target_vocab_size = *cell.size;
        cfg.alpha = alpha;
        cfg.mode = mode;
        tokenizer.emplace(train_unigram(train, cfg));
        break;
      }
    }
    for (const auto& corpus : corpora) {
      rows.push_back(kind + '\t' + size + '\t' + corpus.label + '\t' +
                     stats_fields(*tokenizer, corpus.table) + "\tok");
    }
    log.info("sweep cell " + kind + "/" + size + " done");
  } catch (const std::exception& e) {
    log.error("sweep cell " + kind + "/" + size + " failed: " + e.what());
    rows.clear();
    for (const auto& corpus : corpora) {
      rows.push_back(kind + '\t' + size + '\t' + corpus.label + "\t-\t-\t-\t-\t-\t-\terror");
    }
  }
  return rows;
}

int cmd_sweep(const SweepArgs& args, std::istream& in, std::ostream& out, Log& log) {
  const SegmentationMode mode = parse_segmentation_mode(args.mode);
  for (std::size_t i = 0; i < args.sizes.size(); ++i) {
    if (args.sizes[i] < 1 || (i > 0 && args.sizes[i] <= args.sizes[i - 1])) {
      throw UsageError("--sizes must be strictly increasing and at least 1");
    }
  }
  if (args.sizes.empty()) throw UsageError("--sizes is empty");
  if (!(args.alpha >= 0.0 && args.alpha <= 1.0)) throw UsageError("--alpha must lie in [0, 1]");

  std::vector<ModelKind> kinds;
  for (const ModelKind k : {ModelKind::kChar, ModelKind::kBpe, ModelKind::kUnigram}) {
    if (std::find(args.kinds.begin(), args.kinds.end(), to_string(k)) != args.kinds.end()) {
      kinds.push_back(k);
    }
  }

  const NormalizationConfig cfg = args.norm.config();
  std::vector<SweepCorpus> corpora;
  corpora.push_back({"train", build_word_table(read_corpus(args.input, cfg, in))});
  for (const auto& spec : args.evals) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      throw UsageError("--eval expects label=path, got '" + spec + "'");
    }
    std::string label = spec.substr(0, eq);
    for (const auto& c : corpora) {
      if (c.label == label) throw UsageError("duplicate corpus label '" + label + "'");
    }
    corpora.push_back(
        {label, build_word_table(load_corpus(std::filesystem::path(spec.substr(eq + 1)), cfg))});
  }

  std::vector<SweepCell> cells;
  for (const ModelKind k : kinds) {
    if (k == ModelKind::kChar) {
      cells.push_back({k, std::nullopt});
      continue;
    }
    for (std::size_t n : args.sizes) cells.push_back({k, n});
  }

  std::vector<std::vector<std::string>> results(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      results[i] = run_cell(cells[i], mode, args.alpha, corpora, log);
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(args.jobs, cells.size()));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  OutputSink sink(args.output, out);
  std::ostream& dst = sink.stream();
  dst << "# tokenizer-level statistics per model and corpus; word error rates need an acoustic "
         "model and are not computed\n";
  dst << "kind\tsize\tcorpus\t" << kStatsColumns << "\tstatus\n";
  std::size_t failed = 0;
  for (const auto& rows : results) {
    for (const auto& row : rows) {
      dst << row << '\n';
      if (row.ends_with("\terror")) ++failed;
    }
  }
  sink.finish();
  if (failed > 0) {
    log.error(std::to_string(failed) + " sweep row(s) failed");
    return kExitRuntime;
  }
  return kExitOk;
}

// ----------------------------------------------------------------------------
// stats

int cmd_stats(const StreamArgs& args, std::istream& in, std::ostream& out) {
  const Tokenizer tokenizer = load_model(args.model_dir);
  const WordFrequencyTable table = build_word_table(read_corpus(args.input, args.norm.config(), in));
  OutputSink sink(args.output, out);
  sink.stream() << kStatsColumns << '\n' << stats_fields(tokenizer, table) << '\n';
  sink.finish();
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err) {
  Log log(log_level_from_env(err), err);

  CLI::App app{"Subword tokenization toolkit: character, BPE and unigram tokenizers", "subtok"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "subtok 0.1.0");

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train a tokenizer and write its model files");
  train_cmd->add_option("--model", train.model, "Model kind")
      ->required()
      ->check(CLI::IsMember({"char", "bpe", "unigram"}));
  train_cmd->add_option("--vocab-size", train.vocab_size,
                        "Target vocabulary size (bpe: required, unigram: 1000)")
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--alpha", train.alpha, "Unigram pruning fraction per round")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  train_cmd->add_option("--mode", train.mode, "Character unit")
      ->check(CLI::IsMember({"scalar", "grapheme"}))
      ->capture_default_str();
  train_cmd->add_option("--em-iterations", train.em_iterations, "Unigram hard-EM iterations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train_cmd->add_option("--max-seed-len", train.max_seed_len,
                        "Longest unigram seed substring, in character units")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train_cmd->add_flag("--exact-loss", train.exact_loss, "Refit per candidate when pruning");
  train_cmd->add_option("--input", train.input, "Training corpus (default: stdin)");
  train_cmd->add_option("--output-dir", train.output_dir, "Directory for model files")->required();
  train.norm.attach(train_cmd);

  StreamArgs encode;
  auto* encode_cmd = app.add_subcommand("encode", "Tokenize text: TAB between words, SPACE between tokens");
  encode_cmd->add_option("--model-dir", encode.model_dir, "Trained model directory")->required();
  encode_cmd->add_option("--input", encode.input, "Text to encode (default: stdin)");
  encode_cmd->add_option("--output", encode.output, "Destination (default: stdout)");
  encode.norm.attach(encode_cmd);

  StreamArgs decode_args;
  auto* decode_cmd = app.add_subcommand("decode", "Invert encode output back to text");
  decode_cmd->add_option("--model-dir", decode_args.model_dir, "Model whose unk token to honor");
  decode_cmd->add_option("--unk-token", decode_args.unk_token, "Unknown token without --model-dir")
      ->capture_default_str();
  decode_cmd->add_option("--input", decode_args.input, "Encoded text (default: stdin)");
  decode_cmd->add_option("--output", decode_args.output, "Destination (default: stdout)");

  StreamArgs lexicon;
  auto* lexicon_cmd = app.add_subcommand("lexicon", "Write the word-to-tokens lexicon of a corpus");
  lexicon_cmd->add_option("--model-dir", lexicon.model_dir, "Trained model directory")->required();
  lexicon_cmd->add_option("--input", lexicon.input, "Corpus (default: stdin)");
  lexicon_cmd->add_option("--output", lexicon.output, "Destination (default: stdout)");
  lexicon.norm.attach(lexicon_cmd);

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Word or token error rate of line-aligned files");
  eval_cmd->add_option("--ref", eval.ref, "Reference transcripts")->required();
  eval_cmd->add_option("--hyp", eval.hyp, "Hypothesis transcripts")->required();
  eval_cmd->add_option("--level", eval.level, "Scoring unit")
      ->check(CLI::IsMember({"word", "token"}))
      ->capture_default_str();
  eval_cmd->add_option("--model-dir", eval.model_dir, "Tokenizer for --level token");
  eval_cmd->add_option("--output", eval.output, "Report destination (default: stdout)");
  eval.norm.attach(eval_cmd);

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Train every kind and size, report stats per corpus");
  sweep_cmd->add_option("--input", sweep.input, "Training corpus (default: stdin)");
  sweep_cmd->add_option("--eval", sweep.evals, "Evaluation corpora as label=path")->delimiter(',');
  sweep_cmd->add_option("--sizes", sweep.sizes, "Target vocabulary sizes")
      ->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--kinds", sweep.kinds, "Model kinds")
      ->delimiter(',')
      ->check(CLI::IsMember({"char", "bpe", "unigram"}))
      ->capture_default_str();
  sweep_cmd->add_option("--mode", sweep.mode, "Character unit")
      ->check(CLI::IsMember({"scalar", "grapheme"}))
      ->capture_default_str();
  sweep_cmd->add_option("--alpha", sweep.alpha, "Unigram pruning fraction per round")
      ->capture_default_str();
  sweep_cmd->add_option("--jobs", sweep.jobs, "Cells trained in parallel")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_cmd->add_option("--output", sweep.output, "Report destination (default: stdout)");
  sweep.norm.attach(sweep_cmd);

  StreamArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "Tokenization statistics of a model on a corpus");
  stats_cmd->add_option("--model-dir", stats.model_dir, "Trained model directory")->required();
  stats_cmd->add_option("--input", stats.input, "Corpus (default: stdin)");
  stats_cmd->add_option("--output", stats.output, "Destination (default: stdout)");
  stats.norm.attach(stats_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train_cmd) return cmd_train(train, in, log);
    if (*encode_cmd) return cmd_encode(encode, in, out);
    if (*decode_cmd) return cmd_decode(decode_args, in, out, log);
    if (*lexicon_cmd) return cmd_lexicon(lexicon, in, out);
    if (*eval_cmd) return cmd_eval(eval, out);
    if (*sweep_cmd) return cmd_sweep(sweep, in, out, log);
    if (*stats_cmd) return cmd_stats(stats, in, out);
  } catch (const UsageError& e) {
    log.error(e.what());
    return kExitUsage;
  } catch (const Error& e) {
    log.error(e.what());
    return e.code() == ErrorCode::kInvalidArgument ? kExitUsage : kExitRuntime;
  } catch (const std::exception& e) {
    log.error(e.what());
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace subtok::cli
