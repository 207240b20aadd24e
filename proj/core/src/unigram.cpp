#include "subtok/unigram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "subtok/charset.hpp"
#include "subtok/error.hpp"

namespace subtok {
namespace {

constexpr std::int32_t kUnkId = -1;
constexpr std::int32_t kNoExclusion = -2;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Edge {
  std::uint32_t end;
  std::int32_t token;  // kUnkId for an unknown unit
};

// Candidate tokens starting at each unit position of one word.
struct Lattice {
  std::vector<std::vector<Edge>> from;
  std::vector<std::size_t> offsets;  // byte offset of each unit boundary

  std::size_t length() const { return from.size(); }
};

std::vector<std::size_t> unit_offsets(std::string_view word, SegmentationMode mode) {
  std::vector<std::size_t> offsets{0};
  for (const auto& unit : segment_word(word, mode)) offsets.push_back(offsets.back() + unit.size());
  return offsets;
}

template <typename Lookup>
Lattice build_lattice(std::string_view word, SegmentationMode mode, std::size_t max_units,
                      Lookup&& lookup) {
  Lattice lat;
  lat.offsets = unit_offsets(word, mode);
  const std::size_t length = lat.offsets.size() - 1;
  lat.from.resize(length);
  for (std::size_t i = 0; i < length; ++i) {
    bool has_single = false;
    for (std::size_t len = 1; len <= max_units && i + len <= length; ++len) {
      const std::string_view piece =
          word.substr(lat.offsets[i], lat.offsets[i + len] - lat.offsets[i]);
      if (auto id = lookup(piece); id >= 0) {
        lat.from[i].push_back({static_cast<std::uint32_t>(i + len), id});
        if (len == 1) has_single = true;
      }
    }
    if (!has_single) lat.from[i].push_back({static_cast<std::uint32_t>(i + 1), kUnkId});
  }
  return lat;
}

bool scores_tie(double a, double b) {
  return std::fabs(a - b) <= 1e-12 * std::max({1.0, std::fabs(a), std::fabs(b)});
}

// True if (score_a, count_a) is strictly preferable: higher score, then
// fewer tokens. Returns nullopt on a full tie.
std::optional<bool> prefer(double score_a, std::size_t count_a, double score_b,
                           std::size_t count_b) {
  if (!scores_tie(score_a, score_b)) return score_a > score_b;
  if (count_a != count_b) return count_a < count_b;
  return std::nullopt;
}

struct Path {
  bool valid = false;
  double score = 0.0;
  std::vector<std::int32_t> tokens;
};

// Suffix dynamic program so that, among equal (score, count) paths, the
// lexicographically smallest sequence can be decided by its first token.
template <typename LogProb, typename Name>
Path best_path(const Lattice& lat, LogProb&& log_prob, Name&& name,
               std::int32_t excluded = kNoExclusion) {
  struct State {
    bool valid = false;
    double score = 0.0;
    std::size_t count = 0;
    std::int32_t token = 0;
    std::uint32_t next = 0;
  };
  const std::size_t length = lat.length();
  std::vector<State> best(length + 1);
  best[length] = {true, 0.0, 0, 0, 0};
  for (std::size_t i = length; i-- > 0;) {
    State& cur = best[i];
    for (const Edge& e : lat.from[i]) {
      if (e.token == excluded) continue;
      const State& tail = best[e.end];
      if (!tail.valid) continue;
      const double score = log_prob(e.token) + tail.score;
      const std::size_t count = tail.count + 1;
      bool take = !cur.valid;
      if (!take) {
        if (auto p = prefer(score, count, cur.score, cur.count)) {
          take = *p;
        } else {
          take = e.token != cur.token && name(e.token) < name(cur.token);
        }
      }
      if (take) cur = {true, score, count, e.token, e.end};
    }
  }
  Path path;
  if (!best[0].valid) return path;
  path.valid = true;
  path.score = best[0].score;
  for (std::size_t i = 0; i < length; i = best[i].next) path.tokens.push_back(best[i].token);
  return path;
}

// Best score for every token count k (index k), excluding one token id.
template <typename LogProb>
std::vector<double> score_profile(const Lattice& lat, LogProb&& log_prob,
                                  std::int32_t excluded = kNoExclusion) {
  const std::size_t length = lat.length();
  std::vector<std::vector<double>> f(length + 1, std::vector<double>(length + 1, kNegInf));
  f[0][0] = 0.0;
  for (std::size_t i = 0; i < length; ++i) {
    for (const Edge& e : lat.from[i]) {
      if (e.token == excluded) continue;
      const double lp = log_prob(e.token);
      for (std::size_t k = 0; k < length; ++k) {
        if (f[i][k] == kNegInf) continue;
        f[e.end][k + 1] = std::max(f[e.end][k + 1], f[i][k] + lp);
      }
    }
  }
  return f[length];
}

std::vector<double> normalize_counts(const std::vector<double>& counts) {
  double total = kSmoothing * static_cast<double>(counts.size());
  for (double c : counts) total += c;
  const double log_total = std::log(total);
  std::vector<double> log_probs(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    log_probs[i] = std::log(counts[i] + kSmoothing) - log_total;
  }
  return log_probs;
}

// Word lattices over a fixed token list, shared by fitting and loss scoring.
class TrainingLattices {
 public:
  TrainingLattices(const std::vector<std::string>& tokens, const WordFrequencyTable& table,
                   SegmentationMode mode)
      : tokens_(tokens) {
    std::unordered_map<std::string, std::int32_t, StringHash, std::equal_to<>> index;
    std::size_t max_units = 1;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      index.emplace(tokens[i], static_cast<std::int32_t>(i));
      max_units = std::max(max_units, unit_length(tokens[i], mode));
    }
    for (const auto& [word, count] : table.entries()) {
      Lattice lat = build_lattice(word, mode, max_units, [&](std::string_view piece) {
        auto it = index.find(piece);
        return it == index.end() ? kUnkId : it->second;
      });
      for (std::size_t i = 0; i < lat.length(); ++i) {
        for (const Edge& e : lat.from[i]) {
          if (e.token == kUnkId) {
            throw Error(ErrorCode::kCoverage,
                        "character '" +
                            word.substr(lat.offsets[i], lat.offsets[i + 1] - lat.offsets[i]) +
                            "' of word '" + word + "' is not in the vocabulary");
          }
        }
      }
      lattices_.push_back(std::move(lat));
      weights_.push_back(static_cast<double>(count));
    }
  }

  std::size_t size() const { return lattices_.size(); }
  const Lattice& lattice(std::size_t w) const { return lattices_[w]; }
  double weight(std::size_t w) const { return weights_[w]; }

  Path viterbi(std::size_t w, const std::vector<double>& log_probs,
               std::int32_t excluded = kNoExclusion) const {
    return best_path(
        lattices_[w], [&](std::int32_t t) { return log_probs[t]; },
        [&](std::int32_t t) -> const std::string& { return tokens_[t]; }, excluded);
  }

  std::vector<double> fit(std::size_t em_iterations) const {
    std::vector<double> counts(tokens_.size(), 0.0);
    for (std::size_t w = 0; w < size(); ++w) {
      for (const auto& edges : lattices_[w].from) {
        for (const Edge& e : edges) counts[e.token] += weights_[w];
      }
    }
    std::vector<double> log_probs = normalize_counts(counts);
    for (std::size_t iter = 0; iter < em_iterations; ++iter) {
      std::fill(counts.begin(), counts.end(), 0.0);
      for (std::size_t w = 0; w < size(); ++w) {
        for (std::int32_t t : viterbi(w, log_probs).tokens) counts[t] += weights_[w];
      }
      log_probs = normalize_counts(counts);
    }
    return log_probs;
  }

 private:
  const std::vector<std::string>& tokens_;
  std::vector<Lattice> lattices_;
  std::vector<double> weights_;
};

std::vector<ScoredToken> sorted_pieces(const std::vector<std::string>& tokens,
                                       const std::vector<double>& log_probs) {
  std::vector<ScoredToken> pieces;
  pieces.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) pieces.push_back({tokens[i], log_probs[i]});
  std::sort(pieces.begin(), pieces.end(), [](const ScoredToken& a, const ScoredToken& b) {
    if (a.log_prob != b.log_prob) return a.log_prob > b.log_prob;
    return a.token < b.token;
  });
  return pieces;
}

UnigramModel fit_with_config(const std::set<std::string>& vocab, const WordFrequencyTable& table,
                             const UnigramTrainerConfig& cfg) {
  if (table.empty()) throw Error(ErrorCode::kEmptyCorpus, "empty word table");
  std::vector<std::string> tokens(vocab.begin(), vocab.end());
  TrainingLattices lattices(tokens, table, cfg.mode);
  return UnigramModel(sorted_pieces(tokens, lattices.fit(cfg.em_iterations)), cfg);
}

bool is_prunable(std::string_view token, SegmentationMode mode) {
  return unit_length(token, mode) >= 2;
}

}  // namespace

void UnigramTrainerConfig::validate() const {
  if (target_vocab_size < 1) {
    throw Error(ErrorCode::kInvalidArgument, "target vocabulary size must be >= 1");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must lie in [0, 1]");
  }
  if (max_seed_substring_len < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max seed substring length must be >= 1");
  }
  if (em_iterations < 1) {
    throw Error(ErrorCode::kInvalidArgument, "EM iterations must be >= 1");
  }
}

UnigramModel::UnigramModel(std::vector<ScoredToken> pieces, UnigramTrainerConfig config,
                           std::string unk_token, double unk_log_prob)
    : pieces_(std::move(pieces)),
      config_(config),
      unk_token_(std::move(unk_token)),
      unk_log_prob_(unk_log_prob) {
  if (pieces_.empty()) throw Error(ErrorCode::kConsistency, "empty unigram vocabulary");
  if (unk_token_.empty()) throw Error(ErrorCode::kConsistency, "empty unk token");
  if (!std::isfinite(unk_log_prob_)) {
    throw Error(ErrorCode::kConsistency, "unk log-probability must be finite");
  }
  long double mass = 0.0L;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const ScoredToken& piece = pieces_[i];
    if (piece.token.empty()) throw Error(ErrorCode::kConsistency, "empty token");
    if (!std::isfinite(piece.log_prob)) {
      throw Error(ErrorCode::kConsistency, "non-finite log-probability for '" + piece.token + "'");
    }
    if (piece.token == unk_token_) {
      throw Error(ErrorCode::kConsistency, "unk token '" + unk_token_ + "' is a vocabulary token");
    }
    if (!index_.emplace(piece.token, i).second) {
      throw Error(ErrorCode::kConsistency, "duplicate token '" + piece.token + "'");
    }
    max_token_units_ = std::max(max_token_units_, unit_length(piece.token, config_.mode));
    mass += std::exp(static_cast<long double>(piece.log_prob));
  }
  if (std::fabs(static_cast<double>(mass) - 1.0) > 1e-9) {
    throw Error(ErrorCode::kConsistency, "token probabilities sum to " +
                                             std::to_string(static_cast<double>(mass)));
  }
}

std::vector<std::string> UnigramModel::vocab() const {
  std::vector<std::string> tokens;
  tokens.reserve(pieces_.size());
  for (const auto& piece : pieces_) tokens.push_back(piece.token);
  return tokens;
}

std::optional<double> UnigramModel::log_prob(std::string_view token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return pieces_[it->second].log_prob;
}

Segmentation UnigramModel::viterbi(std::string_view word) const {
  if (word.empty()) throw Error(ErrorCode::kInvalidArgument, "cannot encode an empty word");
  const Lattice lat =
      build_lattice(word, config_.mode, max_token_units_, [&](std::string_view piece) {
        auto it = index_.find(piece);
        return it == index_.end() ? kUnkId : static_cast<std::int32_t>(it->second);
      });
  const Path path = best_path(
      lat,
      [&](std::int32_t t) { return t == kUnkId ? unk_log_prob_ : pieces_[t].log_prob; },
      [&](std::int32_t t) -> const std::string& {
        return t == kUnkId ? unk_token_ : pieces_[t].token;
      });
  Segmentation seg;
  seg.score = path.score;
  for (std::int32_t t : path.tokens) seg.tokens.push_back(t == kUnkId ? unk_token_ : pieces_[t].token);
  return seg;
}

bool UnigramModel::operator==(const UnigramModel& other) const {
  return pieces_ == other.pieces_ && config_ == other.config_ &&
         unk_token_ == other.unk_token_ && unk_log_prob_ == other.unk_log_prob_;
}

std::set<std::string> seed_vocab(const WordFrequencyTable& table,
                                 const UnigramTrainerConfig& cfg) {
  cfg.validate();
  if (table.empty()) throw Error(ErrorCode::kEmptyCorpus, "empty word table");
  std::unordered_map<std::string, std::uint64_t, StringHash, std::equal_to<>> occurrences;
  std::set<std::string> seed;
  for (const auto& [word, count] : table.entries()) {
    const auto offsets = unit_offsets(word, cfg.mode);
    const std::size_t length = offsets.size() - 1;
    for (std::size_t i = 0; i < length; ++i) {
      seed.insert(word.substr(offsets[i], offsets[i + 1] - offsets[i]));
      for (std::size_t len = 2; len <= cfg.max_seed_substring_len && i + len <= length; ++len) {
        const std::string_view piece =
            std::string_view(word).substr(offsets[i], offsets[i + len] - offsets[i]);
        auto it = occurrences.find(piece);
        if (it == occurrences.end()) {
          occurrences.emplace(std::string(piece), count);
        } else {
          it->second += count;
        }
      }
    }
  }
  for (const auto& [piece, n] : occurrences) {
    if (n >= 2) seed.insert(piece);
  }
  return seed;
}

UnigramModel fit_lm(const std::set<std::string>& vocab, const WordFrequencyTable& table,
                    std::size_t em_iterations, SegmentationMode mode) {
  UnigramTrainerConfig cfg;
  cfg.em_iterations = em_iterations;
  cfg.mode = mode;
  cfg.target_vocab_size = vocab.size();
  return fit_with_config(vocab, table, cfg);
}

Segmentation viterbi_encode(const UnigramModel& model, std::string_view word) {
  return model.viterbi(word);
}

double perplexity(const UnigramModel& model, const WordFrequencyTable& table) {
  if (table.empty()) throw Error(ErrorCode::kEmptyCorpus, "empty word table");
  double score = 0.0;
  double tokens = 0.0;
  for (const auto& [word, count] : table.entries()) {
    const Segmentation seg = model.viterbi(word);
    score += static_cast<double>(count) * seg.score;
    tokens += static_cast<double>(count) * static_cast<double>(seg.tokens.size());
  }
  return std::exp(-score / tokens);
}

TokenLoss token_loss(const UnigramModel& model, const WordFrequencyTable& table,
                     std::string_view token, LossMode mode, std::size_t em_iterations) {
  const auto token_log_prob = model.log_prob(token);
  if (!token_log_prob) {
    throw Error(ErrorCode::kInvalidArgument,
                "token '" + std::string(token) + "' is not in the vocabulary");
  }
  if (!is_prunable(token, model.mode())) {
    throw Error(ErrorCode::kUnprunable,
                "'" + std::string(token) + "' is a single character unit");
  }
  const double base = perplexity(model, table);
  if (mode == LossMode::kExact) {
    std::set<std::string> reduced;
    for (const auto& piece : model.pieces()) {
      if (piece.token != token) reduced.insert(piece.token);
    }
    UnigramTrainerConfig cfg = model.config();
    cfg.em_iterations = em_iterations;
    return {std::string(token), base - perplexity(fit_with_config(reduced, table, cfg), table)};
  }
  const double shift = std::log1p(-std::exp(*token_log_prob));
  std::vector<ScoredToken> kept;
  for (const auto& piece : model.pieces()) {
    if (piece.token != token) kept.push_back({piece.token, piece.log_prob - shift});
  }
  const UnigramModel reduced(std::move(kept), model.config(), model.unk_token(),
                             model.unk_log_prob());
  return {std::string(token), base - perplexity(reduced, table)};
}

std::vector<TokenLoss> token_losses(const UnigramModel& model, const WordFrequencyTable& table,
                                    const UnigramTrainerConfig& cfg) {
  std::vector<std::string> tokens;
  for (const auto& piece : model.pieces()) tokens.push_back(piece.token);
  std::sort(tokens.begin(), tokens.end());

  std::vector<TokenLoss> losses;
  if (cfg.exact_loss) {
    for (const auto& token : tokens) {
      if (is_prunable(token, model.mode())) {
        losses.push_back(token_loss(model, table, token, LossMode::kExact, cfg.em_iterations));
      }
    }
    return losses;
  }

  std::vector<double> log_probs(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) log_probs[i] = *model.log_prob(tokens[i]);
  const TrainingLattices lattices(tokens, table, model.mode());
  const auto lp = [&](std::int32_t t) { return log_probs[t]; };

  // Removing token t scales every other probability by 1 / (1 - p_t), which
  // adds `shift` per token to each path: only paths through t disappear, so
  // per-word score profiles by token count are reusable for other words.
  std::vector<std::vector<double>> profiles(lattices.size());
  std::vector<std::vector<std::uint32_t>> words_with(tokens.size());
  double base_score = 0.0;
  double base_tokens = 0.0;
  for (std::size_t w = 0; w < lattices.size(); ++w) {
    profiles[w] = score_profile(lattices.lattice(w), lp);
    const Path path = lattices.viterbi(w, log_probs);
    base_score += lattices.weight(w) * path.score;
    base_tokens += lattices.weight(w) * static_cast<double>(path.tokens.size());
    for (const auto& edges : lattices.lattice(w).from) {
      for (const Edge& e : edges) {
        auto& list = words_with[e.token];
        if (list.empty() || list.back() != w) list.push_back(static_cast<std::uint32_t>(w));
      }
    }
  }
  const double base = std::exp(-base_score / base_tokens);

  std::vector<std::uint32_t> stamp(lattices.size(), 0);
  std::vector<std::vector<double>> replaced(lattices.size());
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    if (!is_prunable(tokens[t], model.mode())) continue;
    const std::uint32_t mark = static_cast<std::uint32_t>(t + 1);
    for (std::uint32_t w : words_with[t]) {
      stamp[w] = mark;
      replaced[w] = score_profile(lattices.lattice(w), lp, static_cast<std::int32_t>(t));
    }
    const double shift = -std::log1p(-std::exp(log_probs[t]));
    double score = 0.0;
    double count = 0.0;
    for (std::size_t w = 0; w < lattices.size(); ++w) {
      const auto& profile = stamp[w] == mark ? replaced[w] : profiles[w];
      double best_score = kNegInf;
      std::size_t best_k = 0;
      for (std::size_t k = 1; k < profile.size(); ++k) {
        if (profile[k] == kNegInf) continue;
        const double s = profile[k] + static_cast<double>(k) * shift;
        if (best_k == 0 || prefer(s, k, best_score, best_k).value_or(false)) {
          best_score = s;
          best_k = k;
        }
      }
      score += lattices.weight(w) * best_score;
      count += lattices.weight(w) * static_cast<double>(best_k);
    }
    losses.push_back({tokens[t], base - std::exp(-score / count)});
  }
  return losses;
}

std::size_t prune_count(std::size_t vocab_size, std::size_t target, double alpha) {
  if (vocab_size <= target) return 0;
  const auto capped =
      static_cast<std::size_t>(std::floor(alpha * static_cast<double>(vocab_size) + 1e-9));
  return std::max<std::size_t>(1, std::min(vocab_size - target, capped));
}

std::set<std::string> prune(const std::set<std::string>& vocab,
                            std::span<const TokenLoss> losses, std::size_t target,
                            double alpha, SegmentationMode mode) {
  if (vocab.size() <= target) {
    throw Error(ErrorCode::kInvalidArgument, "vocabulary of " + std::to_string(vocab.size()) +
                                                 " is not above the target " +
                                                 std::to_string(target));
  }
  std::map<std::string_view, double> loss_of;
  for (const auto& l : losses) loss_of.emplace(l.token, l.loss);

  struct Candidate {
    std::int64_t key;  // loss rounded to 1e-10, so float noise cannot break ties
    std::size_t units;
    std::string_view token;
  };
  std::vector<Candidate> candidates;
  for (const auto& token : vocab) {
    const std::size_t units = unit_length(token, mode);
    if (units < 2) continue;
    auto it = loss_of.find(token);
    if (it == loss_of.end()) {
      throw Error(ErrorCode::kInvalidArgument, "no loss given for token '" + token + "'");
    }
    if (!std::isfinite(it->second)) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite loss for token '" + token + "'");
    }
    candidates.push_back({std::llround(it->second * 1e10), units, token});
  }
  if (candidates.empty()) {
    throw Error(ErrorCode::kStagnation, "only single character units remain; floor size " +
                                            std::to_string(vocab.size()) + " is above target " +
                                            std::to_string(target));
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.key != b.key) return a.key > b.key;
    if (a.units != b.units) return a.units > b.units;
    return a.token < b.token;
  });
  const std::size_t removed = std::min(prune_count(vocab.size(), target, alpha), candidates.size());
  std::set<std::string> reduced = vocab;
  for (std::size_t i = 0; i < removed; ++i) reduced.erase(std::string(candidates[i].token));
  return reduced;
}

UnigramModel train_unigram(const WordFrequencyTable& table, const UnigramTrainerConfig& cfg,
                           UnigramTrainingLog* log) {
  cfg.validate();
  UnigramTrainingLog local;
  UnigramTrainingLog& out = log ? *log : local;
  out = {};

  std::set<std::string> vocab = seed_vocab(table, cfg);
  out.seed_size = vocab.size();
  while (vocab.size() > cfg.target_vocab_size) {
    const bool any_prunable = std::any_of(vocab.begin(), vocab.end(), [&](const std::string& t) {
      return is_prunable(t, cfg.mode);
    });
    if (!any_prunable) {
      out.floor_reached = true;
      break;
    }
    const UnigramModel model = fit_with_config(vocab, table, cfg);
    const auto losses = token_losses(model, table, cfg);
    PruneRound round;
    round.vocab_before = vocab.size();
    round.perplexity = perplexity(model, table);
    vocab = prune(vocab, losses, cfg.target_vocab_size, cfg.alpha, cfg.mode);
    round.vocab_after = vocab.size();
    round.removed = round.vocab_before - round.vocab_after;
    out.rounds.push_back(round);
  }
  return fit_with_config(vocab, table, cfg);
}

Lexicon build_unigram_lexicon(const UnigramModel& model, const WordFrequencyTable& table) {
  Lexicon lexicon;
  lexicon.model_kind = ModelKind::kUnigram;
  lexicon.mode = model.mode();
  lexicon.unk_token = model.unk_token();
  for (const auto& [word, count] : table.entries()) {
    lexicon.entries.emplace(word, model.encode_word(word));
  }
  return lexicon;
}

}  // namespace subtok
