#include "subtok/bpe.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "subtok/charset.hpp"
#include "subtok/error.hpp"

namespace subtok {
namespace {

std::string pair_key(std::string_view left, std::string_view right) {
  std::string key = std::to_string(left.size());
  key.push_back(':');
  key.append(left);
  key.append(right);
  return key;
}

// Incremental merge learner. Pair counts are kept exact after every merge by
// retracting and re-adding the contributions of each affected word, so the
// chosen merges match a full recount.
class MergeLearner {
 public:
  MergeLearner(const WordFrequencyTable& table, SegmentationMode mode)
      : queue_(CandidateOrder{&tokens_}) {
    words_.reserve(table.size());
    for (const auto& [word, count] : table.entries()) {
      Word w;
      w.count = count;
      for (const auto& unit : segment_word(word, mode)) w.symbols.push_back(intern(unit));
      words_.push_back(std::move(w));
    }
    for (std::uint32_t i = 0; i < words_.size(); ++i) {
      add_contributions(i, +1);
      const auto& symbols = words_[i].symbols;
      for (std::size_t j = 0; j + 1 < symbols.size(); ++j) {
        pair_words_[pack(symbols[j], symbols[j + 1])].push_back(i);
      }
    }
  }

  bool exhausted() const { return queue_.empty(); }

  // Applies the best merge and returns its operands.
  std::pair<std::string, std::string> merge_best() {
    const Candidate best = *queue_.begin();
    const std::uint64_t key = pack(best.left, best.right);
    std::pair<std::string, std::string> operands{tokens_[best.left], tokens_[best.right]};
    const int merged = intern(operands.first + operands.second);

    std::vector<std::uint32_t> affected = std::move(pair_words_[key]);
    pair_words_.erase(key);
    std::sort(affected.begin(), affected.end());
    affected.erase(std::unique(affected.begin(), affected.end()), affected.end());

    for (std::uint32_t index : affected) {
      Word& word = words_[index];
      if (!contains_pair(word.symbols, best.left, best.right)) continue;
      add_contributions(index, -1);
      std::vector<int> next;
      next.reserve(word.symbols.size());
      for (std::size_t i = 0; i < word.symbols.size();) {
        if (i + 1 < word.symbols.size() && word.symbols[i] == best.left &&
            word.symbols[i + 1] == best.right) {
          next.push_back(merged);
          i += 2;
        } else {
          next.push_back(word.symbols[i]);
          ++i;
        }
      }
      word.symbols = std::move(next);
      add_contributions(index, +1);
      for (std::size_t j = 0; j + 1 < word.symbols.size(); ++j) {
        if (word.symbols[j] == merged || word.symbols[j + 1] == merged) {
          pair_words_[pack(word.symbols[j], word.symbols[j + 1])].push_back(index);
        }
      }
    }
    return operands;
  }

 private:
  struct Word {
    std::vector<int> symbols;
    std::uint64_t count = 0;
  };
  struct Candidate {
    std::uint64_t count;
    int left;
    int right;
  };
  struct CandidateOrder {
    const std::vector<std::string>* tokens;
    bool operator()(const Candidate& a, const Candidate& b) const {
      if (a.count != b.count) return a.count > b.count;
      const auto& t = *tokens;
      if (a.left != b.left) return t[a.left] < t[b.left];
      if (a.right != b.right) return t[a.right] < t[b.right];
      return false;
    }
  };

  static std::uint64_t pack(int left, int right) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(left)) << 32) |
           static_cast<std::uint32_t>(right);
  }

  static bool contains_pair(const std::vector<int>& symbols, int left, int right) {
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      if (symbols[i] == left && symbols[i + 1] == right) return true;
    }
    return false;
  }

  int intern(const std::string& token) {
    auto [it, inserted] = ids_.try_emplace(token, static_cast<int>(tokens_.size()));
    if (inserted) tokens_.push_back(token);
    return it->second;
  }

  void add_contributions(std::uint32_t index, int sign) {
    const Word& word = words_[index];
    for (std::size_t j = 0; j + 1 < word.symbols.size(); ++j) {
      adjust(word.symbols[j], word.symbols[j + 1], sign, word.count);
    }
  }

  void adjust(int left, int right, int sign, std::uint64_t amount) {
    const std::uint64_t key = pack(left, right);
    auto it = pair_counts_.find(key);
    const std::uint64_t old = it == pair_counts_.end() ? 0 : it->second;
    if (old > 0) queue_.erase(Candidate{old, left, right});
    const std::uint64_t updated = sign > 0 ? old + amount : old - amount;
    if (updated > 0) {
      pair_counts_[key] = updated;
      queue_.insert(Candidate{updated, left, right});
    } else if (it != pair_counts_.end()) {
      pair_counts_.erase(it);
    }
  }

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
  std::vector<Word> words_;
  std::unordered_map<std::uint64_t, std::uint64_t> pair_counts_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> pair_words_;
  std::set<Candidate, CandidateOrder> queue_;
};

}  // namespace

BigramCounts count_bigrams(const SegmentedWords& words) {
  BigramCounts counts;
  for (const auto& [word, seg] : words) {
    if (seg.units.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "empty segmentation for '" + word + "'");
    }
    for (std::size_t i = 0; i + 1 < seg.units.size(); ++i) {
      counts[{seg.units[i], seg.units[i + 1]}] += seg.count;
    }
  }
  return counts;
}

BpeModel::BpeModel(std::vector<std::string> inventory, std::vector<MergeRule> merges,
                   SegmentationMode mode, std::size_t target_vocab_size,
                   std::string unk_token)
    : inventory_size_(inventory.size()),
      merges_(std::move(merges)),
      mode_(mode),
      target_vocab_size_(target_vocab_size),
      unk_token_(std::move(unk_token)) {
  if (unk_token_.empty()) throw Error(ErrorCode::kConsistency, "empty unk token");
  if (!std::is_sorted(inventory.begin(), inventory.end())) {
    throw Error(ErrorCode::kConsistency, "inventory is not in code-point order");
  }
  for (const auto& unit : inventory) {
    if (unit_length(unit, mode_) != 1) {
      throw Error(ErrorCode::kConsistency, "'" + unit + "' is not a single character unit");
    }
    if (!known_.insert(unit).second) {
      throw Error(ErrorCode::kConsistency, "duplicate inventory unit '" + unit + "'");
    }
  }
  inventory_set_ = known_;
  vocab_ = std::move(inventory);
  for (std::size_t i = 0; i < merges_.size(); ++i) {
    const MergeRule& rule = merges_[i];
    if (rule.rank != i) {
      throw Error(ErrorCode::kConsistency, "merge ranks must be 0.." +
                                               std::to_string(merges_.size() - 1) +
                                               " in order; found rank " +
                                               std::to_string(rule.rank) + " at position " +
                                               std::to_string(i));
    }
    if (!known_.contains(rule.left) || !known_.contains(rule.right)) {
      throw Error(ErrorCode::kConsistency,
                  "merge " + std::to_string(i) + " (" + rule.left + ", " + rule.right +
                      ") uses a token not produced by the inventory or an earlier merge");
    }
    std::string merged = rule.left + rule.right;
    if (known_.insert(merged).second) vocab_.push_back(std::move(merged));
    ranks_[pair_key(rule.left, rule.right)].push_back(i);
  }
  if (known_.contains(unk_token_)) {
    throw Error(ErrorCode::kConsistency, "unk token '" + unk_token_ + "' is a vocabulary token");
  }
}

bool BpeModel::contains(std::string_view token) const {
  return known_.contains(std::string(token));
}

bool BpeModel::operator==(const BpeModel& other) const {
  return vocab_ == other.vocab_ && inventory_size_ == other.inventory_size_ &&
         merges_ == other.merges_ && mode_ == other.mode_ &&
         target_vocab_size_ == other.target_vocab_size_ && unk_token_ == other.unk_token_;
}

std::vector<std::string> BpeModel::encode_word(std::string_view word) const {
  struct Symbol {
    std::string text;
    bool unknown;
  };
  std::vector<Symbol> symbols;
  for (auto& unit : segment_word(word, mode_)) {
    const bool unknown = !inventory_set_.contains(unit);
    symbols.push_back({unknown ? unk_token_ : std::move(unit), unknown});
  }

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::size_t next_rank = 0;
  while (symbols.size() > 1) {
    std::size_t best = kNone;
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      if (symbols[i].unknown || symbols[i + 1].unknown) continue;
      auto it = ranks_.find(pair_key(symbols[i].text, symbols[i + 1].text));
      if (it == ranks_.end()) continue;
      auto r = std::lower_bound(it->second.begin(), it->second.end(), next_rank);
      if (r != it->second.end()) best = std::min(best, *r);
    }
    if (best == kNone) break;
    const MergeRule& rule = merges_[best];
    std::vector<Symbol> next;
    next.reserve(symbols.size());
    for (std::size_t i = 0; i < symbols.size();) {
      if (i + 1 < symbols.size() && !symbols[i].unknown && !symbols[i + 1].unknown &&
          symbols[i].text == rule.left && symbols[i + 1].text == rule.right) {
        next.push_back({rule.left + rule.right, false});
        i += 2;
      } else {
        next.push_back(std::move(symbols[i]));
        ++i;
      }
    }
    symbols = std::move(next);
    next_rank = best + 1;
  }

  std::vector<std::string> tokens;
  tokens.reserve(symbols.size());
  for (auto& s : symbols) tokens.push_back(std::move(s.text));
  return tokens;
}

BpeModel train_bpe(const WordFrequencyTable& table, const BpeTrainerConfig& cfg) {
  if (cfg.target_vocab_size < 1) {
    throw Error(ErrorCode::kInvalidArgument, "target vocabulary size must be >= 1");
  }
  std::vector<std::string> inventory = extract_charset(table, cfg.mode).units;
  std::unordered_set<std::string> vocab(inventory.begin(), inventory.end());
  std::vector<MergeRule> merges;
  if (vocab.size() < cfg.target_vocab_size) {
    MergeLearner learner(table, cfg.mode);
    while (vocab.size() < cfg.target_vocab_size && !learner.exhausted()) {
      auto [left, right] = learner.merge_best();
      vocab.insert(left + right);
      merges.push_back({std::move(left), std::move(right), merges.size()});
    }
  }
  return BpeModel(std::move(inventory), std::move(merges), cfg.mode, cfg.target_vocab_size);
}

DecodeResult decode(std::span<const std::string> tokens, std::string_view unk_token) {
  if (tokens.empty()) throw Error(ErrorCode::kInvalidArgument, "nothing to decode");
  DecodeResult result;
  for (const auto& token : tokens) {
    if (token == unk_token) result.lossy = true;
    result.text += token;
  }
  return result;
}

Lexicon build_bpe_lexicon(const BpeModel& model, const WordFrequencyTable& table) {
  Lexicon lexicon;
  lexicon.model_kind = ModelKind::kBpe;
  lexicon.mode = model.mode();
  lexicon.unk_token = model.unk_token();
  for (const auto& [word, count] : table.entries()) {
    lexicon.entries.emplace(word, model.encode_word(word));
  }
  return lexicon;
}

}  // namespace subtok
