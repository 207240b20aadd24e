#pragma once

// Literal executor of the BPE training loop: keeps every word as a list of
// strings and recounts all bigrams from scratch before each merge. Slow on
// purpose; shares no code with the library.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

struct BpeResult {
  std::vector<std::string> vocab;  // sorted characters, then merge outputs in order
  std::vector<std::pair<std::string, std::string>> merges;
};

// Words are ASCII, so one byte is one character unit.
inline BpeResult brute_force_bpe(const std::map<std::string, std::uint64_t>& table,
                                 std::size_t n) {
  std::vector<std::pair<std::vector<std::string>, std::uint64_t>> words;
  std::set<std::string> chars;
  for (const auto& [word, count] : table) {
    std::vector<std::string> units;
    for (char c : word) {
      units.emplace_back(1, c);
      chars.emplace(1, c);
    }
    words.emplace_back(std::move(units), count);
  }

  BpeResult out;
  out.vocab.assign(chars.begin(), chars.end());
  std::set<std::string> members(chars);

  while (members.size() < n) {
    std::map<std::pair<std::string, std::string>, std::uint64_t> counts;
    for (const auto& [units, count] : words) {
      for (std::size_t i = 0; i + 1 < units.size(); ++i) counts[{units[i], units[i + 1]}] += count;
    }
    if (counts.empty()) break;

    // Highest count; the map iterates pairs in ascending order, so the first
    // maximum seen is the smallest pair.
    auto best = counts.begin();
    for (auto it = counts.begin(); it != counts.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    const auto [a, b] = best->first;
    const std::string ab = a + b;

    for (auto& [units, count] : words) {
      std::vector<std::string> next;
      for (std::size_t i = 0; i < units.size();) {
        if (i + 1 < units.size() && units[i] == a && units[i + 1] == b) {
          next.push_back(ab);
          i += 2;
        } else {
          next.push_back(units[i]);
          i += 1;
        }
      }
      units = std::move(next);
    }

    out.merges.emplace_back(a, b);
    if (members.insert(ab).second) out.vocab.push_back(ab);
  }
  return out;
}

}  // namespace oracle
