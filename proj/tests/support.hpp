#pragma once

// Shared fixtures for the unit tests and the acceptance binary: the demo
// lexicon, a random sentence generator over its vocabulary, and an
// exhaustive subset-enumeration oracle for the solver.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mdt/lexicon.hpp"
#include "mdt/pipeline.hpp"
#include "mdt/solver.hpp"
#include "mdt/xfer.hpp"

namespace mdt::test {

inline const Lexicon& demo() {
  static const Lexicon lex = Lexicon::load(MDT_DEMO_DIR);
  return lex;
}

inline AnalyzedSentence prepare(const std::string& text, const Lexicon& lex) {
  auto tokens = tokenize(text);
  return apply_transforms(analyze_sentence(tokens, lex.source_forms()), lex.rules(), lex.categories());
}

/// Sentences whose outputs the end-to-end checks pin down.
inline const std::vector<std::string>& fixture_sentences() {
  static const std::vector<std::string> s = {
      "She made fun of the mayor.",
      "one way or the other",
      "John loses hope",
      "they do not know her",
      "you",
      "John lost hope",
      "she lost",
      "John made fun of her",
      "the mayor knows John",
      "she made fun of John, one way or the other.",
      "they do not lose hope",
      "you make fun of the mayor",
      "zzz qqq",
  };
  return s;
}

/// Random word sequences over the demo vocabulary, biased toward fragments
/// that trigger groups and transform rules.
class SentenceGenerator {
 public:
  explicit SentenceGenerator(std::uint32_t seed) : rng_(seed) {}

  std::string next() {
    static const std::vector<std::string> words = {
        "she", "made", "make", "makes", "fun", "of", "the", "mayor", "john", "lose", "loses", "lost",
        "hope", "they", "do", "not", "know", "knows", "her", "you", "one", "way", "or", "other",
        ".", ",", "zzz"};
    static const std::vector<std::string> phrases = {
        "made fun of", "make fun of the mayor", "one way or the other", "loses hope", "lose hope",
        "they do not know", "she made", "the mayor", "fun of her", "fun of john", "she lost hope"};
    std::uniform_int_distribution<int> len(1, 6);
    std::uniform_int_distribution<std::size_t> w(0, words.size() - 1), p(0, phrases.size() - 1);
    std::bernoulli_distribution phrase(0.35);
    std::string out;
    for (int n = len(rng_); n > 0; --n) {
      if (!out.empty()) out += ' ';
      out += phrase(rng_) ? phrases[p(rng_)] : words[w(rng_)];
    }
    return out;
  }

 private:
  std::mt19937 rng_;
};

/// Result of exhaustive enumeration: best score and every optimal subset,
/// each subset given as sorted (entry index, positions) keys.
struct OracleResult {
  Score best{-1, 0};
  std::set<std::vector<std::pair<std::size_t, std::vector<std::size_t>>>> optimal;
  std::size_t valid_subsets = 0;
};

/// Checks every subset of `cands` from first principles: a token belongs to
/// at most one instance, except that a category item of one instance may sit
/// on the head of another instance whose head reading the category accepts.
/// Every category item must be so filled and fill links may not form cycles.
inline OracleResult brute_force(const std::vector<GroupInstance>& cands, const AnalyzedSentence& sentence,
                                const CategoryDict& cats) {
  OracleResult r;
  const std::size_t n = cands.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) chosen.push_back(i);
    }
    std::map<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>> uses;  // token -> (cand, item)
    for (std::size_t c : chosen) {
      for (std::size_t j = 0; j < cands[c].positions.size(); ++j) uses[cands[c].positions[j]].push_back({c, j});
    }
    bool ok = true;
    std::map<std::size_t, std::size_t> host_of;  // filler -> host
    std::set<std::pair<std::size_t, std::size_t>> filled;
    for (const auto& [tok, list] : uses) {
      if (list.size() == 1) continue;
      if (list.size() > 2) {
        ok = false;
        break;
      }
      bool merged = false;
      for (int k = 0; k < 2 && !merged; ++k) {
        auto [hc, hi] = list[k];
        auto [fc, fi] = list[1 - k];
        const GroupEntry& he = *cands[hc].entry;
        const GroupEntry& fe = *cands[fc].entry;
        if (hc == fc || !he.items[hi].is_category() || fe.head_index != fi + 1) continue;
        if (!item_accepts(he.items[hi], cands[fc].matched[fi], sentence.tokens[tok].norm, cats)) continue;
        merged = true;
        host_of[fc] = hc;
        filled.insert({hc, hi});
      }
      if (!merged) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (std::size_t c : chosen) {
      for (std::size_t j = 0; j < cands[c].entry->items.size() && ok; ++j) {
        if (cands[c].entry->items[j].is_category() && !filled.count({c, j})) ok = false;
      }
    }
    for (const auto& [start, unused] : host_of) {
      std::size_t cur = start;
      for (std::size_t steps = 0; ok && host_of.count(cur); ++steps) {
        cur = host_of.at(cur);
        if (cur == start || steps > n) ok = false;
      }
    }
    if (!ok) continue;
    ++r.valid_subsets;
    Score s{static_cast<long>(uses.size()), -static_cast<long>(chosen.size())};
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> key;
    for (std::size_t c : chosen) key.push_back({cands[c].entry_index, cands[c].positions});
    std::sort(key.begin(), key.end());
    if (s > r.best) {
      r.best = s;
      r.optimal.clear();
    }
    if (s == r.best) r.optimal.insert(key);
  }
  return r;
}

inline std::set<std::vector<std::pair<std::size_t, std::vector<std::size_t>>>> keys_of(
    const std::vector<Assignment>& assignments) {
  std::set<std::vector<std::pair<std::size_t, std::vector<std::size_t>>>> out;
  for (const auto& a : assignments) {
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> key;
    for (const auto& inst : a.instances) key.push_back({inst.entry_index, inst.positions});
    std::sort(key.begin(), key.end());
    out.insert(key);
  }
  return out;
}

/// Byte-level rendering of every output and assignment, for determinism checks.
inline std::string fingerprint(const TranslationResult& r) {
  std::string s = format_sentence(r.transformed) + "\n";
  for (const auto& a : r.assignments) s += dump_assignment(a) + "--\n";
  for (const auto& o : r.outputs) s += std::to_string(o.assignment) + ": " + o.text() + "\n";
  return s;
}

}  // namespace mdt::test
