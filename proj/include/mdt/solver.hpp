#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mdt/lexicon.hpp"
#include "mdt/pipeline.hpp"

namespace mdt {

/// A group entry matched onto concrete token positions.
struct GroupInstance {
  const GroupEntry* entry = nullptr;
  std::size_t entry_index = 0;           // 0-based position in the lexicon
  std::vector<std::size_t> positions;    // token index per item, strictly increasing
  std::vector<Analysis> matched;         // the reading each item matched

  std::size_t head_token() const { return positions[entry->head_index - 1]; }
  std::size_t first() const { return positions.front(); }
  std::size_t last() const { return positions.back(); }
  /// 0-based indices of category items.
  std::vector<std::size_t> slots() const;

  friend bool operator==(const GroupInstance& a, const GroupInstance& b) {
    return a.entry_index == b.entry_index && a.positions == b.positions && a.matched == b.matched;
  }
};

/// `filler`'s head token fills category item `slot` of `host`.
/// Host and filler index into Assignment::instances; slot is 0-based.
struct MergeLink {
  std::size_t host = 0;
  std::size_t slot = 0;
  std::size_t filler = 0;

  friend bool operator==(const MergeLink&, const MergeLink&) = default;
};

/// Lexicographic (covered tokens, -group count); larger is better.
struct Score {
  long covered = 0;
  long neg_groups = 0;

  friend auto operator<=>(const Score&, const Score&) = default;
};

struct Assignment {
  std::vector<GroupInstance> instances;  // ordered by first token, then entry index
  std::vector<MergeLink> merges;
  Score score;

  /// Index of the instance filling `slot` of `host`, if any.
  std::optional<std::size_t> filler_of(std::size_t host, std::size_t slot) const;
  /// True when instance `i` fills some other instance's slot.
  bool is_filler(std::size_t i) const;
};

/// Every way each entry indexed by a live token's wordform or lexemes matches
/// live tokens with that token as head. Up to `max_gap` live tokens may be
/// skipped between consecutive items. Ordered by leftmost position, then
/// entry order, then positions.
std::vector<GroupInstance> find_candidates(const AnalyzedSentence& sentence, const Lexicon& lexicon,
                                           std::size_t max_gap = 0);

/// Distinct tokens touched (a merged token counts once) and the group count.
Score score(const Assignment& assignment);

/// All co-optimal assignments by exhaustive branch-and-bound over candidate
/// subsets, best-first, ties ordered leftmost-longest by instance span. With
/// no usable candidates the result is a single empty assignment.
std::vector<Assignment> solve(std::span<const GroupInstance> candidates, const AnalyzedSentence& sentence,
                              const CategoryDict& categories);

/// Invariant violations of an assignment: token overuse, dangling slots,
/// bad merge links, cyclic merges, a stale score. Empty when valid.
std::vector<std::string> verify_assignment(const Assignment& assignment, const AnalyzedSentence& sentence,
                                           const CategoryDict& categories);

/// `span=<i..j> head=<lexeme> entry=<n> merges=[<slot>:<head>@<token>,...]`,
/// token indices 0-based, entry and slot numbers 1-based.
std::string format_instance(const Assignment& assignment, std::size_t index);
/// One format_instance line per instance.
std::string dump_assignment(const Assignment& assignment);

}  // namespace mdt
