#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mdt/lexicon.hpp"
#include "mdt/pipeline.hpp"
#include "mdt/solver.hpp"

namespace mdt {

/// A source instance carried into one of its translations, with target item
/// features resolved and category slots expanded.
struct TargetGroupInstance {
  std::size_t instance = 0;            // index into Assignment::instances
  std::size_t translation_index = 0;   // index into the entry's translations
  const Translation* translation = nullptr;
  std::size_t head_item = 0;           // 0-based target item the source head aligns to
  std::vector<FeatureMap> item_features;   // per target item
  std::vector<std::size_t> slot_items;     // 0-based target category items, ascending
  std::vector<TargetGroupInstance> expansions;  // parallel to slot_items

  const TargetGroupInstance* expansion_at(std::size_t item) const;
};

/// One combination of translation choices for a whole assignment.
struct TransferOption {
  std::vector<TargetGroupInstance> roots;         // top-level instances, by source head token
  std::vector<std::size_t> untranslated;          // top-level instances with no viable translation
};

inline constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

/// Cartesian product of translation choices (entry order, first instance
/// varying slowest). Agreement copies source features into target items,
/// merged slots take the transfer of their filler, and any unification
/// failure discards that combination.
std::vector<TransferOption> transfer(const Assignment& assignment, std::string_view target_lang,
                                     std::size_t limit = kUnlimited);

struct LinearItem {
  enum class Kind { Target, Untranslated };
  Kind kind = Kind::Target;
  std::string text;       // target wordform/lexeme, or the source surface
  bool lexeme = false;    // target lexeme needing generation
  FeatureMap features;
  std::size_t source_token = 0;  // token of the instance (or the untranslated token)
  /// Untranslated token whose features a transform rule changed; realized as a gap.
  bool transformed = false;
  std::string source_lexeme;
};

/// Target items in order: roots by source head token, items in translation
/// order with slots replaced in place by their expansion, and live tokens no
/// translated root covers interleaved at their source positions.
std::vector<LinearItem> linearize(const TransferOption& option, const Assignment& assignment,
                                  const AnalyzedSentence& sentence);
/// Linearization of one target instance tree.
std::vector<LinearItem> linearize(const TargetGroupInstance& tree, const Assignment& assignment);

struct Segment {
  enum class Kind { Target, Untranslated, Gap };
  std::string text;
  Kind kind = Kind::Target;

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct OutputSentence {
  std::vector<Segment> segments;
  std::size_t assignment = 0;

  /// Segments joined by single spaces.
  std::string text() const;
};

/// Wraps a lexeme that could not be generated: ⟦lexeme⟧.
std::string gap_marker(std::string_view lexeme);

/// Generates every lexeme item; several forms fan out into several sentences
/// (table order, earlier items varying slowest). At most `limit` results.
std::vector<OutputSentence> realize(std::span<const LinearItem> items, const FormTable& generation,
                                    std::size_t limit = kUnlimited);

struct TranslateOptions {
  std::size_t max_outputs = kUnlimited;
  std::size_t max_gap = 0;
  bool trace = false;
};

struct TranslationResult {
  std::string source;
  AnalyzedSentence analyzed;      // after morphological analysis
  AnalyzedSentence transformed;   // after transform rules
  std::vector<GroupInstance> candidates;
  std::vector<Assignment> assignments;
  std::vector<std::vector<TransferOption>> transfers;  // per assignment, filled when tracing
  std::vector<OutputSentence> outputs;
};

/// tokenize -> analyze -> apply_transforms -> find_candidates -> solve ->
/// transfer -> linearize -> realize. Empty input gives an empty result.
TranslationResult translate(std::string_view text, const Lexicon& lexicon, const TranslateOptions& options = {});

/// Same as translate() but starting from already analyzed tokens.
TranslationResult translate_analyzed(AnalyzedSentence sentence, const Lexicon& lexicon,
                                     const TranslateOptions& options = {});

/// `<<kantibA_n[+acc,+def]> 'a^sofa_v[sb=3psf,tam=prf]>`
std::string format_target(const TargetGroupInstance& tree);

}  // namespace mdt
