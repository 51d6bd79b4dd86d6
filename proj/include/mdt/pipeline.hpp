#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mdt/lexicon.hpp"
#include "mdt/morpho.hpp"

namespace mdt {

struct Token {
  std::string surface;  // as written
  std::string norm;     // lowercased, used for lookup

  friend bool operator==(const Token&, const Token&) = default;
};

/// A contraction split by the tokenizer, e.g. don't -> do + n't.
struct Contraction {
  std::string_view word;
  std::string_view first;
  std::string_view second;
};

/// Irregular contractions handled by table lookup; regular ones
/// (`X n't`, `X 's`, `X 're`, `X 've`, `X 'll`, `X 'd`, `X 'm`) split by suffix.
std::span<const Contraction> irregular_contractions();
std::span<const std::string_view> contraction_suffixes();

/// Whitespace split, then leading/trailing punctuation detached into separate
/// tokens, then contractions split.
std::vector<Token> tokenize(std::string_view text);

struct AnalyzedToken {
  std::string surface;
  std::string norm;
  std::vector<Analysis> analyses;
  bool deleted = false;
  bool transformed = false;  // a transform rule set features on this token
  std::size_t origin_index = 0;
};

/// Tokens are never removed: deletion only sets a flag, so positions stay stable.
struct AnalyzedSentence {
  std::vector<AnalyzedToken> tokens;

  /// Indices of non-deleted tokens, ascending.
  std::vector<std::size_t> live() const;
  std::size_t live_count() const;
};

AnalyzedSentence analyze_sentence(std::span<const Token> tokens, const FormTable& table);

/// Pre-analyzed input: one token per line `surface<TAB>lexeme<TAB>pos<TAB>features`,
/// sentences separated by blank lines. Throws LexiconError on malformed lines.
std::vector<AnalyzedSentence> parse_preanalyzed(std::string_view text);

/// Whether `item` accepts the reading `analysis` of a token whose lowercased
/// form is `norm`: wordforms compare against `norm`, lexemes against the
/// analysis lexeme, POS categories against the POS tag and other categories
/// through `categories`. Item constraints must unify with the features.
bool item_accepts(const GroupItem& item, const Analysis& analysis, std::string_view norm,
                  const CategoryDict& categories);

/// Index of the first analysis of `token` that `item` accepts.
std::optional<std::size_t> match_item(const GroupItem& item, const AnalyzedToken& token,
                                      const CategoryDict& categories);

/// Single left-to-right pass. At each live position the rules are tried in
/// order; the first whose pattern matches consecutive live tokens, and whose
/// actions unify, is applied and the scan resumes after the match.
AnalyzedSentence apply_transforms(AnalyzedSentence sentence, std::span<const TransformRule> rules,
                                  const CategoryDict& categories);

/// `lexeme[features]` as in `make_v[tns=pst]`.
std::string format_analysis(const Analysis& analysis);

/// Live tokens, one reading each: `make_v[sb=3psf,tam=prf,tns=pst] fun_n of mayor_n[+def]`.
/// Unknown words print as their surface form.
std::string format_sentence(const AnalyzedSentence& sentence);

}  // namespace mdt
