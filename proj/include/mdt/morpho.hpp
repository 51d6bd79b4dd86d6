#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mdt/features.hpp"

namespace mdt {

/// POS tag given to wordforms missing from the analysis table.
inline constexpr std::string_view kUnknownPos = "unk";

/// One morphological reading of a wordform: `loses` -> (lose_v, v, {tns=prs,sb=3ps}).
struct Analysis {
  std::string lexeme;
  std::string pos;
  FeatureMap features;

  friend bool operator==(const Analysis&, const Analysis&) = default;
};

/// The POS suffix of a lexeme identifier (`mayor_n` -> `n`), or "" when the
/// identifier has no `_<pos>` suffix.
std::string lexeme_pos(std::string_view lexeme);

/// True when `text` looks like a lexeme identifier: a non-empty stem, `_`,
/// and a lowercase ASCII POS suffix.
bool is_lexeme_id(std::string_view text);

/// ASCII lowercase; bytes outside A-Z (including UTF-8 sequences) pass through.
std::string to_lower(std::string_view text);

/// Full-form morphology table, usable in both directions.
///
/// Rows are kept in file order. Analysis looks rows up by lowercased
/// wordform; generation scans the rows of one lexeme and keeps those whose
/// feature map unifies with the request.
class FormTable {
 public:
  struct Row {
    std::string wordform;
    Analysis analysis;
    std::size_t line = 0;
  };

  void add(std::string wordform, Analysis analysis, std::size_t line = 0);

  std::span<const Row> rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  /// Rows whose wordform equals `wordform` after lowercasing, in table order.
  std::vector<const Row*> by_wordform(std::string_view wordform) const;
  /// Rows for `lexeme`, in table order.
  std::vector<const Row*> by_lexeme(std::string_view lexeme) const;

 private:
  std::vector<Row> rows_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_form_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_lexeme_;
};

/// Parses an analysis table: `wordform<TAB>lexeme<TAB>pos<TAB>f=v,...`.
/// The feature column may be empty or omitted. Throws LexiconError.
FormTable parse_analysis_table(std::string_view text, const std::string& filename = "forms.tsv");

/// Parses a generation table: `lexeme<TAB>f=v,...<TAB>wordform`.
/// The POS of each row is taken from the lexeme suffix. Throws LexiconError.
FormTable parse_generation_table(std::string_view text, const std::string& filename = "forms.tsv");

/// Every analysis listed for `wordform`; an unlisted form yields the single
/// fallback analysis {lexeme=wordform (lowercased), pos=unk, features={}}.
std::vector<Analysis> analyze(std::string_view wordform, const FormTable& table);

/// Wordforms of `lexeme` whose table features unify with `features`, in table
/// order without duplicates. Empty means a generation gap.
std::vector<std::string> generate(std::string_view lexeme, const FeatureMap& features, const FormTable& table);

}  // namespace mdt
