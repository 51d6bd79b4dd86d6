#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mdt/error.hpp"
#include "mdt/features.hpp"
#include "mdt/morpho.hpp"

namespace mdt {

enum class ItemKind { Wordform, Lexeme, Category };

/// One position of a group, transform pattern, or target group.
///
/// On the source side `constraints` must unify with the matched token's
/// analysis; on the target side they are features imposed on the item
/// (e.g. `$sbd[+acc]`).
struct GroupItem {
  ItemKind kind = ItemKind::Wordform;
  std::string text;
  FeatureMap constraints;

  bool is_category() const { return kind == ItemKind::Category; }
  /// Category name without `$`, or the lexeme's POS suffix.
  std::string tag() const;

  friend bool operator==(const GroupItem&, const GroupItem&) = default;
};

/// Parses `word`, `lexeme_pos` or `$cat`, each optionally followed by
/// `[f=v,+g]`. Throws std::invalid_argument.
GroupItem parse_item(std::string_view text);
std::string format_item(const GroupItem& item);

/// Copies source feature values into a target item during transfer.
/// Positions are 1-based: source item first, target item second.
struct AgreementConstraint {
  std::size_t source_pos = 0;
  std::size_t target_pos = 0;
  std::vector<std::pair<std::string, std::string>> mappings;  // source feature -> target feature

  friend bool operator==(const AgreementConstraint&, const AgreementConstraint&) = default;
};

struct Translation {
  std::string target_lang;
  std::vector<GroupItem> items;
  /// 1-based index of a target item written in brackets, when one is marked.
  std::optional<std::size_t> marked_head;
  /// One value per source item: 0 = unaligned, else a 1-based target index.
  std::vector<std::size_t> alignment;
  std::vector<AgreementConstraint> agreements;

  friend bool operator==(const Translation&, const Translation&) = default;
};

/// A headed source pattern with its translations.
struct GroupEntry {
  std::vector<GroupItem> items;
  std::size_t head_index = 1;  // 1-based
  std::vector<Translation> translations;
  std::size_t line = 0;  // source line of the `group:` header, 0 when built in code

  const GroupItem& head() const { return items.at(head_index - 1); }
  /// The key this entry is indexed under: lexeme id or lowercased wordform.
  std::string head_key() const;

  friend bool operator==(const GroupEntry& a, const GroupEntry& b) {
    return a.items == b.items && a.head_index == b.head_index && a.translations == b.translations;
  }
};

struct TransformAction {
  std::size_t position = 0;  // 1-based
  FeatureMap features;

  friend bool operator==(const TransformAction&, const TransformAction&) = default;
};

/// A morphosyntactic rewrite: `they do not $v => 4[sb=3p,tam=impf,+neg] del 1,2,3`.
struct TransformRule {
  std::vector<GroupItem> pattern;
  std::vector<TransformAction> actions;
  std::vector<std::size_t> deletions;  // 1-based, ascending
  std::size_t line = 0;

  friend bool operator==(const TransformRule& a, const TransformRule& b) {
    return a.pattern == b.pattern && a.actions == b.actions && a.deletions == b.deletions;
  }
};

/// POS categories matched against a token's POS tag rather than the CategoryDict.
inline constexpr std::array<std::string_view, 5> kPosCategories = {"$v", "$n", "$adj", "$adv", "$pron"};
bool is_pos_category(std::string_view symbol);

/// Lexical-semantic categories: lexeme or wordform -> {$sbd, ...}.
class CategoryDict {
 public:
  void add(std::string key, std::string symbol);
  bool contains(std::string_view key, std::string_view symbol) const;
  /// All symbols used anywhere in the dictionary.
  std::set<std::string> symbols() const;
  std::size_t size() const { return size_; }
  const std::map<std::string, std::set<std::string>, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, std::set<std::string>, std::less<>> entries_;
  std::size_t size_ = 0;
};

CategoryDict parse_categories(std::string_view text, const std::string& filename = "cats.tsv");

std::vector<GroupEntry> parse_groups(std::string_view text, const std::string& filename = "groups.mdt");
std::vector<TransformRule> parse_transforms(std::string_view text, const std::string& filename = "transforms.mdt");

/// One entry in groups.mdt syntax, newline-terminated.
std::string serialize_entry(const GroupEntry& entry);
std::string serialize_groups(std::span<const GroupEntry> entries);
std::string serialize_rule(const TransformRule& rule);
std::string serialize_transforms(std::span<const TransformRule> rules);

/// Structural diagnostics for one entry; empty iff every entry and
/// translation invariant holds. `number` is the entry's 1-based position in
/// its file and is used only in messages.
std::vector<std::string> validate_entry(const GroupEntry& entry, std::size_t number = 0);
std::vector<std::string> validate_rule(const TransformRule& rule, std::size_t number = 0);

struct LanguagePair {
  std::string source;
  std::string target;
};

/// A loaded, validated, immutable bilingual lexicon.
///
/// Non-copyable: candidate group instances keep pointers to its entries.
class Lexicon {
 public:
  /// Validates everything and builds the head index; throws LexiconError
  /// listing every diagnostic when anything is invalid.
  Lexicon(LanguagePair languages, std::vector<GroupEntry> entries, std::vector<TransformRule> rules,
          FormTable source_forms, FormTable target_forms, CategoryDict categories);

  Lexicon(Lexicon&&) = default;
  Lexicon& operator=(Lexicon&&) = default;
  Lexicon(const Lexicon&) = delete;
  Lexicon& operator=(const Lexicon&) = delete;

  /// Loads `<dir>/<source>/{groups.mdt,transforms.mdt,forms.tsv,cats.tsv}`
  /// and `<dir>/<target>/forms.tsv`. Empty language codes are detected: the
  /// source is the only subdirectory holding groups.mdt, the target the only
  /// language the entries translate into.
  static Lexicon load(const std::filesystem::path& dir, std::string source = {}, std::string target = {});

  const LanguagePair& languages() const { return languages_; }
  std::span<const GroupEntry> entries() const { return entries_; }
  std::span<const TransformRule> rules() const { return rules_; }
  const FormTable& source_forms() const { return source_forms_; }
  const FormTable& target_forms() const { return target_forms_; }
  const CategoryDict& categories() const { return categories_; }

  /// 0-based indices of entries headed by `key`, in file order.
  std::span<const std::size_t> entries_headed_by(std::string_view key) const;

 private:
  LanguagePair languages_;
  std::vector<GroupEntry> entries_;
  std::vector<TransformRule> rules_;
  FormTable source_forms_;
  FormTable target_forms_;
  CategoryDict categories_;
  std::unordered_map<std::string, std::vector<std::size_t>> head_index_;
};

/// Every problem found in a lexicon directory: parse errors and validation
/// diagnostics. Empty means Lexicon::load would succeed.
std::vector<std::string> lint_lexicon(const std::filesystem::path& dir, std::string source = {},
                                      std::string target = {});

/// Cross-file checks on already-parsed parts: category symbols must be
/// POS categories or appear in the CategoryDict, analysis rows must carry a
/// POS matching their lexeme suffix.
std::vector<std::string> check_consistency(std::span<const GroupEntry> entries, std::span<const TransformRule> rules,
                                           const FormTable& source_forms, const CategoryDict& categories);

}  // namespace mdt
