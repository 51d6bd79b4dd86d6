#include "mdt/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "text_util.hpp"

namespace mdt {

// ---------------------------------------------------------------------------
// Items

std::string GroupItem::tag() const {
  if (kind == ItemKind::Category) return text.substr(1);
  if (kind == ItemKind::Lexeme) return lexeme_pos(text);
  return {};
}

GroupItem parse_item(std::string_view text) {
  GroupItem item;
  std::string_view name = text;
  if (std::size_t open = text.find('['); open != std::string_view::npos) {
    if (open == 0 || text.back() != ']') throw std::invalid_argument("malformed item '" + std::string(text) + "'");
    name = text.substr(0, open);
    item.constraints = parse_features(text.substr(open + 1, text.size() - open - 2));
  }
  if (name.empty()) throw std::invalid_argument("empty item");
  if (name.find_first_of("[]") != std::string_view::npos) {
    throw std::invalid_argument("stray bracket in item '" + std::string(text) + "'");
  }
  if (name.front() == '$') {
    if (name.size() == 1) throw std::invalid_argument("category symbol without a name");
    item.kind = ItemKind::Category;
  } else if (is_lexeme_id(name)) {
    item.kind = ItemKind::Lexeme;
  } else {
    item.kind = ItemKind::Wordform;
  }
  item.text = std::string(name);
  return item;
}

std::string format_item(const GroupItem& item) {
  if (item.constraints.empty()) return item.text;
  return item.text + "[" + item.constraints.str() + "]";
}

std::string GroupEntry::head_key() const {
  const GroupItem& h = head();
  return h.kind == ItemKind::Wordform ? to_lower(h.text) : h.text;
}

bool is_pos_category(std::string_view symbol) {
  return std::find(kPosCategories.begin(), kPosCategories.end(), symbol) != kPosCategories.end();
}

// ---------------------------------------------------------------------------
// Category dictionary

void CategoryDict::add(std::string key, std::string symbol) {
  if (entries_[std::move(key)].insert(std::move(symbol)).second) ++size_;
}

bool CategoryDict::contains(std::string_view key, std::string_view symbol) const {
  auto it = entries_.find(key);
  return it != entries_.end() && it->second.count(std::string(symbol)) > 0;
}

std::set<std::string> CategoryDict::symbols() const {
  std::set<std::string> out;
  for (const auto& [key, syms] : entries_) out.insert(syms.begin(), syms.end());
  return out;
}

CategoryDict parse_categories(std::string_view text, const std::string& filename) {
  CategoryDict dict;
  detail::for_each_line(text, [&](std::string_view line, std::size_t number) {
    auto cols = detail::split_tabs(line);
    if (cols.size() != 2 || cols[0].empty()) {
      throw LexiconError(filename, number, "expected lexeme_or_wordform<TAB>$category");
    }
    if (cols[1].size() < 2 || cols[1].front() != '$') {
      throw LexiconError(filename, number, "category symbol must start with '$'");
    }
    std::string key = is_lexeme_id(cols[0]) ? std::string(cols[0]) : to_lower(cols[0]);
    dict.add(std::move(key), std::string(cols[1]));
  });
  return dict;
}

// ---------------------------------------------------------------------------
// groups.mdt

namespace {

bool starts_with_keyword(std::string_view line, std::string_view keyword, std::string_view& rest) {
  if (line.substr(0, keyword.size()) != keyword) return false;
  rest = detail::trim(line.substr(keyword.size()));
  return true;
}

std::size_t parse_index(std::string_view text) {
  text = detail::trim(text);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::size_t> parse_index_list(std::string_view text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    out.push_back(parse_index(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

struct ItemList {
  std::vector<GroupItem> items;
  std::vector<std::size_t> heads;  // 1-based positions written in brackets
};

ItemList parse_item_list(std::string_view text) {
  ItemList out;
  for (std::string_view token : detail::split_ws(text)) {
    if (token.front() == '[') {
      if (token.size() < 3 || token.back() != ']') throw std::invalid_argument("malformed head '" + std::string(token) + "'");
      out.items.push_back(parse_item(token.substr(1, token.size() - 2)));
      out.heads.push_back(out.items.size());
    } else {
      out.items.push_back(parse_item(token));
    }
  }
  if (out.items.empty()) throw std::invalid_argument("empty item list");
  return out;
}

std::vector<AgreementConstraint> parse_agreements(std::string_view text) {
  static const std::regex kAgr(R"(^\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*:\s*\(([^()]*)\)$)");
  std::vector<AgreementConstraint> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t semi = text.find(';', start);
    if (semi == std::string_view::npos) semi = text.size();
    std::string part(detail::trim(text.substr(start, semi - start)));
    start = semi + 1;
    std::smatch m;
    if (!std::regex_match(part, m, kAgr)) throw std::invalid_argument("malformed agreement '" + part + "'");
    AgreementConstraint agr;
    agr.source_pos = parse_index(m[1].str());
    agr.target_pos = parse_index(m[2].str());
    std::string pairs = m[3].str();
    std::string_view rest = pairs;
    std::size_t p = 0;
    while (p <= rest.size()) {
      std::size_t comma = rest.find(',', p);
      if (comma == std::string_view::npos) comma = rest.size();
      std::string_view pair = detail::trim(rest.substr(p, comma - p));
      p = comma + 1;
      std::size_t colon = pair.find(':');
      if (colon == std::string_view::npos) throw std::invalid_argument("agreement pair needs 'src:tgt'");
      std::string from(detail::trim(pair.substr(0, colon)));
      std::string to(detail::trim(pair.substr(colon + 1)));
      if (!is_feature_atom(from) || !is_feature_atom(to)) {
        throw std::invalid_argument("bad feature name in agreement '" + std::string(pair) + "'");
      }
      agr.mappings.emplace_back(std::move(from), std::move(to));
    }
    out.push_back(std::move(agr));
  }
  return out;
}

}  // namespace

std::vector<GroupEntry> parse_groups(std::string_view text, const std::string& filename) {
  std::vector<GroupEntry> entries;
  detail::for_each_line(text, [&](std::string_view raw, std::size_t number) {
    std::string_view line = detail::trim(raw);
    std::string_view rest;
    try {
      if (starts_with_keyword(line, "group:", rest)) {
        ItemList list = parse_item_list(rest);
        if (list.heads.size() != 1) {
          throw std::invalid_argument("source items need exactly one [head], found " + std::to_string(list.heads.size()));
        }
        GroupEntry entry;
        entry.items = std::move(list.items);
        entry.head_index = list.heads.front();
        entry.line = number;
        entries.push_back(std::move(entry));
      } else if (starts_with_keyword(line, "->", rest)) {
        if (entries.empty()) throw std::invalid_argument("translation before any 'group:'");
        std::size_t colon = rest.find(':');
        if (colon == std::string_view::npos) throw std::invalid_argument("expected '-> <lang>: items'");
        Translation tr;
        tr.target_lang = std::string(detail::trim(rest.substr(0, colon)));
        if (!is_feature_atom(tr.target_lang)) throw std::invalid_argument("bad language code '" + tr.target_lang + "'");
        ItemList list = parse_item_list(rest.substr(colon + 1));
        if (list.heads.size() > 1) throw std::invalid_argument("target items may mark at most one [head]");
        tr.items = std::move(list.items);
        if (!list.heads.empty()) tr.marked_head = list.heads.front();
        entries.back().translations.push_back(std::move(tr));
      } else if (starts_with_keyword(line, "align:", rest)) {
        if (entries.empty() || entries.back().translations.empty()) throw std::invalid_argument("'align:' outside a translation");
        entries.back().translations.back().alignment = parse_index_list(rest);
      } else if (starts_with_keyword(line, "agr:", rest)) {
        if (entries.empty() || entries.back().translations.empty()) throw std::invalid_argument("'agr:' outside a translation");
        auto agrs = parse_agreements(rest);
        auto& dst = entries.back().translations.back().agreements;
        dst.insert(dst.end(), agrs.begin(), agrs.end());
      } else {
        throw std::invalid_argument("unrecognized line");
      }
    } catch (const std::invalid_argument& e) {
      throw LexiconError(filename, number, e.what());
    }
  });
  return entries;
}

namespace {

std::string join_indices(const std::vector<std::size_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(xs[i]);
  }
  return out;
}

std::string format_items(const std::vector<GroupItem>& items, std::optional<std::size_t> head) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ' ';
    bool is_head = head && *head == i + 1;
    if (is_head) out += '[';
    out += format_item(items[i]);
    if (is_head) out += ']';
  }
  return out;
}

}  // namespace

std::string serialize_entry(const GroupEntry& entry) {
  std::string out = "group: " + format_items(entry.items, entry.head_index) + "\n";
  for (const Translation& tr : entry.translations) {
    out += "  -> " + tr.target_lang + ": " + format_items(tr.items, tr.marked_head) + "\n";
    out += "     align: " + join_indices(tr.alignment) + "\n";
    if (!tr.agreements.empty()) {
      out += "     agr: ";
      for (std::size_t i = 0; i < tr.agreements.size(); ++i) {
        const auto& agr = tr.agreements[i];
        if (i) out += "; ";
        out += "(" + std::to_string(agr.source_pos) + "," + std::to_string(agr.target_pos) + "):(";
        for (std::size_t j = 0; j < agr.mappings.size(); ++j) {
          if (j) out += ',';
          out += agr.mappings[j].first + ":" + agr.mappings[j].second;
        }
        out += ")";
      }
      out += "\n";
    }
  }
  return out;
}

std::string serialize_groups(std::span<const GroupEntry> entries) {
  std::string out;
  for (const auto& e : entries) out += serialize_entry(e);
  return out;
}

// ---------------------------------------------------------------------------
// transforms.mdt

std::vector<TransformRule> parse_transforms(std::string_view text, const std::string& filename) {
  std::vector<TransformRule> rules;
  detail::for_each_line(text, [&](std::string_view raw, std::size_t number) {
    std::string_view line = detail::trim(raw);
    std::string_view rest;
    try {
      if (!starts_with_keyword(line, "rule:", rest)) throw std::invalid_argument("expected 'rule:'");
      std::size_t arrow = rest.find("=>");
      if (arrow == std::string_view::npos) throw std::invalid_argument("rule needs '=>' between pattern and actions");
      TransformRule rule;
      rule.line = number;
      ItemList pattern = parse_item_list(rest.substr(0, arrow));
      if (!pattern.heads.empty()) throw std::invalid_argument("rule patterns have no head");
      rule.pattern = std::move(pattern.items);

      std::string_view actions = detail::trim(rest.substr(arrow + 2));
      std::string_view deletions;
      auto words = detail::split_ws(actions);
      std::size_t del_at = words.size();
      for (std::size_t i = 0; i < words.size(); ++i) {
        if (words[i] == "del") {
          del_at = i;
          break;
        }
      }
      for (std::size_t i = 0; i < del_at; ++i) {
        std::string_view w = words[i];
        std::size_t open = w.find('[');
        if (open == std::string_view::npos || w.back() != ']') {
          throw std::invalid_argument("action must look like N[f=v,...], got '" + std::string(w) + "'");
        }
        TransformAction act;
        act.position = parse_index(w.substr(0, open));
        act.features = parse_features(w.substr(open + 1, w.size() - open - 2));
        rule.actions.push_back(std::move(act));
      }
      if (del_at < words.size()) {
        std::string joined;
        for (std::size_t i = del_at + 1; i < words.size(); ++i) joined += words[i];
        if (joined.empty()) throw std::invalid_argument("'del' without positions");
        rule.deletions = parse_index_list(joined);
        std::sort(rule.deletions.begin(), rule.deletions.end());
      }
      rules.push_back(std::move(rule));
    } catch (const std::invalid_argument& e) {
      throw LexiconError(filename, number, e.what());
    }
  });
  return rules;
}

std::string serialize_rule(const TransformRule& rule) {
  std::string out = "rule: " + format_items(rule.pattern, std::nullopt) + " =>";
  for (const auto& act : rule.actions) out += " " + std::to_string(act.position) + "[" + act.features.str() + "]";
  if (!rule.deletions.empty()) out += " del " + join_indices(rule.deletions);
  return out + "\n";
}

std::string serialize_transforms(std::span<const TransformRule> rules) {
  std::string out;
  for (const auto& r : rules) out += serialize_rule(r);
  return out;
}

// ---------------------------------------------------------------------------
// Validation

std::vector<std::string> validate_entry(const GroupEntry& entry, std::size_t number) {
  std::vector<std::string> out;
  std::string head_name = (entry.head_index >= 1 && entry.head_index <= entry.items.size())
                              ? entry.items[entry.head_index - 1].text
                              : std::string("?");
  std::string prefix = "entry " + std::to_string(number) + " (head " + head_name + ")";
  auto fail = [&](const std::string& msg) { out.push_back(prefix + ": " + msg); };

  if (entry.items.empty()) {
    fail("no source items");
    return out;
  }
  const std::size_t n = entry.items.size();
  if (entry.head_index < 1 || entry.head_index > n) {
    fail("head index " + std::to_string(entry.head_index) + " out of range 1.." + std::to_string(n));
    return out;
  }
  if (entry.head().is_category()) fail("head " + entry.head().text + " is a category");
  if (entry.translations.empty()) fail("no translations");

  for (std::size_t ti = 0; ti < entry.translations.size(); ++ti) {
    const Translation& tr = entry.translations[ti];
    auto tfail = [&](const std::string& msg) {
      out.push_back(prefix + ", translation " + std::to_string(ti + 1) + ": " + msg);
    };
    const std::size_t m = tr.items.size();
    if (m == 0) {
      tfail("no target items");
      continue;
    }
    if (tr.alignment.size() != n) {
      tfail("alignment length " + std::to_string(tr.alignment.size()) + " ≠ source length " + std::to_string(n));
      continue;
    }
    std::vector<bool> used(m + 1, false);
    bool ranges_ok = true;
    for (std::size_t v : tr.alignment) {
      if (v == 0) continue;
      if (v > m) {
        tfail("target index " + std::to_string(v) + " out of range 1.." + std::to_string(m));
        ranges_ok = false;
        continue;
      }
      if (used[v]) tfail("duplicate target index " + std::to_string(v));
      used[v] = true;
    }
    if (!ranges_ok) continue;
    std::size_t head_target = tr.alignment[entry.head_index - 1];
    if (head_target == 0) tfail("head " + entry.head().text + " is unaligned");
    if (tr.marked_head && head_target != 0 && *tr.marked_head != head_target) {
      tfail("marked target head " + std::to_string(*tr.marked_head) + " differs from the head's alignment " +
            std::to_string(head_target));
    }
    for (std::size_t s = 0; s < n; ++s) {
      const GroupItem& src = entry.items[s];
      std::size_t t = tr.alignment[s];
      if (src.is_category()) {
        if (t == 0) {
          tfail("category " + src.text + " at " + std::to_string(s + 1) + " is unaligned");
        } else if (!tr.items[t - 1].is_category() || tr.items[t - 1].text != src.text) {
          tfail("category " + src.text + " at " + std::to_string(s + 1) + " aligns to " + tr.items[t - 1].text);
        }
      } else if (t != 0 && tr.items[t - 1].is_category()) {
        tfail("non-category item " + src.text + " aligns to category " + tr.items[t - 1].text);
      }
    }
    for (std::size_t t = 0; t < m; ++t) {
      if (tr.items[t].is_category() && !used[t + 1]) {
        tfail("target category " + tr.items[t].text + " at " + std::to_string(t + 1) + " has no source category");
      }
    }
    for (const auto& agr : tr.agreements) {
      std::string where = "agreement (" + std::to_string(agr.source_pos) + "," + std::to_string(agr.target_pos) + ")";
      if (agr.source_pos < 1 || agr.source_pos > n) tfail(where + ": source position out of range");
      if (agr.target_pos < 1 || agr.target_pos > m) tfail(where + ": target position out of range");
      if (agr.mappings.empty()) tfail(where + ": no feature mappings");
    }
  }
  return out;
}

std::vector<std::string> validate_rule(const TransformRule& rule, std::size_t number) {
  std::vector<std::string> out;
  std::string prefix = "rule " + std::to_string(number);
  if (rule.line) prefix += " (line " + std::to_string(rule.line) + ")";
  const std::size_t n = rule.pattern.size();
  if (n == 0) out.push_back(prefix + ": empty pattern");
  std::vector<std::size_t> acted;
  for (const auto& act : rule.actions) {
    if (act.position < 1 || act.position > n) {
      out.push_back(prefix + ": action position " + std::to_string(act.position) + " out of range");
    }
    if (std::find(acted.begin(), acted.end(), act.position) != acted.end()) {
      out.push_back(prefix + ": position " + std::to_string(act.position) + " has two actions");
    }
    acted.push_back(act.position);
  }
  for (std::size_t i = 0; i < rule.deletions.size(); ++i) {
    std::size_t d = rule.deletions[i];
    if (d < 1 || d > n) out.push_back(prefix + ": deletion position " + std::to_string(d) + " out of range");
    if (i > 0 && rule.deletions[i - 1] == d) out.push_back(prefix + ": position " + std::to_string(d) + " deleted twice");
    if (std::find(acted.begin(), acted.end(), d) != acted.end()) {
      out.push_back(prefix + ": position " + std::to_string(d) + " is both deleted and feature-set");
    }
  }
  return out;
}

std::vector<std::string> check_consistency(std::span<const GroupEntry> entries, std::span<const TransformRule> rules,
                                           const FormTable& source_forms, const CategoryDict& categories) {
  std::vector<std::string> out;
  const auto known = categories.symbols();
  auto check = [&](const GroupItem& item, const std::string& where) {
    if (item.is_category() && !is_pos_category(item.text) && known.count(item.text) == 0) {
      out.push_back(where + ": unknown category " + item.text);
    }
  };
  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::string where = "entry " + std::to_string(i + 1) + " (head " + entries[i].head().text + ")";
    for (const auto& item : entries[i].items) check(item, where);
    for (const auto& tr : entries[i].translations) {
      for (const auto& item : tr.items) check(item, where);
    }
  }
  for (std::size_t i = 0; i < rules.size(); ++i) {
    for (const auto& item : rules[i].pattern) check(item, "rule " + std::to_string(i + 1));
  }
  for (const auto& row : source_forms.rows()) {
    std::string suffix = lexeme_pos(row.analysis.lexeme);
    if (suffix != row.analysis.pos) {
      out.push_back("forms line " + std::to_string(row.line) + ": lexeme " + row.analysis.lexeme +
                    " does not carry POS suffix _" + row.analysis.pos);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lexicon

Lexicon::Lexicon(LanguagePair languages, std::vector<GroupEntry> entries, std::vector<TransformRule> rules,
                 FormTable source_forms, FormTable target_forms, CategoryDict categories)
    : languages_(std::move(languages)),
      entries_(std::move(entries)),
      rules_(std::move(rules)),
      source_forms_(std::move(source_forms)),
      target_forms_(std::move(target_forms)),
      categories_(std::move(categories)) {
  std::vector<std::string> diags;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    auto d = validate_entry(entries_[i], i + 1);
    diags.insert(diags.end(), d.begin(), d.end());
  }
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    auto d = validate_rule(rules_[i], i + 1);
    diags.insert(diags.end(), d.begin(), d.end());
  }
  if (diags.empty()) {
    auto d = check_consistency(entries_, rules_, source_forms_, categories_);
    diags.insert(diags.end(), d.begin(), d.end());
  }
  if (!diags.empty()) {
    std::string msg = "invalid lexicon:";
    for (const auto& d : diags) msg += "\n  " + d;
    throw LexiconError(msg);
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) head_index_[entries_[i].head_key()].push_back(i);
}

std::span<const std::size_t> Lexicon::entries_headed_by(std::string_view key) const {
  auto it = head_index_.find(std::string(key));
  if (it == head_index_.end()) return {};
  return it->second;
}

namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LexiconError(path.string(), 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string read_optional(const fs::path& path) { return fs::exists(path) ? read_file(path) : std::string(); }

// Resolves language codes. Throws LexiconError on ambiguity or absence.
std::string detect_source(const fs::path& dir, std::string source) {
  if (!fs::is_directory(dir)) throw LexiconError(dir.string(), 0, "lexicon directory not found");
  if (!source.empty()) {
    if (!fs::exists(dir / source / "groups.mdt")) {
      throw LexiconError((dir / source / "groups.mdt").string(), 0, "missing groups file");
    }
    return source;
  }
  std::vector<std::string> found;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_directory() && fs::exists(e.path() / "groups.mdt")) found.push_back(e.path().filename().string());
  }
  if (found.empty()) throw LexiconError(dir.string(), 0, "missing groups file");
  if (found.size() > 1) {
    std::sort(found.begin(), found.end());
    std::string all;
    for (const auto& f : found) all += " " + f;
    throw LexiconError(dir.string(), 0, "several source languages (" + all.substr(1) + "); pick one explicitly");
  }
  return found.front();
}

std::string detect_target(const std::vector<GroupEntry>& entries, std::string target) {
  if (!target.empty()) return target;
  std::set<std::string> langs;
  for (const auto& e : entries) {
    for (const auto& t : e.translations) langs.insert(t.target_lang);
  }
  if (langs.size() != 1) {
    throw LexiconError(langs.empty() ? "no translations in lexicon"
                                     : "entries translate into several languages; pick a target explicitly");
  }
  return *langs.begin();
}

struct Parts {
  LanguagePair langs;
  std::vector<GroupEntry> entries;
  std::vector<TransformRule> rules;
  FormTable source_forms;
  FormTable target_forms;
  CategoryDict cats;
};

// Parses every file; errors go to `errors` when given, else are thrown.
Parts read_parts(const fs::path& dir, std::string source, std::string target, std::vector<std::string>* errors) {
  Parts p;
  auto guard = [&](auto&& fn) {
    if (!errors) return fn();
    try {
      fn();
    } catch (const LexiconError& e) {
      errors->push_back(e.what());
    }
  };
  p.langs.source = detect_source(dir, std::move(source));
  fs::path src = dir / p.langs.source;
  guard([&] { p.entries = parse_groups(read_file(src / "groups.mdt"), (src / "groups.mdt").string()); });
  guard([&] { p.rules = parse_transforms(read_optional(src / "transforms.mdt"), (src / "transforms.mdt").string()); });
  guard([&] { p.source_forms = parse_analysis_table(read_optional(src / "forms.tsv"), (src / "forms.tsv").string()); });
  guard([&] { p.cats = parse_categories(read_optional(src / "cats.tsv"), (src / "cats.tsv").string()); });
  p.langs.target = detect_target(p.entries, std::move(target));
  fs::path tgt = dir / p.langs.target;
  guard([&] {
    p.target_forms = parse_generation_table(read_optional(tgt / "forms.tsv"), (tgt / "forms.tsv").string());
  });
  return p;
}

}  // namespace

Lexicon Lexicon::load(const std::filesystem::path& dir, std::string source, std::string target) {
  Parts p = read_parts(dir, std::move(source), std::move(target), nullptr);
  return Lexicon(std::move(p.langs), std::move(p.entries), std::move(p.rules), std::move(p.source_forms),
                 std::move(p.target_forms), std::move(p.cats));
}

std::vector<std::string> lint_lexicon(const std::filesystem::path& dir, std::string source, std::string target) {
  std::vector<std::string> out;
  Parts p;
  try {
    p = read_parts(dir, std::move(source), std::move(target), &out);
  } catch (const LexiconError& e) {
    out.push_back(e.what());
    return out;
  }
  for (std::size_t i = 0; i < p.entries.size(); ++i) {
    auto d = validate_entry(p.entries[i], i + 1);
    out.insert(out.end(), d.begin(), d.end());
  }
  for (std::size_t i = 0; i < p.rules.size(); ++i) {
    auto d = validate_rule(p.rules[i], i + 1);
    out.insert(out.end(), d.begin(), d.end());
  }
  if (out.empty()) {
    auto d = check_consistency(p.entries, p.rules, p.source_forms, p.cats);
    out.insert(out.end(), d.begin(), d.end());
  }
  return out;
}

}  // namespace mdt
