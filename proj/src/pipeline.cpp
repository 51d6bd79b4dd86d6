#include "mdt/pipeline.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "text_util.hpp"

namespace mdt {

namespace {

constexpr std::array<Contraction, 4> kIrregular = {{
    {"can't", "can", "n't"},
    {"won't", "will", "n't"},
    {"shan't", "shall", "n't"},
    {"cannot", "can", "not"},
}};

constexpr std::array<std::string_view, 7> kSuffixes = {"n't", "'s", "'re", "'ve", "'ll", "'d", "'m"};

constexpr std::string_view kPunct = ".,;:!?\"()[]{}<>";

bool is_punct(char c) { return kPunct.find(c) != std::string_view::npos; }

void push(std::vector<Token>& out, std::string_view surface) {
  out.push_back(Token{std::string(surface), to_lower(surface)});
}

void split_word(std::vector<Token>& out, std::string_view word) {
  std::string lower = to_lower(word);
  for (const auto& c : kIrregular) {
    if (lower == c.word) {
      // keep the written case where the parts are substrings of the word
      std::string first(c.first), second(c.second);
      if (lower.starts_with(c.first)) first = word.substr(0, c.first.size());
      else if (word[0] >= 'A' && word[0] <= 'Z') first[0] = static_cast<char>(first[0] - 'a' + 'A');
      if (lower.ends_with(c.second)) second = word.substr(word.size() - c.second.size());
      out.push_back(Token{first, std::string(c.first)});
      out.push_back(Token{second, std::string(c.second)});
      return;
    }
  }
  for (std::string_view suffix : kSuffixes) {
    if (lower.size() > suffix.size() && lower.ends_with(suffix)) {
      std::size_t cut = word.size() - suffix.size();
      push(out, word.substr(0, cut));
      push(out, word.substr(cut));
      return;
    }
  }
  push(out, word);
}

}  // namespace

std::span<const Contraction> irregular_contractions() { return kIrregular; }
std::span<const std::string_view> contraction_suffixes() { return kSuffixes; }

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  for (std::string_view chunk : detail::split_ws(text)) {
    // split_ws only breaks on space/tab; treat other whitespace as a separator too
    std::size_t start = 0;
    while (start < chunk.size()) {
      std::size_t end = chunk.find_first_of("\r\n\v\f", start);
      if (end == std::string_view::npos) end = chunk.size();
      std::string_view word = chunk.substr(start, end - start);
      start = end + 1;
      if (word.empty()) continue;

      std::size_t lead = 0;
      while (lead < word.size() && is_punct(word[lead])) ++lead;
      std::size_t trail = word.size();
      while (trail > lead && is_punct(word[trail - 1])) --trail;

      for (std::size_t i = 0; i < lead; ++i) push(out, word.substr(i, 1));
      if (trail > lead) split_word(out, word.substr(lead, trail - lead));
      for (std::size_t i = trail; i < word.size(); ++i) push(out, word.substr(i, 1));
    }
  }
  return out;
}

std::vector<std::size_t> AnalyzedSentence::live() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!tokens[i].deleted) out.push_back(i);
  }
  return out;
}

std::size_t AnalyzedSentence::live_count() const {
  return static_cast<std::size_t>(std::count_if(tokens.begin(), tokens.end(), [](const auto& t) { return !t.deleted; }));
}

AnalyzedSentence analyze_sentence(std::span<const Token> tokens, const FormTable& table) {
  AnalyzedSentence s;
  s.tokens.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    AnalyzedToken t;
    t.surface = tokens[i].surface;
    t.norm = tokens[i].norm;
    t.analyses = analyze(tokens[i].norm, table);
    t.origin_index = i;
    s.tokens.push_back(std::move(t));
  }
  return s;
}

std::vector<AnalyzedSentence> parse_preanalyzed(std::string_view text) {
  std::vector<AnalyzedSentence> out;
  AnalyzedSentence current;
  std::size_t number = 0;
  std::size_t start = 0;
  auto flush = [&] {
    if (!current.tokens.empty()) out.push_back(std::move(current));
    current = {};
  };
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (detail::trim(line).empty()) {
      flush();
      if (end == text.size()) break;
      continue;
    }
    auto cols = detail::split_tabs(line);
    if (cols.size() < 3 || cols.size() > 4) {
      throw LexiconError("<pre-analyzed>", number, "expected surface<TAB>lexeme<TAB>pos<TAB>features");
    }
    AnalyzedToken t;
    t.surface = std::string(cols[0]);
    t.norm = to_lower(cols[0]);
    Analysis a{std::string(cols[1]), std::string(cols[2]), {}};
    if (cols.size() == 4) {
      try {
        a.features = parse_features(cols[3]);
      } catch (const std::invalid_argument& e) {
        throw LexiconError("<pre-analyzed>", number, e.what());
      }
    }
    t.analyses.push_back(std::move(a));
    t.origin_index = current.tokens.size();
    current.tokens.push_back(std::move(t));
    if (end == text.size()) break;
  }
  flush();
  return out;
}

bool item_accepts(const GroupItem& item, const Analysis& analysis, std::string_view norm,
                  const CategoryDict& categories) {
  switch (item.kind) {
    case ItemKind::Wordform:
      if (to_lower(item.text) != norm) return false;
      break;
    case ItemKind::Lexeme:
      if (item.text != analysis.lexeme) return false;
      break;
    case ItemKind::Category:
      if (is_pos_category(item.text)) {
        if (item.tag() != analysis.pos) return false;
      } else if (!categories.contains(analysis.lexeme, item.text) && !categories.contains(norm, item.text)) {
        return false;
      }
      break;
  }
  return unifiable(item.constraints, analysis.features);
}

std::optional<std::size_t> match_item(const GroupItem& item, const AnalyzedToken& token,
                                      const CategoryDict& categories) {
  for (std::size_t i = 0; i < token.analyses.size(); ++i) {
    if (item_accepts(item, token.analyses[i], token.norm, categories)) return i;
  }
  return std::nullopt;
}

namespace {

// Tries `rule` at live[k...]; on success rewrites `s` and returns the pattern length.
std::optional<std::size_t> try_rule(AnalyzedSentence& s, const std::vector<std::size_t>& live, std::size_t k,
                                    const TransformRule& rule, const CategoryDict& categories) {
  const std::size_t n = rule.pattern.size();
  if (n == 0 || k + n > live.size()) return std::nullopt;
  std::vector<std::size_t> chosen(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto m = match_item(rule.pattern[j], s.tokens[live[k + j]], categories);
    if (!m) return std::nullopt;
    chosen[j] = *m;
  }
  std::vector<std::pair<std::size_t, Analysis>> updates;
  for (const auto& act : rule.actions) {
    const AnalyzedToken& tok = s.tokens[live[k + act.position - 1]];
    Analysis a = tok.analyses[chosen[act.position - 1]];
    auto merged = unify(a.features, act.features);
    if (!merged) return std::nullopt;
    a.features = std::move(*merged);
    updates.emplace_back(live[k + act.position - 1], std::move(a));
  }
  for (auto& [index, analysis] : updates) {
    s.tokens[index].analyses = {std::move(analysis)};
    s.tokens[index].transformed = true;
  }
  for (std::size_t d : rule.deletions) s.tokens[live[k + d - 1]].deleted = true;
  return n;
}

}  // namespace

AnalyzedSentence apply_transforms(AnalyzedSentence sentence, std::span<const TransformRule> rules,
                                  const CategoryDict& categories) {
  const std::vector<std::size_t> live = sentence.live();
  std::size_t k = 0;
  while (k < live.size()) {
    std::size_t advance = 1;
    for (const auto& rule : rules) {
      if (auto len = try_rule(sentence, live, k, rule, categories)) {
        advance = *len;
        break;
      }
    }
    k += advance;
  }
  return sentence;
}

std::string format_analysis(const Analysis& analysis) {
  if (analysis.features.empty()) return analysis.lexeme;
  return analysis.lexeme + "[" + analysis.features.str() + "]";
}

std::string format_sentence(const AnalyzedSentence& sentence) {
  std::string out;
  for (const auto& t : sentence.tokens) {
    if (t.deleted) continue;
    if (!out.empty()) out += ' ';
    for (std::size_t i = 0; i < t.analyses.size(); ++i) {
      if (i) out += '|';
      const Analysis& a = t.analyses[i];
      out += a.pos == kUnknownPos ? t.surface : format_analysis(a);
    }
  }
  return out;
}

}  // namespace mdt
