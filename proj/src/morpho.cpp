#include "mdt/morpho.hpp"

#include <algorithm>
#include <stdexcept>

#include "mdt/error.hpp"
#include "text_util.hpp"

namespace mdt {

std::string lexeme_pos(std::string_view lexeme) {
  if (!is_lexeme_id(lexeme)) return {};
  return std::string(lexeme.substr(lexeme.rfind('_') + 1));
}

bool is_lexeme_id(std::string_view text) {
  std::size_t us = text.rfind('_');
  if (us == std::string_view::npos || us == 0 || us + 1 == text.size()) return false;
  return std::all_of(text.begin() + static_cast<std::ptrdiff_t>(us) + 1, text.end(),
                     [](char c) { return c >= 'a' && c <= 'z'; });
}

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

void FormTable::add(std::string wordform, Analysis analysis, std::size_t line) {
  std::size_t index = rows_.size();
  by_form_[to_lower(wordform)].push_back(index);
  by_lexeme_[analysis.lexeme].push_back(index);
  rows_.push_back(Row{std::move(wordform), std::move(analysis), line});
}

std::vector<const FormTable::Row*> FormTable::by_wordform(std::string_view wordform) const {
  std::vector<const Row*> out;
  if (auto it = by_form_.find(to_lower(wordform)); it != by_form_.end()) {
    for (std::size_t i : it->second) out.push_back(&rows_[i]);
  }
  return out;
}

std::vector<const FormTable::Row*> FormTable::by_lexeme(std::string_view lexeme) const {
  std::vector<const Row*> out;
  if (auto it = by_lexeme_.find(std::string(lexeme)); it != by_lexeme_.end()) {
    for (std::size_t i : it->second) out.push_back(&rows_[i]);
  }
  return out;
}

namespace {

FeatureMap features_at(std::string_view column, const std::string& filename, std::size_t line) {
  try {
    return parse_features(column);
  } catch (const std::invalid_argument& e) {
    throw LexiconError(filename, line, e.what());
  }
}

}  // namespace

FormTable parse_analysis_table(std::string_view text, const std::string& filename) {
  FormTable table;
  detail::for_each_line(text, [&](std::string_view line, std::size_t number) {
    auto cols = detail::split_tabs(line);
    if (cols.size() < 3 || cols.size() > 4) {
      throw LexiconError(filename, number, "expected wordform<TAB>lexeme<TAB>pos<TAB>features");
    }
    if (cols[0].empty() || cols[1].empty() || cols[2].empty()) {
      throw LexiconError(filename, number, "empty column");
    }
    FeatureMap features = cols.size() == 4 ? features_at(cols[3], filename, number) : FeatureMap{};
    table.add(std::string(cols[0]), Analysis{std::string(cols[1]), std::string(cols[2]), std::move(features)}, number);
  });
  return table;
}

FormTable parse_generation_table(std::string_view text, const std::string& filename) {
  FormTable table;
  detail::for_each_line(text, [&](std::string_view line, std::size_t number) {
    auto cols = detail::split_tabs(line);
    if (cols.size() != 3) throw LexiconError(filename, number, "expected lexeme<TAB>features<TAB>wordform");
    if (cols[0].empty() || cols[2].empty()) throw LexiconError(filename, number, "empty column");
    if (!is_lexeme_id(cols[0])) {
      throw LexiconError(filename, number, "'" + std::string(cols[0]) + "' is not a lexeme identifier (name_pos)");
    }
    table.add(std::string(cols[2]),
              Analysis{std::string(cols[0]), lexeme_pos(cols[0]), features_at(cols[1], filename, number)}, number);
  });
  return table;
}

std::vector<Analysis> analyze(std::string_view wordform, const FormTable& table) {
  std::vector<Analysis> out;
  for (const FormTable::Row* row : table.by_wordform(wordform)) {
    if (std::find(out.begin(), out.end(), row->analysis) == out.end()) out.push_back(row->analysis);
  }
  if (out.empty()) out.push_back(Analysis{to_lower(wordform), std::string(kUnknownPos), {}});
  return out;
}

std::vector<std::string> generate(std::string_view lexeme, const FeatureMap& features, const FormTable& table) {
  std::vector<std::string> out;
  for (const FormTable::Row* row : table.by_lexeme(lexeme)) {
    if (!unifiable(row->analysis.features, features)) continue;
    if (std::find(out.begin(), out.end(), row->wordform) == out.end()) out.push_back(row->wordform);
  }
  return out;
}

}  // namespace mdt
