#include "mdt/features.hpp"

#include <stdexcept>

namespace mdt {

std::string FeatureMap::str() const {
  std::string out;
  for (const auto& [name, value] : entries_) {
    if (!out.empty()) out += ',';
    if (value == kFlagValue) {
      out += '+';
      out += name;
    } else {
      out += name;
      out += '=';
      out += value;
    }
  }
  return out;
}

std::optional<FeatureMap> unify(const FeatureMap& a, const FeatureMap& b) {
  FeatureMap out = a;
  for (const auto& [name, value] : b) {
    if (const std::string* mine = a.get(name)) {
      if (*mine != value) return std::nullopt;
    } else {
      out.set(name, value);
    }
  }
  return out;
}

bool unifiable(const FeatureMap& a, const FeatureMap& b) {
  const FeatureMap& small = a.size() <= b.size() ? a : b;
  const FeatureMap& large = a.size() <= b.size() ? b : a;
  for (const auto& [name, value] : small) {
    if (const std::string* other = large.get(name); other && *other != value) return false;
  }
  return true;
}

bool is_feature_atom(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

FeatureMap parse_features(std::string_view text) {
  FeatureMap out;
  text = trim(text);
  if (text.empty()) return out;

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view part = trim(text.substr(start, comma - start));
    start = comma + 1;

    if (part.empty()) throw std::invalid_argument("empty feature in '" + std::string(text) + "'");
    std::string name;
    std::string value;
    if (part.front() == '-') {
      throw std::invalid_argument("negative flag '" + std::string(part) + "' is not supported");
    } else if (part.front() == '+') {
      name = std::string(part.substr(1));
      value = std::string(kFlagValue);
    } else {
      std::size_t eq = part.find('=');
      if (eq == std::string_view::npos) {
        throw std::invalid_argument("feature '" + std::string(part) + "' needs '=value' or a '+' prefix");
      }
      name = std::string(trim(part.substr(0, eq)));
      value = std::string(trim(part.substr(eq + 1)));
    }
    if (!is_feature_atom(name)) throw std::invalid_argument("bad feature name '" + name + "'");
    if (!is_feature_atom(value)) throw std::invalid_argument("bad value '" + value + "' for feature " + name);
    if (out.contains(name)) throw std::invalid_argument("duplicate feature '" + name + "'");
    out.set(std::move(name), std::move(value));
    if (comma == text.size()) break;
  }
  return out;
}

}  // namespace mdt
