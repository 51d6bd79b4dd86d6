#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace mdt {

/// Value stored for a flag feature written `+name`.
inline constexpr std::string_view kFlagValue = "true";

/// A partial map from feature names (tns, tam, sb, def, ...) to atomic values.
///
/// Entries are kept sorted by name so iteration, printing and comparison are
/// deterministic. Flags written `+def` are stored as `def=true` and printed
/// back in the `+def` form.
class FeatureMap {
 public:
  using Storage = std::map<std::string, std::string, std::less<>>;
  using const_iterator = Storage::const_iterator;

  FeatureMap() = default;
  FeatureMap(std::initializer_list<Storage::value_type> init) : entries_(init) {}

  /// Sets `name` to `value`, replacing any previous value.
  void set(std::string name, std::string value) { entries_[std::move(name)] = std::move(value); }
  void set_flag(std::string name) { set(std::move(name), std::string(kFlagValue)); }

  const std::string* get(std::string_view name) const {
    auto it = entries_.find(name);
    return it == entries_.end() ? nullptr : &it->second;
  }
  bool contains(std::string_view name) const { return entries_.find(name) != entries_.end(); }

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const_iterator begin() const { return entries_.begin(); }
  const_iterator end() const { return entries_.end(); }

  /// Comma-separated `name=value` / `+flag` list, without brackets.
  std::string str() const;

  friend bool operator==(const FeatureMap&, const FeatureMap&) = default;

 private:
  Storage entries_;
};

/// Union of `a` and `b`, or nullopt when some shared name has different values.
std::optional<FeatureMap> unify(const FeatureMap& a, const FeatureMap& b);

/// True iff unify(a, b) would succeed.
bool unifiable(const FeatureMap& a, const FeatureMap& b);

/// Parses `f=v,+g,...` (no surrounding brackets). An empty string gives an
/// empty map. Throws std::invalid_argument on malformed input, duplicate names,
/// or negative flags (`-f`), which are not supported.
FeatureMap parse_features(std::string_view text);

/// True for identifiers usable as feature names or values.
bool is_feature_atom(std::string_view text);

}  // namespace mdt
