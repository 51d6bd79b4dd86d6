#include "mdt/solver.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace mdt {

std::vector<std::size_t> GroupInstance::slots() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < entry->items.size(); ++i) {
    if (entry->items[i].is_category()) out.push_back(i);
  }
  return out;
}

std::optional<std::size_t> Assignment::filler_of(std::size_t host, std::size_t slot) const {
  for (const auto& m : merges) {
    if (m.host == host && m.slot == slot) return m.filler;
  }
  return std::nullopt;
}

bool Assignment::is_filler(std::size_t i) const {
  return std::any_of(merges.begin(), merges.end(), [i](const MergeLink& m) { return m.filler == i; });
}

// ---------------------------------------------------------------------------
// Candidates

namespace {

struct Matcher {
  const AnalyzedSentence& sentence;
  const std::vector<std::size_t>& live;
  const GroupEntry& entry;
  const CategoryDict& cats;
  std::size_t max_gap;

  std::vector<std::size_t> pos;  // live indices per item
  std::vector<Analysis> matched;
  std::vector<std::vector<std::size_t>> found_pos;
  std::vector<std::vector<Analysis>> found_matched;

  bool accept(std::size_t item, std::size_t live_index) {
    const AnalyzedToken& tok = sentence.tokens[live[live_index]];
    auto m = match_item(entry.items[item], tok, cats);
    if (!m) return false;
    pos[item] = live_index;
    matched[item] = tok.analyses[*m];
    return true;
  }

  // Fill items left of the head, right to left; then the right side.
  void left(std::size_t item) {
    if (item == 0) {
      right(entry.head_index);
      return;
    }
    std::size_t next = pos[item];
    for (std::size_t gap = 0; gap <= max_gap; ++gap) {
      if (next < gap + 1) break;
      std::size_t cand = next - gap - 1;
      if (accept(item - 1, cand)) left(item - 1);
    }
  }

  void right(std::size_t item) {
    if (item == entry.items.size()) {
      found_pos.push_back(pos);
      found_matched.push_back(matched);
      return;
    }
    std::size_t prev = pos[item - 1];
    for (std::size_t gap = 0; gap <= max_gap; ++gap) {
      std::size_t cand = prev + gap + 1;
      if (cand >= live.size()) break;
      if (accept(item, cand)) right(item + 1);
    }
  }

  void run(std::size_t head_live) {
    pos.assign(entry.items.size(), 0);
    matched.assign(entry.items.size(), Analysis{});
    if (!accept(entry.head_index - 1, head_live)) return;
    left(entry.head_index - 1);
  }
};

}  // namespace

std::vector<GroupInstance> find_candidates(const AnalyzedSentence& sentence, const Lexicon& lexicon,
                                           std::size_t max_gap) {
  const std::vector<std::size_t> live = sentence.live();
  std::vector<GroupInstance> out;
  for (std::size_t k = 0; k < live.size(); ++k) {
    const AnalyzedToken& tok = sentence.tokens[live[k]];
    std::set<std::size_t> entry_ids;
    auto collect = [&](const std::string& key) {
      for (std::size_t id : lexicon.entries_headed_by(key)) entry_ids.insert(id);
    };
    collect(tok.norm);
    for (const auto& a : tok.analyses) collect(a.lexeme);

    for (std::size_t id : entry_ids) {
      const GroupEntry& entry = lexicon.entries()[id];
      Matcher m{sentence, live, entry, lexicon.categories(), max_gap, {}, {}, {}, {}};
      m.run(k);
      for (std::size_t f = 0; f < m.found_pos.size(); ++f) {
        GroupInstance inst;
        inst.entry = &entry;
        inst.entry_index = id;
        for (std::size_t li : m.found_pos[f]) inst.positions.push_back(live[li]);
        inst.matched = std::move(m.found_matched[f]);
        out.push_back(std::move(inst));
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const GroupInstance& a, const GroupInstance& b) {
    if (a.first() != b.first()) return a.first() < b.first();
    if (a.entry_index != b.entry_index) return a.entry_index < b.entry_index;
    return a.positions < b.positions;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Scoring and verification

Score score(const Assignment& assignment) {
  std::set<std::size_t> covered;
  for (const auto& inst : assignment.instances) covered.insert(inst.positions.begin(), inst.positions.end());
  return Score{static_cast<long>(covered.size()), -static_cast<long>(assignment.instances.size())};
}

namespace {

// Whether filler's head reading fits host's category item.
bool slot_accepts(const GroupInstance& host, std::size_t slot, const GroupInstance& filler,
                  const AnalyzedSentence& sentence, const CategoryDict& cats) {
  if (host.positions[slot] != filler.head_token()) return false;
  const Analysis& reading = filler.matched[filler.entry->head_index - 1];
  return item_accepts(host.entry->items[slot], reading, sentence.tokens[filler.head_token()].norm, cats);
}

bool has_cycle(std::size_t n, const std::vector<MergeLink>& merges) {
  // host -> filler edges; a filler has exactly one host, so follow parents.
  std::vector<std::optional<std::size_t>> parent(n);
  for (const auto& m : merges) parent[m.filler] = m.host;
  for (std::size_t start = 0; start < n; ++start) {
    std::size_t cur = start;
    for (std::size_t steps = 0; parent[cur]; ++steps) {
      cur = *parent[cur];
      if (cur == start || steps > n) return true;
    }
  }
  return false;
}

}  // namespace

std::vector<std::string> verify_assignment(const Assignment& a, const AnalyzedSentence& sentence,
                                           const CategoryDict& cats) {
  std::vector<std::string> out;
  const std::size_t n = a.instances.size();
  struct Use {
    std::size_t instance;
    std::size_t item;
  };
  std::map<std::size_t, std::vector<Use>> uses;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& inst = a.instances[i];
    if (inst.positions.size() != inst.entry->items.size()) out.push_back("instance " + std::to_string(i) + ": arity mismatch");
    for (std::size_t j = 0; j < inst.positions.size(); ++j) {
      std::size_t t = inst.positions[j];
      if (j > 0 && inst.positions[j - 1] >= t) out.push_back("instance " + std::to_string(i) + ": positions not increasing");
      if (t >= sentence.tokens.size()) {
        out.push_back("instance " + std::to_string(i) + ": position out of range");
        continue;
      }
      if (sentence.tokens[t].deleted) out.push_back("instance " + std::to_string(i) + " covers deleted token " + std::to_string(t));
      uses[t].push_back({i, j});
    }
  }

  std::set<std::pair<std::size_t, std::size_t>> expected;  // (host, slot) pairs that must be merged
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t s : a.instances[i].slots()) expected.insert({i, s});
  }

  for (const auto& [token, list] : uses) {
    if (list.size() == 1) continue;
    std::string where = "token " + std::to_string(token);
    if (list.size() > 2) {
      out.push_back(where + " covered " + std::to_string(list.size()) + " times");
      continue;
    }
    auto is_slot = [&](const Use& u) { return a.instances[u.instance].entry->items[u.item].is_category(); };
    auto is_head = [&](const Use& u) { return a.instances[u.instance].entry->head_index == u.item + 1; };
    const Use* slot = nullptr;
    const Use* head = nullptr;
    for (const auto& u : list) {
      if (is_slot(u)) slot = &u;
      else if (is_head(u)) head = &u;
    }
    if (!slot || !head || slot->instance == head->instance) {
      out.push_back(where + " shared without a slot/head merge");
      continue;
    }
    auto filler = a.filler_of(slot->instance, slot->item);
    if (!filler || *filler != head->instance) out.push_back(where + " merge not recorded");
  }

  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::set<std::size_t> fillers;
  for (const auto& m : a.merges) {
    if (m.host >= n || m.filler >= n) {
      out.push_back("merge link out of range");
      continue;
    }
    if (!seen.insert({m.host, m.slot}).second) out.push_back("slot merged twice");
    if (!fillers.insert(m.filler).second) out.push_back("instance " + std::to_string(m.filler) + " fills two slots");
    if (!expected.count({m.host, m.slot})) {
      out.push_back("merge into non-category item");
      continue;
    }
    if (!slot_accepts(a.instances[m.host], m.slot, a.instances[m.filler], sentence, cats)) {
      out.push_back("instance " + std::to_string(m.filler) + " cannot fill slot " + std::to_string(m.slot + 1) +
                    " of instance " + std::to_string(m.host));
    }
  }
  for (const auto& e : expected) {
    if (!seen.count(e)) {
      out.push_back("dangling slot " + std::to_string(e.second + 1) + " of instance " + std::to_string(e.first));
    }
  }
  if (out.empty() && has_cycle(n, a.merges)) out.push_back("cyclic merge links");
  if (a.score != score(a)) out.push_back("stale score");
  return out;
}

// ---------------------------------------------------------------------------
// Search

namespace {

enum class UseKind : unsigned char { Other, Head, Slot };

struct TokenUse {
  std::size_t candidate;
  std::size_t item;
  UseKind kind;
};

class Search {
 public:
  Search(std::span<const GroupInstance> cands, const AnalyzedSentence& sentence, const CategoryDict& cats)
      : cands_(cands), sentence_(sentence), cats_(cats), uses_(sentence.tokens.size()) {}

  std::vector<std::vector<std::size_t>> run() {
    prune_unfillable();
    suffix_cover_.assign(order_.size() + 1, {});
    for (std::size_t i = order_.size(); i-- > 0;) {
      suffix_cover_[i] = suffix_cover_[i + 1];
      for (std::size_t t : cands_[order_[i]].positions) suffix_cover_[i].insert(t);
    }
    best_ = Score{-1, 0};
    results_.clear();
    recurse(0);
    return results_;
  }

  std::vector<MergeLink> merges_for(const std::vector<std::size_t>& chosen) const {
    std::vector<MergeLink> out;
    for (std::size_t hi = 0; hi < chosen.size(); ++hi) {
      const GroupInstance& host = cands_[chosen[hi]];
      for (std::size_t slot : host.slots()) {
        for (std::size_t fi = 0; fi < chosen.size(); ++fi) {
          if (fi != hi && cands_[chosen[fi]].head_token() == host.positions[slot]) {
            out.push_back(MergeLink{hi, slot, fi});
          }
        }
      }
    }
    return out;
  }

 private:
  UseKind kind_of(const GroupInstance& c, std::size_t item) const {
    if (c.entry->items[item].is_category()) return UseKind::Slot;
    if (c.entry->head_index == item + 1) return UseKind::Head;
    return UseKind::Other;
  }

  // Drops candidates whose slots no other candidate could fill, to a fixpoint.
  void prune_unfillable() {
    std::vector<bool> alive(cands_.size(), true);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < cands_.size(); ++i) {
        if (!alive[i]) continue;
        for (std::size_t slot : cands_[i].slots()) {
          bool fillable = false;
          for (std::size_t j = 0; j < cands_.size() && !fillable; ++j) {
            fillable = j != i && alive[j] && slot_accepts(cands_[i], slot, cands_[j], sentence_, cats_);
          }
          if (!fillable) {
            alive[i] = false;
            changed = true;
            break;
          }
        }
      }
    }
    for (std::size_t i = 0; i < cands_.size(); ++i) {
      if (alive[i]) order_.push_back(i);
    }
  }

  // Whether candidate c can be added given current token uses.
  bool compatible(std::size_t c) const {
    const GroupInstance& cand = cands_[c];
    for (std::size_t j = 0; j < cand.positions.size(); ++j) {
      const auto& existing = uses_[cand.positions[j]];
      if (existing.empty()) continue;
      if (existing.size() >= 2) return false;
      const TokenUse& other = existing.front();
      UseKind mine = kind_of(cand, j);
      const GroupInstance& oc = cands_[other.candidate];
      if (mine == UseKind::Slot && other.kind == UseKind::Head) {
        if (!slot_accepts(cand, j, oc, sentence_, cats_)) return false;
      } else if (mine == UseKind::Head && other.kind == UseKind::Slot) {
        if (!slot_accepts(oc, other.item, cand, sentence_, cats_)) return false;
      } else {
        return false;
      }
    }
    return true;
  }

  void add(std::size_t c) {
    const GroupInstance& cand = cands_[c];
    for (std::size_t j = 0; j < cand.positions.size(); ++j) {
      auto& u = uses_[cand.positions[j]];
      if (u.empty()) ++covered_;
      u.push_back(TokenUse{c, j, kind_of(cand, j)});
    }
    chosen_.push_back(c);
  }

  void remove(std::size_t c) {
    const GroupInstance& cand = cands_[c];
    for (std::size_t t : cand.positions) {
      auto& u = uses_[t];
      u.erase(std::find_if(u.begin(), u.end(), [c](const TokenUse& x) { return x.candidate == c; }));
      if (u.empty()) --covered_;
    }
    chosen_.pop_back();
  }

  bool complete() const {
    // every slot shares its token with another chosen instance's head
    for (std::size_t c : chosen_) {
      for (std::size_t slot : cands_[c].slots()) {
        if (uses_[cands_[c].positions[slot]].size() != 2) return false;
      }
    }
    std::vector<MergeLink> merges = merges_for(chosen_);
    return !has_cycle(chosen_.size(), merges);
  }

  void recurse(std::size_t i) {
    const long groups = static_cast<long>(chosen_.size());
    long bound = static_cast<long>(covered_);
    for (std::size_t t : suffix_cover_[i]) {
      if (uses_[t].empty()) ++bound;
    }
    if (bound < best_.covered) return;
    if (bound == best_.covered) {
      long min_groups = groups + (static_cast<long>(covered_) < best_.covered ? 1 : 0);
      if (-min_groups < best_.neg_groups) return;
    }

    if (i == order_.size()) {
      if (!complete()) return;
      Score s{static_cast<long>(covered_), -groups};
      if (s > best_) {
        best_ = s;
        results_.clear();
      }
      if (s == best_) results_.push_back(chosen_);
      return;
    }
    std::size_t c = order_[i];
    if (compatible(c)) {
      add(c);
      recurse(i + 1);
      remove(c);
    }
    recurse(i + 1);
  }

  std::span<const GroupInstance> cands_;
  const AnalyzedSentence& sentence_;
  const CategoryDict& cats_;
  std::vector<std::vector<TokenUse>> uses_;
  std::vector<std::size_t> order_;
  std::vector<std::set<std::size_t>> suffix_cover_;
  std::vector<std::size_t> chosen_;
  std::size_t covered_ = 0;
  Score best_;
  std::vector<std::vector<std::size_t>> results_;
};

struct SpanKey {
  std::size_t first;
  std::size_t neg_len;  // inverted length so longer sorts first
  std::size_t entry;
  auto operator<=>(const SpanKey&) const = default;
};

std::vector<SpanKey> span_keys(const Assignment& a) {
  std::vector<SpanKey> keys;
  for (const auto& inst : a.instances) {
    std::size_t len = inst.last() - inst.first() + 1;
    keys.push_back(SpanKey{inst.first(), static_cast<std::size_t>(-1) - len, inst.entry_index});
  }
  return keys;
}

}  // namespace

std::vector<Assignment> solve(std::span<const GroupInstance> candidates, const AnalyzedSentence& sentence,
                              const CategoryDict& categories) {
  Search search(candidates, sentence, categories);
  std::vector<Assignment> out;
  for (auto chosen : search.run()) {
    // canonical instance order: by first token, then entry, then positions
    std::sort(chosen.begin(), chosen.end(), [&](std::size_t x, std::size_t y) {
      const auto& a = candidates[x];
      const auto& b = candidates[y];
      if (a.first() != b.first()) return a.first() < b.first();
      if (a.entry_index != b.entry_index) return a.entry_index < b.entry_index;
      return x < y;
    });
    Assignment a;
    for (std::size_t c : chosen) a.instances.push_back(candidates[c]);
    a.merges = search.merges_for(chosen);
    a.score = score(a);
    out.push_back(std::move(a));
  }
  std::stable_sort(out.begin(), out.end(), [](const Assignment& x, const Assignment& y) {
    if (x.score != y.score) return x.score > y.score;
    return span_keys(x) < span_keys(y);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Debug dump

std::string format_instance(const Assignment& a, std::size_t index) {
  const GroupInstance& inst = a.instances[index];
  std::string out = "span=" + std::to_string(inst.first()) + ".." + std::to_string(inst.last());
  out += " head=" + inst.matched[inst.entry->head_index - 1].lexeme;
  out += " entry=" + std::to_string(inst.entry_index + 1);
  out += " merges=[";
  bool first = true;
  for (const auto& m : a.merges) {
    if (m.host != index) continue;
    if (!first) out += ',';
    first = false;
    const GroupInstance& f = a.instances[m.filler];
    out += std::to_string(m.slot + 1) + ":" + f.matched[f.entry->head_index - 1].lexeme + "@" +
           std::to_string(f.head_token());
  }
  return out + "]";
}

std::string dump_assignment(const Assignment& a) {
  std::string out;
  for (std::size_t i = 0; i < a.instances.size(); ++i) out += format_instance(a, i) + "\n";
  return out;
}

}  // namespace mdt
