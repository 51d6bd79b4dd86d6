#include "mdt/xfer.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace mdt {

const TargetGroupInstance* TargetGroupInstance::expansion_at(std::size_t item) const {
  for (std::size_t i = 0; i < slot_items.size(); ++i) {
    if (slot_items[i] == item) return &expansions[i];
  }
  return nullptr;
}

namespace {

std::size_t head_target(const GroupEntry& entry, const Translation& tr) {
  return tr.alignment[entry.head_index - 1] - 1;
}

bool unify_into_head(TargetGroupInstance& tree, const FeatureMap& extra) {
  auto merged = unify(tree.item_features[tree.head_item], extra);
  if (!merged) return false;
  tree.item_features[tree.head_item] = std::move(*merged);
  return true;
}

class Transfer {
 public:
  Transfer(const Assignment& a, std::string_view lang, std::size_t limit) : a_(a), lang_(lang), limit_(limit) {}

  std::vector<TargetGroupInstance> alternatives(std::size_t index) {
    if (auto it = memo_.find(index); it != memo_.end()) return it->second;
    std::vector<TargetGroupInstance> out;
    const GroupInstance& inst = a_.instances[index];
    const GroupEntry& entry = *inst.entry;

    for (std::size_t ti = 0; ti < entry.translations.size() && out.size() < limit_; ++ti) {
      const Translation& tr = entry.translations[ti];
      if (tr.target_lang != lang_) continue;

      TargetGroupInstance base;
      base.instance = index;
      base.translation_index = ti;
      base.translation = &tr;
      base.head_item = head_target(entry, tr);
      for (const auto& item : tr.items) base.item_features.push_back(item.constraints);

      // features each target item receives by agreement
      std::vector<FeatureMap> incoming(tr.items.size());
      bool ok = true;
      for (const auto& agr : tr.agreements) {
        const FeatureMap& src = inst.matched[agr.source_pos - 1].features;
        FeatureMap copied;
        for (const auto& [from, to] : agr.mappings) {
          if (const std::string* v = src.get(from)) copied.set(to, *v);
        }
        auto merged = unify(incoming[agr.target_pos - 1], copied);
        if (!merged) {
          ok = false;
          break;
        }
        incoming[agr.target_pos - 1] = std::move(*merged);
      }
      if (!ok) continue;

      for (std::size_t t = 0; t < tr.items.size() && ok; ++t) {
        if (tr.items[t].is_category()) continue;
        auto merged = unify(base.item_features[t], incoming[t]);
        if (!merged) ok = false;
        else base.item_features[t] = std::move(*merged);
      }
      if (!ok) continue;

      // slots: each target category item takes the transfer of the instance
      // merged into the source category aligned to it
      std::vector<std::vector<TargetGroupInstance>> slot_choices;
      for (std::size_t s = 0; s < entry.items.size() && ok; ++s) {
        if (!entry.items[s].is_category()) continue;
        std::size_t t = tr.alignment[s] - 1;
        auto filler = a_.filler_of(index, s);
        if (!filler) {
          ok = false;
          break;
        }
        auto extra = unify(tr.items[t].constraints, incoming[t]);
        if (!extra) {
          ok = false;
          break;
        }
        std::vector<TargetGroupInstance> viable;
        for (auto sub : alternatives(*filler)) {
          if (unify_into_head(sub, *extra)) viable.push_back(std::move(sub));
        }
        if (viable.empty()) ok = false;
        base.slot_items.push_back(t);
        slot_choices.push_back(std::move(viable));
      }
      if (!ok) continue;

      // keep slot_items ascending by target position
      std::vector<std::size_t> order(base.slot_items.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return base.slot_items[x] < base.slot_items[y]; });
      std::vector<std::size_t> sorted_items;
      std::vector<std::vector<TargetGroupInstance>> sorted_choices;
      for (std::size_t i : order) {
        sorted_items.push_back(base.slot_items[i]);
        sorted_choices.push_back(std::move(slot_choices[i]));
      }
      base.slot_items = std::move(sorted_items);

      product(base, sorted_choices, 0, out);
    }
    memo_[index] = out;
    return out;
  }

 private:
  void product(TargetGroupInstance& base, const std::vector<std::vector<TargetGroupInstance>>& choices,
               std::size_t k, std::vector<TargetGroupInstance>& out) {
    if (out.size() >= limit_) return;
    if (k == choices.size()) {
      out.push_back(base);
      return;
    }
    for (const auto& c : choices[k]) {
      base.expansions.push_back(c);
      product(base, choices, k + 1, out);
      base.expansions.pop_back();
      if (out.size() >= limit_) return;
    }
  }

  const Assignment& a_;
  std::string_view lang_;
  std::size_t limit_;
  std::map<std::size_t, std::vector<TargetGroupInstance>> memo_;
};

}  // namespace

std::vector<TransferOption> transfer(const Assignment& assignment, std::string_view target_lang, std::size_t limit) {
  Transfer t(assignment, target_lang, limit);

  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < assignment.instances.size(); ++i) {
    if (!assignment.is_filler(i)) roots.push_back(i);
  }
  std::sort(roots.begin(), roots.end(), [&](std::size_t x, std::size_t y) {
    return assignment.instances[x].head_token() < assignment.instances[y].head_token();
  });

  std::vector<std::vector<TargetGroupInstance>> choices;
  std::vector<std::size_t> failed;
  std::vector<std::size_t> kept;
  for (std::size_t r : roots) {
    auto alts = t.alternatives(r);
    if (alts.empty()) {
      failed.push_back(r);
    } else {
      kept.push_back(r);
      choices.push_back(std::move(alts));
    }
  }

  std::vector<TransferOption> out;
  TransferOption current;
  current.untranslated = failed;
  auto rec = [&](auto& self, std::size_t k) -> void {
    if (out.size() >= limit) return;
    if (k == choices.size()) {
      out.push_back(current);
      return;
    }
    for (const auto& c : choices[k]) {
      current.roots.push_back(c);
      self(self, k + 1);
      current.roots.pop_back();
      if (out.size() >= limit) return;
    }
  };
  if (limit > 0) rec(rec, 0);
  return out;
}

std::vector<LinearItem> linearize(const TargetGroupInstance& tree, const Assignment& assignment) {
  std::vector<LinearItem> out;
  const Translation& tr = *tree.translation;
  const GroupInstance& inst = assignment.instances[tree.instance];
  for (std::size_t t = 0; t < tr.items.size(); ++t) {
    if (const TargetGroupInstance* sub = tree.expansion_at(t)) {
      auto inner = linearize(*sub, assignment);
      out.insert(out.end(), inner.begin(), inner.end());
      continue;
    }
    LinearItem item;
    item.kind = LinearItem::Kind::Target;
    item.text = tr.items[t].text;
    item.lexeme = tr.items[t].kind == ItemKind::Lexeme;
    item.features = tree.item_features[t];
    item.source_token = inst.head_token();
    out.push_back(std::move(item));
  }
  return out;
}

namespace {

void collect_tokens(const Assignment& a, std::size_t index, std::set<std::size_t>& out) {
  const auto& inst = a.instances[index];
  out.insert(inst.positions.begin(), inst.positions.end());
  for (const auto& m : a.merges) {
    if (m.host == index) collect_tokens(a, m.filler, out);
  }
}

}  // namespace

std::vector<LinearItem> linearize(const TransferOption& option, const Assignment& assignment,
                                  const AnalyzedSentence& sentence) {
  std::set<std::size_t> covered;
  for (const auto& root : option.roots) collect_tokens(assignment, root.instance, covered);

  // unit key: source token; roots keyed by head token, untranslated by position
  std::map<std::size_t, std::vector<LinearItem>> units;
  for (const auto& root : option.roots) {
    units[assignment.instances[root.instance].head_token()] = linearize(root, assignment);
  }
  for (std::size_t t : sentence.live()) {
    if (covered.count(t)) continue;
    const AnalyzedToken& tok = sentence.tokens[t];
    LinearItem item;
    item.kind = LinearItem::Kind::Untranslated;
    item.text = tok.surface;
    item.source_token = t;
    item.transformed = tok.transformed;
    if (!tok.analyses.empty()) {
      item.source_lexeme = tok.analyses.front().lexeme;
      item.features = tok.analyses.front().features;
    }
    units[t] = {std::move(item)};
  }
  std::vector<LinearItem> out;
  for (auto& [key, items] : units) {
    for (auto& item : items) out.push_back(std::move(item));
  }
  return out;
}

std::string gap_marker(std::string_view lexeme) { return "⟦" + std::string(lexeme) + "⟧"; }

std::string OutputSentence::text() const {
  std::string out;
  for (const auto& s : segments) {
    if (!out.empty()) out += ' ';
    out += s.text;
  }
  return out;
}

std::vector<OutputSentence> realize(std::span<const LinearItem> items, const FormTable& generation,
                                    std::size_t limit) {
  std::vector<std::vector<Segment>> options;
  options.reserve(items.size());
  for (const auto& item : items) {
    std::vector<Segment> opts;
    if (item.kind == LinearItem::Kind::Untranslated) {
      if (item.transformed) opts.push_back(Segment{gap_marker(item.source_lexeme), Segment::Kind::Gap});
      else opts.push_back(Segment{item.text, Segment::Kind::Untranslated});
    } else if (item.lexeme) {
      for (auto& form : generate(item.text, item.features, generation)) {
        opts.push_back(Segment{std::move(form), Segment::Kind::Target});
      }
      if (opts.empty()) opts.push_back(Segment{gap_marker(item.text), Segment::Kind::Gap});
    } else {
      opts.push_back(Segment{item.text, Segment::Kind::Target});
    }
    options.push_back(std::move(opts));
  }

  std::vector<OutputSentence> out;
  if (items.empty() || limit == 0) return out;
  OutputSentence current;
  auto rec = [&](auto& self, std::size_t k) -> void {
    if (k == options.size()) {
      out.push_back(current);
      return;
    }
    for (const auto& seg : options[k]) {
      current.segments.push_back(seg);
      self(self, k + 1);
      current.segments.pop_back();
      if (out.size() >= limit) return;
    }
  };
  rec(rec, 0);
  return out;
}

TranslationResult translate_analyzed(AnalyzedSentence sentence, const Lexicon& lexicon,
                                     const TranslateOptions& options) {
  TranslationResult result;
  for (const auto& t : sentence.tokens) {
    if (!result.source.empty()) result.source += ' ';
    result.source += t.surface;
  }
  result.analyzed = sentence;
  result.transformed = apply_transforms(std::move(sentence), lexicon.rules(), lexicon.categories());
  if (result.transformed.tokens.empty()) return result;

  result.candidates = find_candidates(result.transformed, lexicon, options.max_gap);
  result.assignments = solve(result.candidates, result.transformed, lexicon.categories());

  std::size_t remaining = options.max_outputs;
  for (std::size_t ai = 0; ai < result.assignments.size(); ++ai) {
    const Assignment& a = result.assignments[ai];
    auto opts = transfer(a, lexicon.languages().target, remaining == kUnlimited ? kUnlimited : remaining);
    for (const auto& opt : opts) {
      if (remaining == 0) break;
      auto items = linearize(opt, a, result.transformed);
      for (auto& o : realize(items, lexicon.target_forms(), remaining)) {
        o.assignment = ai;
        result.outputs.push_back(std::move(o));
        if (remaining != kUnlimited) --remaining;
      }
    }
    if (options.trace) result.transfers.push_back(std::move(opts));
    if (remaining == 0) break;
  }
  return result;
}

TranslationResult translate(std::string_view text, const Lexicon& lexicon, const TranslateOptions& options) {
  auto tokens = tokenize(text);
  if (tokens.empty()) {
    TranslationResult empty;
    empty.source = std::string(text);
    return empty;
  }
  TranslationResult r = translate_analyzed(analyze_sentence(tokens, lexicon.source_forms()), lexicon, options);
  r.source = std::string(text);
  return r;
}

std::string format_target(const TargetGroupInstance& tree) {
  std::string out = "<";
  const Translation& tr = *tree.translation;
  for (std::size_t t = 0; t < tr.items.size(); ++t) {
    if (t) out += ' ';
    if (const TargetGroupInstance* sub = tree.expansion_at(t)) {
      out += format_target(*sub);
      continue;
    }
    out += tr.items[t].text;
    if (!tree.item_features[t].empty()) out += "[" + tree.item_features[t].str() + "]";
  }
  return out + ">";
}

}  // namespace mdt
