#include "doctest.h"
#include "mdt/pipeline.hpp"
#include "support.hpp"

using namespace mdt;
using mdt::test::demo;
using mdt::test::prepare;

namespace {

std::vector<std::string> surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

using Words = std::vector<std::string>;

}  // namespace

TEST_CASE("tokenize") {
  CHECK(surfaces(tokenize("She made fun of the mayor.")) == Words{"She", "made", "fun", "of", "the", "mayor", "."});
  CHECK(tokenize("She")[0].norm == "she");
  CHECK(surfaces(tokenize("they don't know")) == Words{"they", "do", "n't", "know"});
  CHECK(surfaces(tokenize("(yes, \"no\")!")) == Words{"(", "yes", ",", "\"", "no", "\"", ")", "!"});
  CHECK(surfaces(tokenize("can't won't")) == Words{"can", "n't", "will", "n't"});
  CHECK(surfaces(tokenize("Cannot")) == Words{"Can", "not"});
  CHECK(surfaces(tokenize("Won't")) == Words{"Will", "n't"});
  CHECK(tokenize("Won't")[0].norm == "will");
  CHECK(tokenize("   ").empty());
  CHECK(tokenize("").empty());
  CHECK(surfaces(tokenize("a.b")) == Words{"a.b"});
}

TEST_CASE("every contraction splits into its parts") {
  for (const auto& c : irregular_contractions()) {
    CAPTURE(c.word);
    CHECK(surfaces(tokenize(c.word)) == Words{std::string(c.first), std::string(c.second)});
  }
  for (auto suffix : contraction_suffixes()) {
    std::string word = "we" + std::string(suffix);
    CAPTURE(word);
    CHECK(surfaces(tokenize(word)) == Words{"we", std::string(suffix)});
    // a bare suffix stays whole
    CHECK(surfaces(tokenize(suffix)) == Words{std::string(suffix)});
  }
}

TEST_CASE("analyze_sentence keeps order and origin") {
  auto toks = tokenize("She made fun");
  auto s = analyze_sentence(toks, demo().source_forms());
  REQUIRE(s.tokens.size() == 3);
  CHECK(s.tokens[1].analyses[0].lexeme == "make_v");
  CHECK(s.tokens[2].origin_index == 2);
  CHECK(s.live_count() == 3);
}

TEST_CASE("mayor sentence transforms: she deleted, made gains tam/sb, the deleted, mayor gains def") {
  auto s = prepare("She made fun of the mayor.", demo());
  REQUIRE(s.tokens.size() == 7);
  CHECK(s.tokens[0].deleted);
  CHECK(s.tokens[4].deleted);
  CHECK(s.tokens[6].deleted);
  REQUIRE(s.tokens[1].analyses.size() == 1);
  CHECK(s.tokens[1].analyses[0].features == FeatureMap{{"tns", "pst"}, {"tam", "prf"}, {"sb", "3psf"}});
  CHECK(s.tokens[5].analyses[0].features == FeatureMap{{"def", "true"}});
  CHECK(s.tokens[1].transformed);
  CHECK_FALSE(s.tokens[2].transformed);
  CHECK(s.live() == std::vector<std::size_t>{1, 2, 3, 5});
  CHECK(format_sentence(s) == "make_v[sb=3psf,tam=prf,tns=pst] fun_n of mayor_n[+def]");
}

TEST_CASE("negation transform: they do not know her") {
  auto s = prepare("they do not know her", demo());
  CHECK(s.tokens[0].deleted);
  CHECK(s.tokens[1].deleted);
  CHECK(s.tokens[2].deleted);
  CHECK_FALSE(s.tokens[3].deleted);
  REQUIRE(s.tokens[3].analyses.size() == 1);
  CHECK(s.tokens[3].analyses[0].features == FeatureMap{{"sb", "3p"}, {"tam", "impf"}, {"neg", "true"}});
}

TEST_CASE("a sentence no rule matches is unchanged") {
  auto toks = tokenize("fun of john");
  auto before = analyze_sentence(toks, demo().source_forms());
  auto after = apply_transforms(before, demo().rules(), demo().categories());
  CHECK(format_sentence(after) == format_sentence(before));
  for (const auto& t : after.tokens) {
    CHECK_FALSE(t.deleted);
    CHECK_FALSE(t.transformed);
  }
}

TEST_CASE("a rule whose action does not unify is skipped") {
  auto rules = parse_transforms("rule: $v[tns=pst] => 1[tns=prs]\nrule: $v => 1[+x]\n");
  auto toks = tokenize("made");
  auto s = apply_transforms(analyze_sentence(toks, demo().source_forms()), rules, demo().categories());
  CHECK(s.tokens[0].analyses[0].features == FeatureMap{{"tns", "pst"}, {"x", "true"}});
}

TEST_CASE("transform invariants over generated sentences") {
  mdt::test::SentenceGenerator gen(11);
  for (int i = 0; i < 300; ++i) {
    std::string text = gen.next();
    CAPTURE(text);
    auto toks = tokenize(text);
    auto analyzed = analyze_sentence(toks, demo().source_forms());
    auto once = apply_transforms(analyzed, demo().rules(), demo().categories());
    CHECK(once.tokens.size() == toks.size());
    for (std::size_t k = 0; k < toks.size(); ++k) {
      CHECK(once.tokens[k].surface == toks[k].surface);
      CHECK(once.tokens[k].origin_index == k);
    }
  }
}

TEST_CASE("live count drops by exactly the deletions of applied rules") {
  // rules applied: 1 (three deletions), 5 twice, 3 (one deletion)
  auto toks = tokenize("they do not know her . the mayor .");
  auto s = apply_transforms(analyze_sentence(toks, demo().source_forms()), demo().rules(), demo().categories());
  CHECK(s.live_count() == toks.size() - 6);
}

TEST_CASE("a second pass changes nothing on the fixture sentences") {
  for (const auto& text : mdt::test::fixture_sentences()) {
    CAPTURE(text);
    auto once = prepare(text, demo());
    auto twice = apply_transforms(once, demo().rules(), demo().categories());
    CHECK(format_sentence(twice) == format_sentence(once));
    for (std::size_t k = 0; k < once.tokens.size(); ++k) CHECK(twice.tokens[k].deleted == once.tokens[k].deleted);
  }
}

TEST_CASE("a deletion can expose a new match to a second pass") {
  // the first she only becomes adjacent to lost once the first pass deletes the second
  auto once = prepare("she she lost", demo());
  CHECK_FALSE(once.tokens[0].deleted);
  CHECK(once.tokens[1].deleted);
  auto twice = apply_transforms(once, demo().rules(), demo().categories());
  CHECK(twice.tokens[0].deleted);
}

TEST_CASE("item_accepts") {
  const auto& cats = demo().categories();
  Analysis made{"make_v", "v", {{"tns", "pst"}}};
  CHECK(item_accepts(parse_item("$v"), made, "made", cats));
  CHECK(item_accepts(parse_item("$v[tns=pst]"), made, "made", cats));
  CHECK_FALSE(item_accepts(parse_item("$v[tns=prs]"), made, "made", cats));
  CHECK(item_accepts(parse_item("make_v"), made, "made", cats));
  CHECK(item_accepts(parse_item("made"), made, "made", cats));
  CHECK_FALSE(item_accepts(parse_item("$n"), made, "made", cats));
  CHECK(item_accepts(parse_item("$sbd"), Analysis{"mayor_n", "n", {}}, "mayor", cats));
  CHECK(item_accepts(parse_item("$sbd"), Analysis{"her", "unk", {}}, "her", cats));
  CHECK_FALSE(item_accepts(parse_item("$sbd"), Analysis{"fun_n", "n", {}}, "fun", cats));
}

TEST_CASE("pre-analyzed input") {
  auto sentences = parse_preanalyzed(
      "She\tshe\tpron\t\n"
      "made\tmake_v\tv\ttns=pst\n"
      "\n"
      "mayor\tmayor_n\tn\n");
  REQUIRE(sentences.size() == 2);
  CHECK(sentences[0].tokens.size() == 2);
  CHECK(sentences[0].tokens[0].norm == "she");
  CHECK(sentences[0].tokens[1].analyses[0].features == FeatureMap{{"tns", "pst"}});
  CHECK(sentences[1].tokens[0].analyses[0].lexeme == "mayor_n");
  CHECK_THROWS_AS(parse_preanalyzed("made\tmake_v\n"), LexiconError);
}
