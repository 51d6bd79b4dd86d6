#include <algorithm>

#include "doctest.h"
#include "mdt/morpho.hpp"
#include "support.hpp"

using namespace mdt;
using mdt::test::demo;

namespace {

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST_CASE("lexeme identifiers") {
  CHECK(lexeme_pos("mayor_n") == "n");
  CHECK(lexeme_pos("'a^sofa_v") == "v");
  CHECK(lexeme_pos("hope") == "");
  CHECK(is_lexeme_id("qora.ta_v"));
  CHECK_FALSE(is_lexeme_id("_v"));
  CHECK_FALSE(is_lexeme_id("way"));
  CHECK(to_lower("She") == "she");
}

TEST_CASE("analysis of demo forms") {
  const auto& t = demo().source_forms();
  auto made = mdt::analyze("made", t);
  REQUIRE(made.size() == 1);
  CHECK(made[0] == Analysis{"make_v", "v", FeatureMap{{"tns", "pst"}}});
  CHECK(mdt::analyze("mayor", t) == std::vector<Analysis>{{"mayor_n", "n", {}}});
  CHECK(mdt::analyze("Mayor", t) == mdt::analyze("mayor", t));
  CHECK(mdt::analyze("zzz", t) == std::vector<Analysis>{{"zzz", "unk", {}}});
  CHECK(mdt::analyze("She", t) == std::vector<Analysis>{{"she", "unk", {}}});
}

TEST_CASE("generation of demo forms") {
  const auto& t = demo().target_forms();
  CHECK(mdt::generate("'a^sofa_v", {{"tam", "prf"}, {"sb", "3psf"}}, t) == std::vector<std::string>{"'a^sofa^c"});
  CHECK(mdt::generate("kantibA_n", {{"def", "true"}, {"acc", "true"}}, t) == std::vector<std::string>{"kantibAwn"});
  CHECK(mdt::generate("qora.ta_v", {{"tam", "impf"}, {"sb", "3ps"}}, t) ==
        std::vector<std::string>{"yqor.tAl", "tqor.talA^c"});
  CHECK(mdt::generate(".tafA_v", {{"tam", "impf"}, {"sb", "3ps"}}, t) ==
        std::vector<std::string>{"y.tafAl", "t.tafAla^c"});
  CHECK(mdt::generate("'a^sofa_v", {{"tam", "impf"}}, t).empty());
  CHECK(mdt::generate("nosuch_v", {}, t).empty());
}

TEST_CASE("table parsing") {
  auto a = parse_analysis_table("# c\nloses\tlose_v\tv\ttns=prs,sb=3ps\nhope\thope_n\tn\n");
  CHECK(a.size() == 2);
  CHECK(a.rows()[1].analysis.features.empty());
  auto g = parse_generation_table("x_v\ttam=prf\tx\n");
  CHECK(g.rows()[0].analysis.pos == "v");
  CHECK_THROWS_AS(parse_analysis_table("a\tb\n"), LexiconError);
  CHECK_THROWS_AS(parse_analysis_table("a\tb_n\tn\tx\n"), LexiconError);
  CHECK_THROWS_AS(parse_generation_table("nopos\tf=v\tx\n"), LexiconError);
}

TEST_CASE("round trip over every row of both tables") {
  for (const FormTable* table : {&demo().source_forms(), &demo().target_forms()}) {
    REQUIRE_FALSE(table->empty());
    for (const auto& row : table->rows()) {
      CAPTURE(row.wordform);
      auto readings = mdt::analyze(row.wordform, *table);
      CHECK(std::find(readings.begin(), readings.end(), row.analysis) != readings.end());
      CHECK(contains(mdt::generate(row.analysis.lexeme, row.analysis.features, *table), row.wordform));
    }
  }
}

TEST_CASE("generate with no features returns every form of the lexeme") {
  for (const FormTable* table : {&demo().source_forms(), &demo().target_forms()}) {
    std::map<std::string, std::vector<std::string>> expected;
    for (const auto& row : table->rows()) {
      auto& v = expected[row.analysis.lexeme];
      if (!contains(v, row.wordform)) v.push_back(row.wordform);
    }
    for (const auto& [lexeme, forms] : expected) CHECK(mdt::generate(lexeme, {}, *table) == forms);
  }
}

TEST_CASE("analyze is never empty") {
  for (const char* w : {"", "a", "made", "ZZZ", "kantibAwn", "ñ"}) {
    CHECK_FALSE(mdt::analyze(w, demo().source_forms()).empty());
    CHECK_FALSE(mdt::analyze(w, FormTable{}).empty());
  }
}
