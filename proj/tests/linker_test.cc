// Copyright 2026 The GlossForge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "glossforge/linker.h"

#include <gtest/gtest.h>

#include "glossforge/error.h"
#include "glossforge/util.h"
#include "support.h"

namespace glossforge {
namespace {

class LinkerTest : public ::testing::Test {
 protected:
  TitleIndex index_ = testing::MiniIndex();
  OverrideTable overrides_ = testing::MiniOverrides();
  MappingRecord Link(std::string_view term, std::string_view corpus = "terms") {
    return LinkTerm(term, index_, overrides_, corpus);
  }
};

TEST_F(LinkerTest, WorkedExamples) {
  MappingRecord group = Link("group");
  EXPECT_EQ(group.qid->str(), "Q83478");
  EXPECT_EQ(group.StrategyName(), "parenthetical(mathematics)");
  EXPECT_EQ(group.tried, (std::vector<std::string>{"Group_(mathematics)"}));

  MappingRecord book = Link("book");
  EXPECT_EQ(book.qid->str(), "Q571");
  EXPECT_EQ(book.strategy, Strategy::kBare);
  EXPECT_EQ(book.tried.size(), kParentheticalSubjects.size() + 1);
  EXPECT_EQ(book.tried.back(), "Book");

  EXPECT_EQ(Link("abelian group").qid->str(), "Q181296");
  EXPECT_EQ(Link("Abelian groups").qid->str(), "Q181296");
}

TEST_F(LinkerTest, LaterSubjectsAreTriedInOrder) {
  MappingRecord limit = Link("limit");
  EXPECT_EQ(limit.qid->str(), "Q1332360");
  EXPECT_EQ(limit.subject, "category theory");
  EXPECT_EQ(limit.tried.size(), 5u);
}

TEST_F(LinkerTest, DisambiguationOnlyIsRejected) {
  MappingRecord module = Link("module");
  EXPECT_FALSE(module.qid);
  EXPECT_EQ(module.strategy, Strategy::kDisambiguationRejected);
  EXPECT_EQ(module.tried.back(), "Module");
}

TEST_F(LinkerTest, Unmapped) {
  MappingRecord r = Link("Grothendieck topos");
  EXPECT_FALSE(r.qid);
  EXPECT_EQ(r.strategy, Strategy::kUnmapped);
  EXPECT_EQ(r.tried.size(), kParentheticalSubjects.size() + 1);
}

TEST_F(LinkerTest, OverridesWin) {
  MappingRecord lemma = Link("lemma");
  EXPECT_FALSE(lemma.qid);
  EXPECT_EQ(lemma.strategy, Strategy::kUnmapped);
  EXPECT_TRUE(lemma.tried.empty());

  MappingRecord kan = Link("Kan extension", "nlab");
  EXPECT_EQ(kan.qid->str(), "Q1136040");
  EXPECT_EQ(kan.strategy, Strategy::kOverride);
  EXPECT_FALSE(Link("Kan extension", "chicago").qid);

  // A corpus row beats a wildcard row.
  overrides_.Set("chicago", "lemma", {Qid::FromString("Q207505"), ""});
  EXPECT_EQ(Link("lemma", "chicago").qid->str(), "Q207505");
  EXPECT_FALSE(Link("lemma", "nlab").qid);
}

TEST_F(LinkerTest, TermsAreTrimmed) {
  MappingRecord r = Link("  topological   space ");
  EXPECT_EQ(r.term, "topological   space");
  EXPECT_EQ(r.qid->str(), "Q179899");
  EXPECT_THROW(Link("   "), Error);
}

TEST_F(LinkerTest, ThirtyTermGolden) {
  std::vector<std::pair<std::string, std::string>> pairs;
  const std::string text = testing::ReadFixture("link/terms30.txt");
  for (std::string_view line : SplitLines(text)) {
    pairs.emplace_back("terms", std::string(line));
  }
  ASSERT_EQ(pairs.size(), 30u);
  std::string golden = testing::ReadFixture("golden/terms30_mappings.jsonl");
  for (unsigned workers : {1u, 3u}) {
    LinkedCorpus linked = LinkCorpus(pairs, index_, overrides_, workers);
    EXPECT_EQ(FormatMappingsJsonl(linked.records), golden) << workers << " workers";
    EXPECT_EQ(linked.stats.total, 30);
  }
}

TEST_F(LinkerTest, EmptyTermsBecomeUnmappedWithAWarning) {
  LinkedCorpus linked = LinkCorpus({{"c", "group"}, {"c", "  "}}, index_, overrides_, 1);
  EXPECT_EQ(linked.records[1].strategy, Strategy::kUnmapped);
  EXPECT_EQ(linked.warnings.size(), 1u);
  EXPECT_EQ(linked.stats.mapped, 1);
  EXPECT_EQ(linked.stats.by_corpus.at("c").total, 2);
  EXPECT_DOUBLE_EQ(*linked.stats.mapped_ratio(), 0.5);
}

TEST_F(LinkerTest, MappingsJsonlRoundTrip) {
  std::string golden = testing::ReadFixture("golden/terms30_mappings.jsonl");
  std::vector<MappingRecord> records = ParseMappingsJsonl(golden);
  ASSERT_EQ(records.size(), 30u);
  EXPECT_EQ(FormatMappingsJsonl(records), golden);
  EXPECT_THROW(ParseMappingsJsonl("{\"corpus\":\"c\"}\n"), Error);
  EXPECT_THROW(ParseMappingsJsonl(
                   "{\"corpus\":\"c\",\"term\":\"t\",\"qid\":null,\"strategy\":\"bare\",\"tried\":[]}\n"),
               Error);
}

TEST(StrategyNameTest, ParsesEveryName) {
  Strategy s;
  std::string subject;
  for (std::string_view name : {"override", "bare", "unmapped", "disambiguation_rejected"}) {
    EXPECT_TRUE(ParseStrategyName(name, &s, &subject)) << name;
  }
  EXPECT_TRUE(ParseStrategyName("parenthetical(tensor theory)", &s, &subject));
  EXPECT_EQ(s, Strategy::kParenthetical);
  EXPECT_EQ(subject, "tensor theory");
  EXPECT_FALSE(ParseStrategyName("parenthetical(cooking)", &s, &subject));
  EXPECT_FALSE(ParseStrategyName("guess", &s, &subject));
}

TEST(OverrideTableTest, ParseAndFormat) {
  OverrideTable t = OverrideTable::Parse("*\tgroup\tQ83478\tcurated\nnlab\ttopos\tNONE\n\n");
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(t.Find("anything", "group")->qid->str(), "Q83478");
  EXPECT_FALSE(t.Find("nlab", "topos")->qid);
  EXPECT_EQ(t.Find("chicago", "topos"), nullptr);
  EXPECT_EQ(OverrideTable::Parse(t.Format()).rows(), t.rows());
  EXPECT_THROW(OverrideTable::Parse("a\tb\n"), Error);
  EXPECT_THROW(OverrideTable::Parse("a\tb\tQx\n"), Error);
  EXPECT_THROW(OverrideTable::Parse("\tb\tQ1\n"), Error);
}

}  // namespace
}  // namespace glossforge
