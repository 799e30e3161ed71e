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

#include "glossforge/term_extract.h"

#include <set>

#include <gtest/gtest.h>

#include "glossforge/error.h"
#include "glossforge/util.h"
#include "support.h"

namespace glossforge {
namespace {

using Pair = std::pair<std::string, std::string>;  // key, kind

std::vector<Pair> Candidates(const Sentence &s, const StopLemmas &stops = StopLemmas::Default()) {
  std::vector<Pair> out;
  for (const TermCandidate &c : ExtractCandidates(s, stops)) {
    out.emplace_back(c.Key(), std::string(TermKindName(c.kind)));
  }
  return out;
}

// Tokens as "form lemma UPOS head deprel".
Sentence Make(const std::vector<std::string> &rows) {
  Sentence s;
  int id = 0;
  for (const std::string &row : rows) {
    std::vector<std::string> f = Split(row, ' ');
    Token t;
    t.id = ++id;
    t.form = f[0];
    t.lemma = f[1];
    t.upos = f[2];
    if (f[3] != "_") t.head = std::stoi(f[3]);
    t.deprel = f[4];
    if (f.size() > 5) t.misc = f[5];
    s.tokens.push_back(t);
  }
  return s;
}

std::vector<Document> GoldenCorpus() {
  std::vector<Document> docs;
  for (const char *name : {"algebra", "analysis", "topology"}) {
    docs.push_back(ParseConllu(testing::ReadFixture(std::string("conllu/") + name + ".conllu"),
                               name));
  }
  return docs;
}

TEST(TermExtractTest, FigureThreeSentence) {
  Document doc = ParseConllu(testing::ReadFixture("conllu/figure3.conllu"));
  std::vector<Pair> got = Candidates(doc.sentences[0]);
  std::set<Pair> distinct(got.begin(), got.end());
  EXPECT_EQ(distinct, (std::set<Pair>{{"group", "noun"},
                                      {"abelian group", "adj_noun"},
                                      {"operation", "noun"},
                                      {"binary operation", "adj_noun"}}));
  // Position order, nouns first at equal start.
  EXPECT_EQ(got, (std::vector<Pair>{{"abelian group", "adj_noun"},
                                    {"group", "noun"},
                                    {"group", "noun"},
                                    {"binary operation", "adj_noun"},
                                    {"operation", "noun"}}));
}

TEST(TermExtractTest, GoldenFrequencyTable) {
  FrequencyTable table = Accumulate(GoldenCorpus());
  EXPECT_EQ(table.total_sentences(), 30);
  EXPECT_EQ(FormatTermTsv(table.SortedRows()),
            testing::ReadFixture("golden/frequency_table.tsv"));
  EXPECT_EQ(table.propn_counts().at("cauchy"), 3);
  EXPECT_EQ(table.propn_counts().at("euler"), 1);
}

TEST(TermExtractTest, CompoundChainsAreMaximal) {
  Sentence s = Make({"the the DET 4 det", "Lie Lie PROPN 4 compound", "group group NOUN 4 compound",
                     "action action NOUN 0 root"});
  EXPECT_EQ(Candidates(s), (std::vector<Pair>{{"lie group action", "compound"},
                                              {"group", "noun"},
                                              {"action", "noun"}}));
}

TEST(TermExtractTest, AdjectiveRunPrefersTheCompound) {
  Sentence s = Make({"a a DET 4 det", "complete complete ADJ 4 amod",
                     "metric metric NOUN 4 compound", "space space NOUN 0 root"});
  EXPECT_EQ(Candidates(s), (std::vector<Pair>{{"complete metric space", "adj_noun"},
                                              {"metric", "noun"},
                                              {"metric space", "compound"},
                                              {"space", "noun"}}));
}

TEST(TermExtractTest, AdjectiveRunNeedsANounAfterIt) {
  Sentence s = Make({"it it PRON 2 nsubj", "is be AUX 0 root", "very very ADV 4 advmod",
                     "abelian abelian ADJ 2 amod"});
  EXPECT_TRUE(Candidates(s).empty());
}

TEST(TermExtractTest, StopLemmasAndFormulasAreExcluded) {
  Sentence s = Make({"For for ADP 2 case", "example example NOUN 4 obl",
                     "$G$ $G$ NOUN 4 nsubj MathSpan=Yes", "acts act VERB 0 root",
                     "simple simple ADJ 6 amod", "cases case NOUN 4 obl"});
  EXPECT_TRUE(Candidates(s).empty());
  StopLemmas none;
  EXPECT_EQ(Candidates(s, none), (std::vector<Pair>{{"example", "noun"},
                                                    {"simple case", "adj_noun"},
                                                    {"case", "noun"}}));
}

TEST(TermExtractTest, LemmaFallsBackToLowercasedForm) {
  Sentence s = Make({"Groups _ NOUN 0 root"});
  EXPECT_EQ(Candidates(s), (std::vector<Pair>{{"groups", "noun"}}));
}

TEST(TermExtractTest, MissingAnnotation) {
  Sentence s = Make({"group group _ 0 root"});
  try {
    ExtractCandidates(s);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingAnnotation);
  }
  EXPECT_THROW(ExtractCandidates(Make({"group group NOUN _ root"})), Error);
  // Formulas and punctuation may be unannotated.
  EXPECT_NO_THROW(ExtractCandidates(Make({"$x$ $x$ _ _ _ MathSpan=Yes", ". . _ _ _",
                                          "group group NOUN 0 root"})));
}

TEST(TermExtractTest, AccumulateNamesTheSentenceOnError) {
  Document doc = ParseConllu("# sent_id = bad-1\n1\tgroup\tgroup\t_\t_\t_\t0\troot\t_\t_\n\n",
                             "bad");
  try {
    Accumulate({doc});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingAnnotation);
    EXPECT_NE(e.detail().find("bad-1"), std::string::npos) << e.what();
  }
}

TEST(TermExtractTest, MergeIsCommutativeAndAssociative) {
  std::vector<Document> docs = GoldenCorpus();
  FrequencyTable a = Accumulate({docs[0]});
  FrequencyTable b = Accumulate({docs[1]});
  FrequencyTable c = Accumulate({docs[2]});
  FrequencyTable ab = a;
  ab.Merge(b);
  FrequencyTable ba = b;
  ba.Merge(a);
  EXPECT_EQ(ab, ba);
  FrequencyTable ab_c = ab;
  ab_c.Merge(c);
  FrequencyTable bc = b;
  bc.Merge(c);
  FrequencyTable a_bc = a;
  a_bc.Merge(bc);
  EXPECT_EQ(ab_c, a_bc);
  EXPECT_EQ(ab_c, Accumulate(docs));
}

TEST(TermExtractTest, SelectTerms) {
  FrequencyTable table = Accumulate(GoldenCorpus());
  std::vector<FrequencyTable::Row> rows = SelectTerms(table, 2, 500);
  ASSERT_FALSE(rows.empty());
  for (const auto &r : rows) EXPECT_GE(r.count, 2);
  EXPECT_EQ(rows.front().term.Key(), "group");
  EXPECT_EQ(rows.front().count, 14);
  EXPECT_EQ(SelectTerms(table, 1, 3).size(), 3u);
  EXPECT_TRUE(SelectTerms(table, 1000, 10).empty());
}

TEST(TermExtractTest, KindNames) {
  for (TermKind k : {TermKind::kNoun, TermKind::kCompound, TermKind::kAdjNoun}) {
    EXPECT_EQ(ParseTermKind(TermKindName(k)), k);
  }
  EXPECT_FALSE(ParseTermKind("verb"));
}

}  // namespace
}  // namespace glossforge
