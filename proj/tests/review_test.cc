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

#include "glossforge/review.h"

#include <gtest/gtest.h>

#include "glossforge/error.h"
#include "glossforge/util.h"
#include "json.hpp"
#include "generators.h"
#include "support.h"

namespace glossforge {
namespace {

using nlohmann::json;

const testing::MiniBuild &Mini() {
  static const testing::MiniBuild build = testing::BuildMini();
  return build;
}

ReviewService::Clock FixedClock() {
  return [] { return std::string("2026-01-01T00:00:00Z"); };
}

const ReviewItem *FindItem(const std::vector<ReviewItem> &items, std::string_view corpus,
                           std::string_view term) {
  for (const ReviewItem &item : items) {
    if (item.corpus == corpus && item.term == term) return &item;
  }
  return nullptr;
}

std::string DecisionBody(const std::string &id, const std::string &action,
                         const std::string &extra = "") {
  return "{\"item_id\":\"" + id + "\",\"action\":\"" + action + "\"" + extra + "}";
}

class ReviewServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    items_ = CollectReviewItems(Mini().records, &Mini().graph);
    service_ = std::make_unique<ReviewService>(items_, dir_ / "decisions.jsonl", FixedClock());
    service_->set_export_path(dir_ / "curated.tsv");
  }
  HttpResult Get(const std::string &path, std::map<std::string, std::string> query = {}) {
    return service_->Handle("GET", path, query, "");
  }
  HttpResult Post(const std::string &path, const std::string &body) {
    return service_->Handle("POST", path, {}, body);
  }
  std::string IdOf(std::string_view corpus, std::string_view term) {
    const ReviewItem *item = FindItem(items_, corpus, term);
    EXPECT_NE(item, nullptr) << corpus << " " << term;
    return item ? item->item_id : "";
  }

  testing::TempDir dir_;
  std::vector<ReviewItem> items_;
  std::unique_ptr<ReviewService> service_;
};

TEST(ReviewTest, Names) {
  for (ReviewStatus s : {ReviewStatus::kUnmapped, ReviewStatus::kDisambiguationRejected,
                         ReviewStatus::kAmbiguousMerge}) {
    EXPECT_EQ(ParseReviewStatus(ReviewStatusName(s)), s);
  }
  EXPECT_FALSE(ParseReviewStatus("done"));
  EXPECT_EQ(ActionName(Action::kReject), "reject");
}

TEST(ReviewTest, ItemIdIsStable) {
  EXPECT_EQ(ItemId("chicago", "group"), Sha256Hex("chicago\tgroup").substr(0, 16));
  EXPECT_NE(ItemId("chicago", "group"), ItemId("nlab", "group"));
}

TEST(ReviewTest, CollectFromMiniBuild) {
  std::vector<ReviewItem> items = CollectReviewItems(Mini().records, &Mini().graph);
  const ReviewItem *topos = FindItem(items, "nlab", "Grothendieck topos");
  ASSERT_NE(topos, nullptr);
  EXPECT_EQ(topos->status, ReviewStatus::kUnmapped);
  EXPECT_EQ(topos->tried.size(), kParentheticalSubjects.size() + 1);
  EXPECT_EQ(topos->item_id, ItemId("nlab", "Grothendieck topos"));
  const ReviewItem *module = FindItem(items, "nlab", "module");
  ASSERT_NE(module, nullptr);
  EXPECT_EQ(module->status, ReviewStatus::kDisambiguationRejected);
  EXPECT_EQ(module->context, "");  // filtered out of the graph
  // Forced to unmapped by override rows: already curated.
  EXPECT_EQ(FindItem(items, "nlab", "lemma"), nullptr);
  EXPECT_EQ(FindItem(items, "chicago", "my professor's pet lemma"), nullptr);
  for (size_t i = 1; i < items.size(); ++i) {
    EXPECT_LE(std::tie(items[i - 1].corpus, items[i - 1].term),
              std::tie(items[i].corpus, items[i].term));
  }
}

TEST(ReviewTest, SameCorpusMergesAreQueued) {
  std::vector<CorpusEntry> entries = {{"nlab", "group", WikiPage{"group"}},
                                      {"nlab", "groups", WikiPage{"groups"}}};
  std::vector<MappingRecord> records(2);
  for (int i = 0; i < 2; ++i) {
    records[i].corpus = "nlab";
    records[i].term = entries[i].term;
    records[i].qid = Qid::FromString("Q83478");
    records[i].strategy = Strategy::kBare;
  }
  KnowledgeGraph g = Assemble(entries, records).graph;
  EXPECT_EQ(g.stats().same_corpus_merges, 1);
  std::vector<ReviewItem> items = CollectReviewItems(records, &g);
  ASSERT_EQ(items.size(), 2u);
  EXPECT_EQ(items[0].status, ReviewStatus::kAmbiguousMerge);
  EXPECT_EQ(items[0].candidates[0].qid.str(), "Q83478");
  EXPECT_TRUE(CollectReviewItems(records, nullptr).empty());
}

TEST(ReviewTest, DecisionJsonRoundTrip) {
  Decision d{"abc", "chicago", "group", Action::kAccept, Qid::FromString("Q1"),
             "2026-01-01T00:00:00Z", "n\tote", true};
  EXPECT_EQ(DecisionFromJson(DecisionToJsonLine(d)), d);
  d.action = Action::kReject;
  d.qid.reset();
  EXPECT_EQ(DecisionFromJson(DecisionToJsonLine(d)), d);
  EXPECT_THROW(DecisionFromJson("{}"), Error);
  EXPECT_THROW(DecisionFromJson(R"({"item_id":"a","corpus":"c","term":"t","action":"accept",)"
                                R"("qid":null,"decided_at":"x"})"),
               Error);
  EXPECT_THROW(DecisionFromJson(R"({"item_id":"a","corpus":"c","term":"t","action":"maybe",)"
                                R"("decided_at":"x"})"),
               Error);
}

TEST(ReviewTest, ReplayKeepsTheLastDecision) {
  std::vector<Decision> log = {
      {"1", "c", "a", Action::kAccept, Qid::FromString("Q1"), "t", "", false},
      {"1", "c", "a", Action::kReject, std::nullopt, "t", "wrong\nline", true},
      {"2", "c", "b", Action::kDefer, std::nullopt, "t", "", false},
      {"3", "d", "x", Action::kAccept, Qid::FromString("Q3"), "t", "ok", false},
  };
  OverrideTable t = ReplayDecisions(log);
  EXPECT_EQ(t.size(), 2u);
  EXPECT_FALSE(t.Find("c", "a")->qid);
  EXPECT_EQ(t.Find("c", "a")->note, "wrong line");
  EXPECT_EQ(t.Find("c", "b"), nullptr);
  EXPECT_EQ(t.Find("d", "x")->qid->str(), "Q3");
}

TEST_F(ReviewServiceTest, QueueAndFilter) {
  HttpResult r = Get("/api/queue");
  ASSERT_EQ(r.status, 200);
  json j = json::parse(r.body);
  EXPECT_EQ(j["count"].get<size_t>(), items_.size());
  json rejected = json::parse(Get("/api/queue", {{"status", "disambiguation_rejected"}}).body);
  for (const json &item : rejected["items"]) {
    EXPECT_EQ(item["status"], "disambiguation_rejected");
  }
  EXPECT_GT(rejected["count"].get<int>(), 0);
  EXPECT_EQ(Get("/api/queue", {{"status", "bogus"}}).status, 400);
}

TEST_F(ReviewServiceTest, ItemDetail) {
  std::string id = IdOf("nlab", "module");
  json j = json::parse(Get("/api/item/" + id).body);
  EXPECT_EQ(j["item"]["term"], "module");
  EXPECT_EQ(j["item"]["tried"].back(), "Module");
  EXPECT_FALSE(j["decided"].get<bool>());
  EXPECT_TRUE(j["decisions"].empty());
  EXPECT_EQ(Get("/api/item/0000000000000000").status, 404);
}

TEST_F(ReviewServiceTest, DecisionValidation) {
  std::string id = IdOf("nlab", "module");
  EXPECT_EQ(Post("/api/decision", "nope").status, 400);
  EXPECT_EQ(Post("/api/decision", "[]").status, 400);
  EXPECT_EQ(Post("/api/decision", DecisionBody(id, "maybe")).status, 400);
  EXPECT_EQ(Post("/api/decision", DecisionBody(id, "accept")).status, 400);
  EXPECT_EQ(Post("/api/decision", DecisionBody(id, "accept", ",\"qid\":\"X1\"")).status, 400);
  EXPECT_EQ(Post("/api/decision", DecisionBody(id, "reject", ",\"qid\":\"Q1\"")).status, 400);
  EXPECT_EQ(Post("/api/decision", DecisionBody(id, "defer", ",\"note\":3")).status, 400);
  EXPECT_EQ(Post("/api/decision", DecisionBody("ffff", "defer")).status, 404);
  EXPECT_EQ(service_->Handle("GET", "/api/decision", {}, "").status, 405);
  EXPECT_EQ(Get("/api/nothing").status, 404);
  EXPECT_TRUE(service_->Decisions().empty());
}

TEST_F(ReviewServiceTest, TerminalDecisionsNeedSupersede) {
  std::string id = IdOf("nlab", "module");
  EXPECT_EQ(Post("/api/decision", DecisionBody(id, "defer")).status, 200);
  EXPECT_EQ(Post("/api/decision", DecisionBody(id, "accept", ",\"qid\":\"Q18848\"")).status,
            200);
  EXPECT_EQ(Post("/api/decision", DecisionBody(id, "reject")).status, 409);
  EXPECT_EQ(Post("/api/decision", DecisionBody(id, "reject", ",\"supersede\":true")).status,
            200);
  EXPECT_EQ(service_->Decisions().size(), 3u);
  EXPECT_EQ(service_->ExportOverrides(), "nlab\tmodule\tNONE\t\n");
  json detail = json::parse(Get("/api/item/" + id).body);
  EXPECT_TRUE(detail["decided"].get<bool>());
  EXPECT_EQ(detail["decisions"].size(), 3u);
  EXPECT_EQ(detail["decisions"][0]["decided_at"], "2026-01-01T00:00:00Z");
}

TEST_F(ReviewServiceTest, LogIsReplayedOnRestart) {
  std::string id = IdOf("nlab", "Grothendieck topos");
  ASSERT_EQ(Post("/api/decision", DecisionBody(id, "reject", ",\"note\":\"folklore\"")).status,
            200);
  ReviewService restarted(items_, dir_ / "decisions.jsonl", FixedClock());
  EXPECT_EQ(restarted.Decisions(), service_->Decisions());
  EXPECT_EQ(restarted.ExportOverrides(), service_->ExportOverrides());
  EXPECT_EQ(restarted.Queue().size(), items_.size() - 1);
  WriteFileAtomic(dir_ / "bad.jsonl", "{\"item_id\": 1}\n");
  EXPECT_THROW(ReviewService(items_, dir_ / "bad.jsonl"), Error);
}

TEST_F(ReviewServiceTest, ExportEndpoints) {
  std::string id = IdOf("nlab", "Grothendieck topos");
  Post("/api/decision", DecisionBody(id, "accept", ",\"qid\":\"Q207505\""));
  HttpResult get = Get("/api/export/overrides");
  EXPECT_EQ(get.status, 200);
  EXPECT_EQ(get.content_type.substr(0, 25), "text/tab-separated-values");
  EXPECT_EQ(get.body, "nlab\tGrothendieck topos\tQ207505\t\n");
  EXPECT_FALSE(std::filesystem::exists(dir_ / "curated.tsv"));
  HttpResult post = Post("/api/export/overrides", "");
  EXPECT_EQ(post.body, get.body);
  EXPECT_EQ(ReadFile(dir_ / "curated.tsv"), get.body);
}

TEST_F(ReviewServiceTest, Stats) {
  std::string id = IdOf("nlab", "module");
  Post("/api/decision", DecisionBody(id, "reject"));
  json j = json::parse(Get("/api/stats").body);
  EXPECT_EQ(j["items"].get<size_t>(), items_.size());
  EXPECT_EQ(j["decided"], 1);
  EXPECT_EQ(j["queue"].get<size_t>(), items_.size() - 1);
  EXPECT_EQ(j["decisions_logged"], 1);
}

TEST(ReviewServiceEmptyTest, AnswersUnavailable) {
  ReviewService empty;
  EXPECT_EQ(empty.Handle("GET", "/api/queue", {}, "").status, 503);
}

// Event sourcing: after any decision sequence the export equals a replay of
// the log, and the queue is exactly the items without a terminal decision.
TEST_F(ReviewServiceTest, RandomDecisionSequences) {
  testing::Rng rng(testing::TestSeed());
  const char *actions[] = {"accept", "reject", "defer"};
  for (int round = 0; round < 200; ++round) {
    const ReviewItem &item = items_[rng() % items_.size()];
    std::string action = actions[rng() % 3];
    std::string extra = action == "accept" ? ",\"qid\":\"Q" + std::to_string(1 + rng() % 50) + "\""
                                           : "";
    if (rng() % 2) extra += ",\"supersede\":true";
    int status = Post("/api/decision", DecisionBody(item.item_id, action, extra)).status;
    ASSERT_TRUE(status == 200 || status == 409) << status;

    std::vector<Decision> log = service_->Decisions();
    ASSERT_EQ(service_->ExportOverrides(), ReplayDecisions(log).Format());
    std::map<std::string, Action> last;
    for (const Decision &d : log) last[d.item_id] = d.action;
    size_t open = 0;
    for (const ReviewItem &i : items_) {
      auto it = last.find(i.item_id);
      if (it == last.end() || it->second == Action::kDefer) ++open;
    }
    ASSERT_EQ(service_->Queue().size(), open);
  }
  ReviewService restarted(items_, dir_ / "decisions.jsonl", FixedClock());
  EXPECT_EQ(restarted.ExportOverrides(), service_->ExportOverrides());
}

// The curation loop end to end at the API level: an unmapped term is
// accepted, exported, and the next link run maps it through the override.
TEST(ReviewRoundTripTest, AcceptedTermIsRelinked) {
  std::string titles;
  const std::string text = testing::ReadFixture("mini/titles.tsv");
  for (std::string_view line : SplitLines(text)) {
    if (line.rfind("Group\t", 0) == 0 || line.rfind("Group_(", 0) == 0) continue;
    titles += std::string(line) + "\n";
  }
  TitleIndex index = BuildTitleIndex(titles, testing::ReadFixture("mini/redirects.tsv")).index;
  OverrideTable overrides = testing::MiniOverrides();
  MappingRecord before = LinkTerm("group", index, overrides, "chicago");
  ASSERT_EQ(before.strategy, Strategy::kUnmapped);

  testing::TempDir dir;
  std::vector<ReviewItem> items = CollectReviewItems({before}, nullptr);
  ASSERT_EQ(items.size(), 1u);
  ReviewService service(items, dir / "decisions.jsonl");
  service.set_export_path(dir / "curated.tsv");
  ASSERT_EQ(service.Handle("POST", "/api/decision", {},
                           DecisionBody(items[0].item_id, "accept", ",\"qid\":\"Q83478\""))
                .status,
            200);
  ASSERT_EQ(service.Handle("POST", "/api/export/overrides", {}, "").status, 200);

  OverrideTable curated = OverrideTable::Parse(ReadFile(dir / "curated.tsv"));
  for (const auto &[key, row] : curated.rows()) overrides.Set(key.first, key.second, row);
  MappingRecord after = LinkTerm("group", index, overrides, "chicago");
  EXPECT_EQ(after.qid->str(), "Q83478");
  EXPECT_EQ(after.strategy, Strategy::kOverride);
  EXPECT_TRUE(CollectReviewItems({after}, nullptr).empty());
  EXPECT_TRUE(service.Queue().empty());
}

}  // namespace
}  // namespace glossforge
