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

#include "glossforge/wikidata_client.h"

#include <gtest/gtest.h>

#include "glossforge/util.h"
#include "json.hpp"
#include "support.h"

namespace glossforge {
namespace {

// Answers wbgetentities URLs with "label Qn" / "description Qn" for every
// requested id except Q404, which it leaves out.
struct FakeWikidata {
  std::vector<std::string> urls;
  bool fail = false;

  HttpFetcher Fetcher() {
    return [this](const std::string &url) -> std::optional<std::string> {
      urls.push_back(url);
      if (fail) return std::nullopt;
      std::string ids = url.substr(url.find("&ids=") + 5);
      nlohmann::json root;
      root["entities"] = nlohmann::json::object();
      size_t pos = 0;
      while (pos <= ids.size()) {
        size_t sep = ids.find("%7C", pos);
        std::string id = ids.substr(pos, sep == std::string::npos ? std::string::npos : sep - pos);
        if (id != "Q404") {
          root["entities"][id]["labels"]["en"]["value"] = "label " + id;
          root["entities"][id]["descriptions"]["en"]["value"] = "description " + id;
        }
        if (sep == std::string::npos) break;
        pos = sep + 3;
      }
      return root.dump();
    };
  }
};

std::vector<Qid> Qids(std::initializer_list<const char *> ids) {
  std::vector<Qid> out;
  for (const char *id : ids) out.push_back(Qid::FromString(id));
  return out;
}

WikidataClient::Options Online(const std::filesystem::path &cache = {}) {
  WikidataClient::Options o;
  o.offline = false;
  o.cache_path = cache;
  o.requests_per_second = 0;
  return o;
}

TEST(WikidataClientTest, ParseResponse) {
  auto parsed = ParseEntitiesResponse(
      R"({"entities": {"Q1": {"labels": {"en": {"value": "universe"}}}, "Q2": {}}})", "en");
  EXPECT_EQ(parsed.at("Q1").label, "universe");
  EXPECT_FALSE(parsed.at("Q1").description);
  EXPECT_FALSE(parsed.at("Q2").label);
  EXPECT_FALSE(ParseEntitiesResponse(R"({"entities": {"Q1": {}}})", "fr").at("Q1").label);
}

TEST(WikidataClientTest, FetchesDistinctIdsOnce) {
  FakeWikidata fake;
  WikidataClient client(Online(), fake.Fetcher(), [] { return 1000LL; });
  auto info = client.Enrich(Qids({"Q2", "Q1", "Q2", "Q404"}));
  ASSERT_EQ(info.size(), 3u);
  EXPECT_EQ(info.at(Qid::FromString("Q1")).label, "label Q1");
  EXPECT_EQ(info.at(Qid::FromString("Q2")).description, "description Q2");
  EXPECT_FALSE(info.at(Qid::FromString("Q404")).label);
  ASSERT_EQ(fake.urls.size(), 1u);
  EXPECT_NE(fake.urls[0].find("ids=Q1%7CQ2%7CQ404"), std::string::npos);
  EXPECT_NE(fake.urls[0].find("action=wbgetentities"), std::string::npos);
  client.Enrich(Qids({"Q1", "Q404"}));
  EXPECT_EQ(client.requests_made(), 1u);
}

TEST(WikidataClientTest, BatchesOfFifty) {
  FakeWikidata fake;
  WikidataClient client(Online(), fake.Fetcher());
  std::vector<Qid> qids;
  for (int i = 1; i <= 120; ++i) qids.push_back(Qid::FromString("Q" + std::to_string(i)));
  EXPECT_EQ(client.Enrich(qids).size(), 120u);
  EXPECT_EQ(client.requests_made(), 3u);
}

TEST(WikidataClientTest, OfflineNeverFetches) {
  FakeWikidata fake;
  WikidataClient::Options o = Online();
  o.offline = true;
  WikidataClient client(o, fake.Fetcher());
  auto info = client.Enrich(Qids({"Q1"}));
  EXPECT_FALSE(info.at(Qid::FromString("Q1")).label);
  EXPECT_TRUE(fake.urls.empty());
}

TEST(WikidataClientTest, CacheAndTtl) {
  testing::TempDir dir;
  long long now = 1000;
  FakeWikidata fake;
  {
    WikidataClient client(Online(dir / "cache.json"), fake.Fetcher(), [&] { return now; });
    client.Enrich(Qids({"Q1"}));
  }
  ASSERT_TRUE(std::filesystem::exists(dir / "cache.json"));
  WikidataClient::Options o = Online(dir / "cache.json");
  o.ttl = std::chrono::seconds(100);
  WikidataClient client(o, fake.Fetcher(), [&] { return now; });
  now = 1050;
  EXPECT_EQ(client.Enrich(Qids({"Q1"})).at(Qid::FromString("Q1")).label, "label Q1");
  EXPECT_EQ(client.requests_made(), 0u);
  now = 1200;
  client.Enrich(Qids({"Q1"}));
  EXPECT_EQ(client.requests_made(), 1u);
}

TEST(WikidataClientTest, FailuresDegradeToStaleOrAbsent) {
  testing::TempDir dir;
  long long now = 0;
  FakeWikidata fake;
  WikidataClient::Options o = Online(dir / "cache.json");
  o.ttl = std::chrono::seconds(10);
  WikidataClient client(o, fake.Fetcher(), [&] { return now; });
  client.Enrich(Qids({"Q1"}));
  fake.fail = true;
  now = 100;
  auto info = client.Enrich(Qids({"Q1", "Q2"}));
  EXPECT_EQ(info.at(Qid::FromString("Q1")).label, "label Q1");
  EXPECT_FALSE(info.at(Qid::FromString("Q2")).label);
  std::vector<std::string> warnings = client.TakeWarnings();
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("failed"), std::string::npos);
  EXPECT_TRUE(client.TakeWarnings().empty());
}

TEST(WikidataClientTest, CorruptCacheIsIgnored) {
  testing::TempDir dir;
  WriteFileAtomic(dir / "cache.json", "{not json");
  FakeWikidata fake;
  WikidataClient client(Online(dir / "cache.json"), fake.Fetcher());
  EXPECT_EQ(client.TakeWarnings().size(), 1u);
  EXPECT_EQ(client.Enrich(Qids({"Q7"})).at(Qid::FromString("Q7")).label, "label Q7");
  EXPECT_NE(ReadFile(dir / "cache.json").find("label Q7"), std::string::npos);
}

TEST(WikidataClientTest, ThrottleSpacesRequests) {
  FakeWikidata fake;
  WikidataClient::Options o = Online();
  o.requests_per_second = 20;
  o.batch_size = 1;
  WikidataClient client(o, fake.Fetcher());
  auto start = std::chrono::steady_clock::now();
  client.Enrich(Qids({"Q1", "Q2", "Q3"}));
  EXPECT_GE(std::chrono::steady_clock::now() - start, std::chrono::milliseconds(95));
  EXPECT_EQ(client.requests_made(), 3u);
}

}  // namespace
}  // namespace glossforge
