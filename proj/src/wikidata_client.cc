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

#include <set>
#include <thread>

#include <fmt/core.h>

#include "glossforge/error.h"
#include "glossforge/util.h"
#include "httplib.h"
#include "json.hpp"

namespace glossforge {

using nlohmann::json;

HttpFetcher MakeHttpFetcher() {
  return [](const std::string &url) -> std::optional<std::string> {
    size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos) return std::nullopt;
    size_t path_start = url.find('/', scheme_end + 3);
    std::string origin = url.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);
    try {
      httplib::Client client(origin);
      client.set_connection_timeout(5);
      client.set_read_timeout(10);
      client.set_follow_location(true);
      httplib::Headers headers = {{"User-Agent", "GlossForge/0.1 (curation review tool)"}};
      auto res = client.Get(path, headers);
      if (!res || res->status != 200) return std::nullopt;
      return res->body;
    } catch (const std::exception &) {
      return std::nullopt;
    }
  };
}

std::map<std::string, EntityInfo> ParseEntitiesResponse(const std::string &body,
                                                        const std::string &language) {
  std::map<std::string, EntityInfo> out;
  json root = json::parse(body);
  for (const auto &[id, entity] : root.at("entities").items()) {
    EntityInfo info;
    if (entity.contains("labels") && entity["labels"].contains(language)) {
      info.label = entity["labels"][language].at("value").get<std::string>();
    }
    if (entity.contains("descriptions") && entity["descriptions"].contains(language)) {
      info.description = entity["descriptions"][language].at("value").get<std::string>();
    }
    out[id] = std::move(info);
  }
  return out;
}

WikidataClient::WikidataClient(Options options, HttpFetcher fetcher, Clock clock)
    : options_(std::move(options)), fetcher_(std::move(fetcher)), clock_(std::move(clock)) {
  if (!clock_) {
    clock_ = [] {
      return static_cast<long long>(std::chrono::duration_cast<std::chrono::seconds>(
                                        std::chrono::system_clock::now().time_since_epoch())
                                        .count());
    };
  }
  if (options_.batch_size == 0) options_.batch_size = 50;
  LoadCache();
}

void WikidataClient::LoadCache() {
  if (options_.cache_path.empty() || !std::filesystem::exists(options_.cache_path)) return;
  try {
    json root = json::parse(ReadFile(options_.cache_path));
    for (const auto &[id, j] : root.items()) {
      if (!Qid::IsValid(id)) continue;
      CacheEntry e;
      if (j.contains("label") && j["label"].is_string()) e.info.label = j["label"];
      if (j.contains("description") && j["description"].is_string()) {
        e.info.description = j["description"];
      }
      e.fetched_at = j.value("fetched_at", 0LL);
      cache_[id] = std::move(e);
    }
  } catch (const std::exception &e) {
    warnings_.push_back(fmt::format("ignoring unreadable Wikidata cache {}: {}",
                                    options_.cache_path.string(), e.what()));
    cache_.clear();
  }
}

void WikidataClient::SaveCache() {
  if (options_.cache_path.empty()) return;
  nlohmann::ordered_json root = nlohmann::ordered_json::object();
  for (const auto &[id, e] : cache_) {
    nlohmann::ordered_json j;
    j["label"] = e.info.label ? nlohmann::ordered_json(*e.info.label) : nlohmann::ordered_json();
    j["description"] = e.info.description ? nlohmann::ordered_json(*e.info.description)
                                          : nlohmann::ordered_json();
    j["fetched_at"] = e.fetched_at;
    root[id] = std::move(j);
  }
  try {
    if (options_.cache_path.has_parent_path()) {
      std::filesystem::create_directories(options_.cache_path.parent_path());
    }
    WriteFileAtomic(options_.cache_path, root.dump(1) + "\n");
  } catch (const std::exception &e) {
    warnings_.push_back(std::string("cannot write Wikidata cache: ") + e.what());
  }
}

void WikidataClient::Throttle() {
  if (options_.requests_per_second <= 0) return;
  auto gap = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
      std::chrono::duration<double>(1.0 / options_.requests_per_second));
  auto now = std::chrono::steady_clock::now();
  if (last_request_ && now < *last_request_ + gap) {
    std::this_thread::sleep_until(*last_request_ + gap);
  }
  last_request_ = std::chrono::steady_clock::now();
}

bool WikidataClient::FetchBatch(const std::vector<Qid> &batch, long long now) {
  std::vector<std::string> ids;
  for (const Qid &q : batch) ids.push_back(q.str());
  std::string url = fmt::format(
      "{}?action=wbgetentities&format=json&props=labels%7Cdescriptions&languages={}&ids={}",
      options_.endpoint, UrlEncodeComponent(options_.language), Join(ids, "%7C"));
  Throttle();
  ++requests_;
  std::optional<std::string> body = fetcher_(url);
  if (!body) {
    warnings_.push_back(fmt::format("Wikidata request for {} ids failed", ids.size()));
    return false;
  }
  std::map<std::string, EntityInfo> parsed;
  try {
    parsed = ParseEntitiesResponse(*body, options_.language);
  } catch (const std::exception &e) {
    warnings_.push_back(std::string("unparseable Wikidata response: ") + e.what());
    return false;
  }
  for (const std::string &id : ids) {
    auto it = parsed.find(id);
    cache_[id] = {it == parsed.end() ? EntityInfo{} : it->second, now};
  }
  return true;
}

std::map<Qid, EntityInfo> WikidataClient::Enrich(const std::vector<Qid> &qids) {
  std::lock_guard<std::mutex> lock(mu_);
  const long long now = clock_();
  std::set<Qid> wanted(qids.begin(), qids.end());
  std::vector<Qid> to_fetch;
  for (const Qid &q : wanted) {
    auto it = cache_.find(q.str());
    bool fresh = it != cache_.end() && now - it->second.fetched_at < options_.ttl.count();
    if (!fresh && !options_.offline) to_fetch.push_back(q);
  }
  bool fetched = false;
  for (size_t i = 0; i < to_fetch.size(); i += options_.batch_size) {
    std::vector<Qid> batch(to_fetch.begin() + static_cast<std::ptrdiff_t>(i),
                           to_fetch.begin() + static_cast<std::ptrdiff_t>(
                                                  std::min(to_fetch.size(), i + options_.batch_size)));
    fetched = FetchBatch(batch, now) || fetched;
  }
  if (fetched) SaveCache();

  std::map<Qid, EntityInfo> out;
  for (const Qid &q : wanted) {
    auto it = cache_.find(q.str());
    out.emplace(q, it == cache_.end() ? EntityInfo{} : it->second.info);
  }
  return out;
}

size_t WikidataClient::requests_made() const {
  std::lock_guard<std::mutex> lock(mu_);
  return requests_;
}

std::vector<std::string> WikidataClient::TakeWarnings() {
  std::lock_guard<std::mutex> lock(mu_);
  return std::exchange(warnings_, {});
}

}  // namespace glossforge
