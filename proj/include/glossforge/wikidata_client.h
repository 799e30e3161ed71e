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

// Label/description lookup against the Wikidata wbgetentities API, with an
// on-disk cache. Nothing here ever throws for upstream trouble: failures
// degrade to absent values and a warning.

#ifndef GLOSSFORGE_WIKIDATA_CLIENT_H_
#define GLOSSFORGE_WIKIDATA_CLIENT_H_

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "glossforge/title_index.h"

namespace glossforge {

struct EntityInfo {
  std::optional<std::string> label;
  std::optional<std::string> description;
  bool operator==(const EntityInfo &) const = default;
};

// GET `url`; nullopt on any failure.
using HttpFetcher = std::function<std::optional<std::string>(const std::string &url)>;

// A fetcher backed by cpp-httplib (HTTPS supported).
HttpFetcher MakeHttpFetcher();

class WikidataClient {
 public:
  struct Options {
    std::filesystem::path cache_path;  // empty: memory only
    std::chrono::seconds ttl{7 * 24 * 3600};
    bool offline = true;
    double requests_per_second = 2.0;
    std::string endpoint = "https://www.wikidata.org/w/api.php";
    std::string language = "en";
    size_t batch_size = 50;
  };
  using Clock = std::function<long long()>;  // unix seconds

  WikidataClient(Options options, HttpFetcher fetcher, Clock clock = {});

  // One result per distinct qid. Fresh cache entries are served directly;
  // the rest are fetched in batches unless offline. Stale entries are still
  // served when a refresh fails or the client is offline.
  std::map<Qid, EntityInfo> Enrich(const std::vector<Qid> &qids);

  size_t requests_made() const;
  std::vector<std::string> TakeWarnings();

 private:
  struct CacheEntry {
    EntityInfo info;
    long long fetched_at = 0;
  };

  void LoadCache();
  void SaveCache();
  void Throttle();
  bool FetchBatch(const std::vector<Qid> &batch, long long now);

  Options options_;
  HttpFetcher fetcher_;
  Clock clock_;
  mutable std::mutex mu_;
  std::map<std::string, CacheEntry> cache_;
  std::vector<std::string> warnings_;
  size_t requests_ = 0;
  std::optional<std::chrono::steady_clock::time_point> last_request_;
};

// Parses a wbgetentities response into qid -> info for the given language.
std::map<std::string, EntityInfo> ParseEntitiesResponse(const std::string &body,
                                                        const std::string &language);

}  // namespace glossforge

#endif  // GLOSSFORGE_WIKIDATA_CLIENT_H_
