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

// build.json: the single file describing a build. Relative paths are
// resolved against the directory holding the config file.
//
//   {
//     "index": "index.qidx",
//     "titles": "titles.tsv",            // inputs for `index build`
//     "redirects": "redirects.tsv",
//     "overrides": ["overrides.tsv", "curated.tsv"],   // or one string
//     "workers": 1,
//     "corpora": [
//       {"name": "chicago", "path": "chicago"},
//       {"name": "notes", "shape": "definition_page", "path": "notes"}
//     ],
//     "site": {
//       "base_url": "",
//       "external": {"wikidata_url_template": "...{qid}",
//                    "nlab_url_template": "...{title}",
//                    "mulima_url_template": "...{term}"}
//     },
//     "review": {
//       "port": 7117,
//       "decisions": "decisions.jsonl",
//       "export": "curated.tsv",
//       "static_dir": "ui",
//       "wikidata": {"enabled": false, "cache": "wikidata_cache.json",
//                    "ttl_seconds": 604800, "requests_per_second": 2}
//     }
//   }
//
// Every key is optional except "corpora". Unknown keys are rejected.

#ifndef GLOSSFORGE_CONFIG_H_
#define GLOSSFORGE_CONFIG_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "glossforge/corpora.h"
#include "glossforge/site_emit.h"

namespace glossforge {

inline constexpr std::string_view kConfigEnvVar = "GLOSSFORGE_CONFIG";
inline constexpr int kDefaultReviewPort = 7117;

struct CorpusSource {
  std::string name;
  PayloadShape shape = PayloadShape::kDefinitionPage;
  std::filesystem::path path;
};

struct WikidataSettings {
  bool enabled = false;
  std::filesystem::path cache;
  long long ttl_seconds = 7 * 24 * 3600;
  double requests_per_second = 2.0;
  std::string endpoint = "https://www.wikidata.org/w/api.php";
};

struct ReviewSettings {
  int port = kDefaultReviewPort;
  std::optional<std::filesystem::path> decisions;
  std::optional<std::filesystem::path> export_path;
  std::optional<std::filesystem::path> static_dir;
  WikidataSettings wikidata;
};

struct BuildConfig {
  std::filesystem::path base_dir;
  std::optional<std::filesystem::path> index;
  std::optional<std::filesystem::path> titles;
  std::optional<std::filesystem::path> redirects;
  std::vector<std::filesystem::path> overrides;
  unsigned workers = 1;
  std::vector<CorpusSource> corpora;
  SiteOptions site;
  ReviewSettings review;

  // Throws kConfigError.
  static BuildConfig Parse(std::string_view json_text, const std::filesystem::path &base_dir);
  // Throws kUnreadableFile or kConfigError (prefixed with the path).
  static BuildConfig Load(const std::filesystem::path &path);
};

// Corpus names are lowercase ASCII letters, digits and underscores.
bool IsValidCorpusName(std::string_view name);

// Reads one corpus with the adapter for its shape.
std::vector<CorpusEntry> IngestCorpus(const CorpusSource &source);

}  // namespace glossforge

#endif  // GLOSSFORGE_CONFIG_H_
