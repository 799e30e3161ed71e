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

// Curation queue.
//
// Items are the mapping records a human should look at: unmapped and
// disambiguation-rejected terms, plus entries merged with another entry of
// the same corpus under one QID. Decisions are appended to a JSON-lines log;
// the override export is a pure function of that log.
//
// HTTP API (all JSON unless noted):
//
//   GET  /api/queue[?status=S]     undecided items, by corpus then term
//   GET  /api/item/<id>            item with decision history and candidates
//   POST /api/decision             {"item_id", "action": accept|reject|defer,
//                                   "qid"?, "note"?, "supersede"?}
//   GET  /api/export/overrides     overrides.tsv text (text/tab-separated-values)
//   POST /api/export/overrides     same, also written to the export path
//   GET  /api/stats                counts
//
// Errors come back as {"error": "..."} with status 400, 404, 409 or 503.

#ifndef GLOSSFORGE_REVIEW_H_
#define GLOSSFORGE_REVIEW_H_

#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "glossforge/concept_graph.h"
#include "glossforge/linker.h"
#include "glossforge/wikidata_client.h"

namespace glossforge {

enum class ReviewStatus { kUnmapped, kDisambiguationRejected, kAmbiguousMerge };

std::string_view ReviewStatusName(ReviewStatus status);
std::optional<ReviewStatus> ParseReviewStatus(std::string_view name);

struct Candidate {
  Qid qid;
  std::optional<std::string> label;
  std::optional<std::string> description;
  bool operator==(const Candidate &) const = default;
};

struct ReviewItem {
  std::string item_id;
  std::string corpus;
  std::string term;
  ReviewStatus status = ReviewStatus::kUnmapped;
  std::vector<std::string> tried;
  std::string context;
  std::vector<Candidate> candidates;
  bool operator==(const ReviewItem &) const = default;
};

// First 16 hex digits of SHA-256(corpus TAB term).
std::string ItemId(std::string_view corpus, std::string_view term);

// Items from a build. Records that an override forced to unmapped (empty
// `tried`) are already curated and skipped. `graph` supplies context
// snippets and same-corpus merges; it may be null.
std::vector<ReviewItem> CollectReviewItems(const std::vector<MappingRecord> &records,
                                           const KnowledgeGraph *graph);

enum class Action { kAccept, kReject, kDefer };

std::string_view ActionName(Action action);

struct Decision {
  std::string item_id;
  std::string corpus;
  std::string term;
  Action action = Action::kDefer;
  std::optional<Qid> qid;  // accept only
  std::string decided_at;  // ISO-8601 UTC
  std::string note;
  bool supersede = false;
  bool operator==(const Decision &) const = default;
};

std::string DecisionToJsonLine(const Decision &d);
// Throws kMalformedRow.
Decision DecisionFromJson(std::string_view line);

// Overrides from a decision log alone: the last decision per item wins,
// accept -> qid row, reject -> NONE row, defer -> nothing.
OverrideTable ReplayDecisions(const std::vector<Decision> &decisions);

struct HttpResult {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

class ReviewService {
 public:
  using Clock = std::function<std::string()>;  // ISO-8601 timestamps

  // A service with no build loaded answers 503.
  ReviewService() = default;
  // Loads the existing log at `log_path` (created on first append).
  // Throws kMalformedRow for a corrupt log.
  ReviewService(std::vector<ReviewItem> items, std::filesystem::path log_path,
                Clock clock = {});

  void set_enricher(WikidataClient *client) { enricher_ = client; }
  void set_export_path(std::filesystem::path path) { export_path_ = std::move(path); }

  bool loaded() const { return loaded_; }
  std::vector<ReviewItem> Queue(std::optional<ReviewStatus> status = std::nullopt) const;
  std::optional<ReviewItem> Item(std::string_view item_id) const;
  std::vector<Decision> Decisions() const;
  std::string ExportOverrides() const;

  // Routes one request; `query` holds decoded query parameters.
  HttpResult Handle(std::string_view method, std::string_view path,
                    const std::map<std::string, std::string> &query,
                    std::string_view body);

 private:
  HttpResult PostDecision(std::string_view body);
  bool IsTerminal(const std::string &item_id) const;
  std::vector<Candidate> Enriched(const std::vector<Candidate> &candidates) const;

  bool loaded_ = false;
  std::vector<ReviewItem> items_;  // sorted by corpus, term
  std::map<std::string, size_t> by_id_;
  std::filesystem::path log_path_;
  std::optional<std::filesystem::path> export_path_;
  Clock clock_;
  WikidataClient *enricher_ = nullptr;

  mutable std::shared_mutex mu_;
  std::vector<Decision> log_;
  std::map<std::string, Action> last_action_;
};

// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string UtcNow();

}  // namespace glossforge

#endif  // GLOSSFORGE_REVIEW_H_
