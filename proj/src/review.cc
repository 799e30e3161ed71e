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

#include <algorithm>
#include <ctime>
#include <fstream>
#include <mutex>

#include <fmt/core.h>

#include "glossforge/error.h"
#include "glossforge/util.h"
#include "json.hpp"

namespace glossforge {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr size_t kContextBytes = 240;

std::string CollapseWhitespace(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (IsAsciiSpace(c)) {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

// Cuts at a UTF-8 character boundary.
std::string Snippet(std::string_view text) {
  std::string s = CollapseWhitespace(text);
  if (s.size() <= kContextBytes) return s;
  size_t cut = kContextBytes;
  while (cut > 0 && (static_cast<unsigned char>(s[cut]) & 0xC0) == 0x80) --cut;
  return s.substr(0, cut) + "...";
}

std::string ContextOf(const Payload &payload) {
  return std::visit(
      [](const auto &v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DefinitionPage>) {
          return Snippet(v.body);
        } else if constexpr (std::is_same_v<T, ProverLink>) {
          return v.url.value_or("");
        } else if constexpr (std::is_same_v<T, Translations>) {
          std::vector<std::string> parts;
          for (const auto &[lang, word] : v.by_language) parts.push_back(lang + ": " + word);
          return Join(parts, "; ");
        } else {
          return v.title;
        }
      },
      payload);
}

ordered_json Optional(const std::optional<std::string> &s) {
  return s ? ordered_json(*s) : ordered_json();
}

ordered_json ItemToJson(const ReviewItem &item) {
  ordered_json j;
  j["item_id"] = item.item_id;
  j["corpus"] = item.corpus;
  j["term"] = item.term;
  j["status"] = std::string(ReviewStatusName(item.status));
  j["tried"] = item.tried;
  j["context"] = item.context;
  j["candidates"] = ordered_json::array();
  for (const Candidate &c : item.candidates) {
    ordered_json jc;
    jc["qid"] = c.qid.str();
    jc["label"] = Optional(c.label);
    jc["description"] = Optional(c.description);
    j["candidates"].push_back(std::move(jc));
  }
  return j;
}

ordered_json DecisionJson(const Decision &d) {
  ordered_json j;
  j["item_id"] = d.item_id;
  j["corpus"] = d.corpus;
  j["term"] = d.term;
  j["action"] = std::string(ActionName(d.action));
  j["qid"] = d.qid ? ordered_json(d.qid->str()) : ordered_json();
  j["decided_at"] = d.decided_at;
  j["note"] = d.note;
  j["supersede"] = d.supersede;
  return j;
}

std::optional<Action> ParseAction(std::string_view s) {
  if (s == "accept") return Action::kAccept;
  if (s == "reject") return Action::kReject;
  if (s == "defer") return Action::kDefer;
  return std::nullopt;
}

HttpResult JsonResult(int status, const ordered_json &j) {
  return {status, "application/json", j.dump() + "\n"};
}

HttpResult ErrorResult(int status, const std::string &message) {
  ordered_json j;
  j["error"] = message;
  return JsonResult(status, j);
}

// Tabs and line breaks would corrupt the TSV export.
std::string CleanNote(std::string_view note) {
  std::string out(note);
  for (char &c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return std::string(Trim(out));
}

}  // namespace

std::string_view ReviewStatusName(ReviewStatus status) {
  switch (status) {
    case ReviewStatus::kUnmapped: return "unmapped";
    case ReviewStatus::kDisambiguationRejected: return "disambiguation_rejected";
    case ReviewStatus::kAmbiguousMerge: return "ambiguous_merge";
  }
  return "unmapped";
}

std::optional<ReviewStatus> ParseReviewStatus(std::string_view name) {
  if (name == "unmapped") return ReviewStatus::kUnmapped;
  if (name == "disambiguation_rejected") return ReviewStatus::kDisambiguationRejected;
  if (name == "ambiguous_merge") return ReviewStatus::kAmbiguousMerge;
  return std::nullopt;
}

std::string_view ActionName(Action action) {
  switch (action) {
    case Action::kAccept: return "accept";
    case Action::kReject: return "reject";
    case Action::kDefer: return "defer";
  }
  return "defer";
}

std::string ItemId(std::string_view corpus, std::string_view term) {
  return Sha256Hex(std::string(corpus) + "\t" + std::string(term)).substr(0, 16);
}

std::vector<ReviewItem> CollectReviewItems(const std::vector<MappingRecord> &records,
                                           const KnowledgeGraph *graph) {
  std::map<std::pair<std::string, std::string>, std::string> contexts;
  if (graph != nullptr) {
    for (const auto &[key, c] : graph->concepts()) {
      for (const ConceptPayload &p : c.payloads) {
        contexts.emplace(std::make_pair(p.corpus, p.term), ContextOf(p.payload));
      }
    }
  }
  auto context_for = [&](const std::string &corpus, const std::string &term) {
    auto it = contexts.find({corpus, term});
    return it == contexts.end() ? std::string() : it->second;
  };

  std::map<std::string, ReviewItem> items;
  for (const MappingRecord &r : records) {
    bool wanted = r.strategy == Strategy::kDisambiguationRejected ||
                  (r.strategy == Strategy::kUnmapped && !r.tried.empty());
    if (!wanted) continue;
    ReviewItem item;
    item.item_id = ItemId(r.corpus, r.term);
    item.corpus = r.corpus;
    item.term = r.term;
    item.status = r.strategy == Strategy::kUnmapped ? ReviewStatus::kUnmapped
                                                    : ReviewStatus::kDisambiguationRejected;
    item.tried = r.tried;
    item.context = context_for(r.corpus, r.term);
    items.emplace(item.item_id, std::move(item));
  }

  if (graph != nullptr) {
    for (const auto &[key, c] : graph->concepts()) {
      std::map<std::string, int> per_corpus;
      for (const ConceptPayload &p : c.payloads) ++per_corpus[p.corpus];
      for (const ConceptPayload &p : c.payloads) {
        if (per_corpus[p.corpus] < 2) continue;
        ReviewItem item;
        item.item_id = ItemId(p.corpus, p.term);
        item.corpus = p.corpus;
        item.term = p.term;
        item.status = ReviewStatus::kAmbiguousMerge;
        item.context = ContextOf(p.payload);
        if (key.is_qid()) item.candidates.push_back({Qid::FromString(key.str()), {}, {}});
        items.emplace(item.item_id, std::move(item));
      }
    }
  }

  std::vector<ReviewItem> out;
  for (auto &[id, item] : items) out.push_back(std::move(item));
  std::sort(out.begin(), out.end(), [](const ReviewItem &a, const ReviewItem &b) {
    return std::tie(a.corpus, a.term, a.item_id) < std::tie(b.corpus, b.term, b.item_id);
  });
  return out;
}

std::string DecisionToJsonLine(const Decision &d) { return DecisionJson(d).dump() + "\n"; }

Decision DecisionFromJson(std::string_view line) {
  Decision d;
  try {
    json j = json::parse(line);
    d.item_id = j.at("item_id").get<std::string>();
    d.corpus = j.at("corpus").get<std::string>();
    d.term = j.at("term").get<std::string>();
    std::string action = j.at("action").get<std::string>();
    std::optional<Action> parsed = ParseAction(action);
    if (!parsed) throw Error(ErrorCode::kMalformedRow, "unknown action '" + action + "'");
    d.action = *parsed;
    if (j.contains("qid") && !j["qid"].is_null()) {
      d.qid = Qid::Parse(j["qid"].get<std::string>());
      if (!d.qid) throw Error(ErrorCode::kMalformedRow, "bad qid in decision");
    }
    d.decided_at = j.at("decided_at").get<std::string>();
    d.note = j.value("note", "");
    d.supersede = j.value("supersede", false);
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kMalformedRow, e.what());
  }
  if ((d.action == Action::kAccept) != d.qid.has_value()) {
    throw Error(ErrorCode::kMalformedRow, "a qid goes with accept and only with accept");
  }
  return d;
}

OverrideTable ReplayDecisions(const std::vector<Decision> &decisions) {
  std::map<std::string, const Decision *> last;
  for (const Decision &d : decisions) last[d.item_id] = &d;
  OverrideTable table;
  for (const auto &[id, d] : last) {
    if (d->action == Action::kDefer) continue;
    OverrideTable::Row row;
    if (d->action == Action::kAccept) row.qid = d->qid;
    row.note = CleanNote(d->note);
    table.Set(d->corpus, d->term, std::move(row));
  }
  return table;
}

std::string UtcNow() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ReviewService::ReviewService(std::vector<ReviewItem> items, std::filesystem::path log_path,
                             Clock clock)
    : loaded_(true), items_(std::move(items)), log_path_(std::move(log_path)),
      clock_(clock ? std::move(clock) : Clock(UtcNow)) {
  std::sort(items_.begin(), items_.end(), [](const ReviewItem &a, const ReviewItem &b) {
    return std::tie(a.corpus, a.term, a.item_id) < std::tie(b.corpus, b.term, b.item_id);
  });
  for (size_t i = 0; i < items_.size(); ++i) by_id_.emplace(items_[i].item_id, i);
  if (std::filesystem::exists(log_path_)) {
    std::vector<std::string_view> lines;
    std::string text = ReadFile(log_path_);
    lines = SplitLines(text);
    for (size_t i = 0; i < lines.size(); ++i) {
      if (Trim(lines[i]).empty()) continue;
      try {
        log_.push_back(DecisionFromJson(lines[i]));
      } catch (const Error &e) {
        throw Error(ErrorCode::kMalformedRow,
                    fmt::format("{} line {}: {}", log_path_.string(), i + 1, e.detail()));
      }
      last_action_[log_.back().item_id] = log_.back().action;
    }
  }
}

bool ReviewService::IsTerminal(const std::string &item_id) const {
  auto it = last_action_.find(item_id);
  return it != last_action_.end() && it->second != Action::kDefer;
}

std::vector<ReviewItem> ReviewService::Queue(std::optional<ReviewStatus> status) const {
  std::shared_lock lock(mu_);
  std::vector<ReviewItem> out;
  for (const ReviewItem &item : items_) {
    if (IsTerminal(item.item_id)) continue;
    if (status && item.status != *status) continue;
    out.push_back(item);
  }
  return out;
}

std::optional<ReviewItem> ReviewService::Item(std::string_view item_id) const {
  auto it = by_id_.find(std::string(item_id));
  if (it == by_id_.end()) return std::nullopt;
  return items_[it->second];
}

std::vector<Decision> ReviewService::Decisions() const {
  std::shared_lock lock(mu_);
  return log_;
}

std::string ReviewService::ExportOverrides() const {
  std::shared_lock lock(mu_);
  return ReplayDecisions(log_).Format();
}

std::vector<Candidate> ReviewService::Enriched(const std::vector<Candidate> &candidates) const {
  if (enricher_ == nullptr || candidates.empty()) return candidates;
  std::vector<Qid> qids;
  for (const Candidate &c : candidates) qids.push_back(c.qid);
  std::map<Qid, EntityInfo> info = enricher_->Enrich(qids);
  std::vector<Candidate> out = candidates;
  for (Candidate &c : out) {
    auto it = info.find(c.qid);
    if (it == info.end()) continue;
    if (!c.label) c.label = it->second.label;
    if (!c.description) c.description = it->second.description;
  }
  return out;
}

HttpResult ReviewService::PostDecision(std::string_view body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception &) {
    return ErrorResult(400, "body is not JSON");
  }
  if (!j.is_object()) return ErrorResult(400, "body must be a JSON object");
  if (!j.contains("item_id") || !j["item_id"].is_string()) {
    return ErrorResult(400, "item_id must be a string");
  }
  if (!j.contains("action") || !j["action"].is_string()) {
    return ErrorResult(400, "action must be a string");
  }
  std::optional<Action> action = ParseAction(j["action"].get<std::string>());
  if (!action) return ErrorResult(400, "action must be accept, reject or defer");

  Decision d;
  d.item_id = j["item_id"].get<std::string>();
  d.action = *action;
  const bool has_qid = j.contains("qid") && !j["qid"].is_null();
  if (d.action == Action::kAccept) {
    if (!has_qid || !j["qid"].is_string()) return ErrorResult(400, "accept needs a qid");
    d.qid = Qid::Parse(j["qid"].get<std::string>());
    if (!d.qid) return ErrorResult(400, "malformed qid '" + j["qid"].get<std::string>() + "'");
  } else if (has_qid) {
    return ErrorResult(400, "only accept takes a qid");
  }
  if (j.contains("note")) {
    if (!j["note"].is_string()) return ErrorResult(400, "note must be a string");
    d.note = j["note"].get<std::string>();
  }
  if (j.contains("supersede")) {
    if (!j["supersede"].is_boolean()) return ErrorResult(400, "supersede must be a boolean");
    d.supersede = j["supersede"].get<bool>();
  }

  auto it = by_id_.find(d.item_id);
  if (it == by_id_.end()) return ErrorResult(404, "unknown item " + d.item_id);
  d.corpus = items_[it->second].corpus;
  d.term = items_[it->second].term;

  std::unique_lock lock(mu_);
  if (IsTerminal(d.item_id) && !d.supersede) {
    return ErrorResult(409, "item already has a terminal decision; resend with supersede=true");
  }
  d.decided_at = clock_();
  std::string line = DecisionToJsonLine(d);
  {
    std::ofstream out(log_path_, std::ios::binary | std::ios::app);
    out << line;
    out.flush();
    if (!out) return ErrorResult(500, "cannot append to " + log_path_.string());
  }
  log_.push_back(d);
  last_action_[d.item_id] = d.action;
  ordered_json reply;
  reply["ok"] = true;
  reply["decision"] = DecisionJson(d);
  return JsonResult(200, reply);
}

HttpResult ReviewService::Handle(std::string_view method, std::string_view path,
                                 const std::map<std::string, std::string> &query,
                                 std::string_view body) {
  if (!loaded_) return ErrorResult(503, "no build loaded");

  if (path == "/api/queue") {
    if (method != "GET") return ErrorResult(405, "use GET");
    std::optional<ReviewStatus> status;
    if (auto it = query.find("status"); it != query.end() && !it->second.empty()) {
      status = ParseReviewStatus(it->second);
      if (!status) return ErrorResult(400, "unknown status '" + it->second + "'");
    }
    ordered_json j;
    j["items"] = ordered_json::array();
    for (const ReviewItem &item : Queue(status)) j["items"].push_back(ItemToJson(item));
    j["count"] = j["items"].size();
    return JsonResult(200, j);
  }

  if (path.substr(0, 10) == "/api/item/") {
    if (method != "GET") return ErrorResult(405, "use GET");
    std::optional<ReviewItem> item = Item(path.substr(10));
    if (!item) return ErrorResult(404, "unknown item " + std::string(path.substr(10)));
    item->candidates = Enriched(item->candidates);
    ordered_json j;
    j["item"] = ItemToJson(*item);
    std::shared_lock lock(mu_);
    j["decided"] = IsTerminal(item->item_id);
    j["decisions"] = ordered_json::array();
    for (const Decision &d : log_) {
      if (d.item_id == item->item_id) j["decisions"].push_back(DecisionJson(d));
    }
    return JsonResult(200, j);
  }

  if (path == "/api/decision") {
    if (method != "POST") return ErrorResult(405, "use POST");
    return PostDecision(body);
  }

  if (path == "/api/export/overrides") {
    std::string tsv = ExportOverrides();
    if (method == "POST") {
      if (!export_path_) return ErrorResult(400, "no export path configured");
      try {
        WriteFileAtomic(*export_path_, tsv);
      } catch (const Error &e) {
        return ErrorResult(500, e.detail());
      }
    } else if (method != "GET") {
      return ErrorResult(405, "use GET or POST");
    }
    return {200, "text/tab-separated-values; charset=utf-8", tsv};
  }

  if (path == "/api/stats") {
    if (method != "GET") return ErrorResult(405, "use GET");
    std::shared_lock lock(mu_);
    ordered_json j;
    long long queued = 0;
    std::map<std::string, long long> by_status;
    for (const ReviewItem &item : items_) {
      if (IsTerminal(item.item_id)) continue;
      ++queued;
      ++by_status[std::string(ReviewStatusName(item.status))];
    }
    j["items"] = items_.size();
    j["queue"] = queued;
    j["decided"] = static_cast<long long>(items_.size()) - queued;
    j["by_status"] = ordered_json::object();
    for (const auto &[name, n] : by_status) j["by_status"][name] = n;
    j["decisions_logged"] = log_.size();
    return JsonResult(200, j);
  }

  return ErrorResult(404, "no such endpoint");
}

}  // namespace glossforge
