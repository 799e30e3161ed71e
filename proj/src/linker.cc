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

#include <algorithm>
#include <future>
#include <thread>

#include <fmt/core.h>

#include "glossforge/error.h"
#include "glossforge/util.h"
#include "json.hpp"

namespace glossforge {

std::string MappingRecord::StrategyName() const {
  switch (strategy) {
    case Strategy::kOverride: return "override";
    case Strategy::kParenthetical: return "parenthetical(" + subject + ")";
    case Strategy::kBare: return "bare";
    case Strategy::kUnmapped: return "unmapped";
    case Strategy::kDisambiguationRejected: return "disambiguation_rejected";
  }
  return "unmapped";
}

bool ParseStrategyName(std::string_view name, Strategy *strategy,
                       std::string *subject) {
  subject->clear();
  if (name == "override") {
    *strategy = Strategy::kOverride;
  } else if (name == "bare") {
    *strategy = Strategy::kBare;
  } else if (name == "unmapped") {
    *strategy = Strategy::kUnmapped;
  } else if (name == "disambiguation_rejected") {
    *strategy = Strategy::kDisambiguationRejected;
  } else if (name.size() > 15 && name.substr(0, 14) == "parenthetical(" &&
             name.back() == ')') {
    std::string_view s = name.substr(14, name.size() - 15);
    if (std::find(kParentheticalSubjects.begin(), kParentheticalSubjects.end(), s) ==
        kParentheticalSubjects.end()) {
      return false;
    }
    *strategy = Strategy::kParenthetical;
    *subject = std::string(s);
  } else {
    return false;
  }
  return true;
}

OverrideTable OverrideTable::Parse(std::string_view tsv) {
  OverrideTable table;
  std::vector<std::string_view> lines = SplitLines(tsv);
  for (size_t i = 0; i < lines.size(); ++i) {
    const size_t line_no = i + 1;
    if (Trim(lines[i]).empty()) continue;
    std::vector<std::string> cols = Split(lines[i], '\t');
    if (cols.size() != 3 && cols.size() != 4) {
      throw Error(ErrorCode::kMalformedRow,
                  fmt::format("overrides line {}: expected 3 or 4 columns, found {}",
                              line_no, cols.size()));
    }
    std::string corpus(Trim(cols[0]));
    std::string term(Trim(cols[1]));
    if (corpus.empty() || term.empty()) {
      throw Error(ErrorCode::kMalformedRow,
                  fmt::format("overrides line {}: empty corpus or term", line_no));
    }
    Row row;
    if (cols[2] != "NONE") {
      row.qid = Qid::Parse(cols[2]);
      if (!row.qid) {
        throw Error(ErrorCode::kBadQid, fmt::format("overrides line {}: bad qid '{}'",
                                                    line_no, cols[2]));
      }
    }
    if (cols.size() == 4) row.note = cols[3];
    table.Set(corpus, term, std::move(row));
  }
  return table;
}

void OverrideTable::Set(const std::string &corpus, const std::string &term, Row row) {
  rows_.insert_or_assign({corpus, term}, std::move(row));
}

const OverrideTable::Row *OverrideTable::Find(std::string_view corpus,
                                              std::string_view term) const {
  auto it = rows_.find({std::string(corpus), std::string(term)});
  if (it != rows_.end()) return &it->second;
  it = rows_.find({std::string(kAnyCorpus), std::string(term)});
  if (it != rows_.end()) return &it->second;
  return nullptr;
}

std::string OverrideTable::Format() const {
  std::string out;
  for (const auto &[key, row] : rows_) {
    out += fmt::format("{}\t{}\t{}\t{}\n", key.first, key.second,
                       row.qid ? row.qid->str() : "NONE", row.note);
  }
  return out;
}

MappingRecord LinkTerm(std::string_view raw_term, const TitleIndex &index,
                       const OverrideTable &overrides, std::string_view corpus) {
  std::string_view term = Trim(raw_term);
  if (term.empty()) throw Error(ErrorCode::kEmptyTerm, "empty term");

  MappingRecord record;
  record.corpus = std::string(corpus);
  record.term = std::string(term);

  if (const OverrideTable::Row *row = overrides.Find(corpus, term)) {
    record.qid = row->qid;
    record.strategy = row->qid ? Strategy::kOverride : Strategy::kUnmapped;
    return record;
  }

  bool saw_disambiguation = false;
  // Returns true when `title` resolves to a usable page.
  auto attempt = [&](const std::string &title) {
    record.tried.push_back(title);
    const IndexEntry *entry = index.Lookup(title);
    if (entry == nullptr) return false;
    if (entry->is_disambiguation) {
      saw_disambiguation = true;
      return false;
    }
    record.qid = entry->qid;
    return true;
  };

  for (std::string_view subject : kParentheticalSubjects) {
    if (attempt(NormalizeTitle(fmt::format("{} ({})", term, subject)))) {
      record.strategy = Strategy::kParenthetical;
      record.subject = std::string(subject);
      return record;
    }
  }
  if (attempt(NormalizeTitle(term))) {
    record.strategy = Strategy::kBare;
    return record;
  }
  record.strategy = saw_disambiguation ? Strategy::kDisambiguationRejected
                                       : Strategy::kUnmapped;
  return record;
}

std::optional<double> LinkStats::mapped_ratio() const {
  if (total == 0) return std::nullopt;
  return static_cast<double>(mapped) / static_cast<double>(total);
}

LinkedCorpus LinkCorpus(const std::vector<std::pair<std::string, std::string>> &terms,
                        const TitleIndex &index, const OverrideTable &overrides,
                        unsigned workers) {
  LinkedCorpus out;
  out.records.resize(terms.size());
  std::vector<std::string> record_warnings(terms.size());

  auto link_range = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      const auto &[corpus, term] = terms[i];
      try {
        out.records[i] = LinkTerm(term, index, overrides, corpus);
      } catch (const Error &e) {
        if (e.code() != ErrorCode::kEmptyTerm) throw;
        MappingRecord &r = out.records[i];
        r.corpus = corpus;
        r.term = term;
        r.strategy = Strategy::kUnmapped;
        record_warnings[i] =
            fmt::format("term #{} in corpus '{}' is empty, recorded as unmapped", i + 1,
                        corpus);
      }
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  const size_t chunks = std::min<size_t>(workers, terms.size());
  if (chunks <= 1) {
    link_range(0, terms.size());
  } else {
    std::vector<std::future<void>> jobs;
    const size_t per = (terms.size() + chunks - 1) / chunks;
    for (size_t begin = 0; begin < terms.size(); begin += per) {
      jobs.push_back(std::async(std::launch::async, link_range, begin,
                                std::min(terms.size(), begin + per)));
    }
    for (auto &job : jobs) job.get();
  }

  for (const std::string &w : record_warnings) {
    if (!w.empty()) out.warnings.push_back(w);
  }
  for (const MappingRecord &r : out.records) {
    ++out.stats.total;
    ++out.stats.by_strategy[r.StrategyName()];
    LinkStats::Counts &c = out.stats.by_corpus[r.corpus];
    ++c.total;
    if (r.mapped()) {
      ++out.stats.mapped;
      ++c.mapped;
    }
  }
  return out;
}

std::string FormatMappingsJsonl(const std::vector<MappingRecord> &records) {
  std::string out;
  for (const MappingRecord &r : records) {
    nlohmann::ordered_json j;
    j["corpus"] = r.corpus;
    j["term"] = r.term;
    j["qid"] = r.qid ? nlohmann::ordered_json(r.qid->str()) : nlohmann::ordered_json();
    j["strategy"] = r.StrategyName();
    j["tried"] = r.tried;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<MappingRecord> ParseMappingsJsonl(std::string_view text) {
  std::vector<MappingRecord> records;
  std::vector<std::string_view> lines = SplitLines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty()) continue;
    auto fail = [&](const std::string &what) {
      throw Error(ErrorCode::kMalformedRow,
                  fmt::format("mappings line {}: {}", i + 1, what));
    };
    MappingRecord r;
    try {
      nlohmann::json j = nlohmann::json::parse(lines[i]);
      r.corpus = j.at("corpus").get<std::string>();
      r.term = j.at("term").get<std::string>();
      if (!j.at("qid").is_null()) r.qid = Qid::FromString(j.at("qid").get<std::string>());
      r.tried = j.at("tried").get<std::vector<std::string>>();
      std::string strategy = j.at("strategy").get<std::string>();
      if (!ParseStrategyName(strategy, &r.strategy, &r.subject)) {
        fail("unknown strategy '" + strategy + "'");
      }
    } catch (const nlohmann::json::exception &e) {
      fail(e.what());
    }
    bool should_be_mapped = r.strategy == Strategy::kOverride ||
                            r.strategy == Strategy::kParenthetical ||
                            r.strategy == Strategy::kBare;
    if (should_be_mapped != r.mapped()) fail("qid does not agree with strategy");
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace glossforge
