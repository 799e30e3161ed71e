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

// Term -> Wikidata id linking.
//
// Resolution order for a term t in corpus c:
//   1. an override row for (c, t), else for ("*", t)
//   2. "t (subject)" for each subject in kParentheticalSubjects, in order;
//      the first hit that is not a disambiguation page wins
//   3. the bare title "t", unless it is a disambiguation page
//   4. disambiguation_rejected if any lookup hit only disambiguation pages
//   5. unmapped
// Every attempted (normalized) title is recorded in MappingRecord::tried, so
// a decision can be replayed against the index.

#ifndef GLOSSFORGE_LINKER_H_
#define GLOSSFORGE_LINKER_H_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "glossforge/title_index.h"

namespace glossforge {

inline constexpr std::array<std::string_view, 23> kParentheticalSubjects = {
    "mathematics",        "linear algebra",        "algebraic geometry",
    "calculus",           "category theory",       "commutative algebra",
    "field theory",       "game theory",           "topology",
    "differential geometry", "graph theory",       "invariant theory",
    "group theory",       "module theory",         "order theory",
    "probability",        "statistics",            "ring theory",
    "representation theory", "set theory",         "string theory",
    "symplectic geometry", "tensor theory",
};

enum class Strategy {
  kOverride,
  kParenthetical,
  kBare,
  kUnmapped,
  kDisambiguationRejected,
};

struct MappingRecord {
  std::string corpus;
  std::string term;
  std::optional<Qid> qid;
  Strategy strategy = Strategy::kUnmapped;
  std::string subject;  // set only for kParenthetical
  std::vector<std::string> tried;

  // "override", "bare", "parenthetical(mathematics)", ...
  std::string StrategyName() const;
  bool mapped() const { return qid.has_value(); }

  bool operator==(const MappingRecord &) const = default;
};

// Inverse of MappingRecord::StrategyName(); false for an unknown name or
// parenthetical subject.
bool ParseStrategyName(std::string_view name, Strategy *strategy,
                       std::string *subject);

// Rows of overrides.tsv: corpus ("*" for any) <TAB> term <TAB> qid|NONE
// [<TAB> note].
class OverrideTable {
 public:
  struct Row {
    std::optional<Qid> qid;  // nullopt means NONE: force unmapped
    std::string note;
    bool operator==(const Row &) const = default;
  };

  static constexpr std::string_view kAnyCorpus = "*";

  // Throws kMalformedRow / kBadQid with line numbers. Later rows replace
  // earlier ones for the same (corpus, term).
  static OverrideTable Parse(std::string_view tsv);

  void Set(const std::string &corpus, const std::string &term, Row row);
  // Corpus-specific rows shadow "*" rows.
  const Row *Find(std::string_view corpus, std::string_view term) const;

  // Rows sorted by corpus then term, in the same TSV format.
  std::string Format() const;

  size_t size() const { return rows_.size(); }
  const std::map<std::pair<std::string, std::string>, Row> &rows() const {
    return rows_;
  }

 private:
  std::map<std::pair<std::string, std::string>, Row> rows_;
};

// Throws Error(kEmptyTerm) for a blank term.
MappingRecord LinkTerm(std::string_view term, const TitleIndex &index,
                       const OverrideTable &overrides, std::string_view corpus);

struct LinkStats {
  struct Counts {
    long long total = 0;
    long long mapped = 0;
    bool operator==(const Counts &) const = default;
  };
  long long total = 0;
  long long mapped = 0;
  std::map<std::string, long long> by_strategy;  // keyed by StrategyName()
  std::map<std::string, Counts> by_corpus;

  // nullopt when there were no terms.
  std::optional<double> mapped_ratio() const;

  bool operator==(const LinkStats &) const = default;
};

struct LinkedCorpus {
  std::vector<MappingRecord> records;  // input order
  LinkStats stats;
  std::vector<std::string> warnings;
};

// Links every (corpus, term) pair. Blank terms become unmapped records with a
// warning instead of aborting. Work is split across `workers` threads (0 picks
// the hardware concurrency); output order always matches input order.
LinkedCorpus LinkCorpus(
    const std::vector<std::pair<std::string, std::string>> &terms,
    const TitleIndex &index, const OverrideTable &overrides, unsigned workers = 1);

// One JSON object per line: corpus, term, qid (string or null), strategy,
// tried.
std::string FormatMappingsJsonl(const std::vector<MappingRecord> &records);
// Throws kMalformedRow (with line number) or kBadQid.
std::vector<MappingRecord> ParseMappingsJsonl(std::string_view text);

}  // namespace glossforge

#endif  // GLOSSFORGE_LINKER_H_
