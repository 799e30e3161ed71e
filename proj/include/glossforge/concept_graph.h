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

// Merged concept graph.
//
// Entries whose terms link to the same QID become one Concept keyed by that
// QID; everything else becomes a single-source concept keyed
// "local:<corpus>:<slug>". Edges come from the outgoing links of definition
// pages.
//
// graph.json layout:
//
//   {
//     "version": 1,
//     "concepts": {
//       "<key>": {
//         "label": "...",
//         "payloads": [
//           {"corpus": "...", "term": "...", "strategy": "...",
//            "shape": "definition_page", "slug": "...", "body": "...",
//            "outgoing_slugs": [...]}
//           | {..., "shape": "prover_link", "url": "..." | null}
//           | {..., "shape": "translations", "translations": {"en": ...}}
//           | {..., "shape": "wiki_page", "title": "..."}
//         ],
//         "edges": ["<key>", ...]
//       }
//     },
//     "stats": { see GraphStats }
//   }
//
// Keys, payload order and edges are canonical, so equal graphs serialize to
// equal bytes.

#ifndef GLOSSFORGE_CONCEPT_GRAPH_H_
#define GLOSSFORGE_CONCEPT_GRAPH_H_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "glossforge/corpora.h"
#include "glossforge/linker.h"

namespace glossforge {

// "Q123" or "local:<corpus>:<slug>".
class ConceptKey {
 public:
  static ConceptKey ForQid(const Qid &qid) { return ConceptKey(qid.str()); }
  static ConceptKey Local(std::string_view corpus, std::string_view slug);
  // Throws kBadGraphFile for anything else.
  static ConceptKey Parse(std::string_view text);

  bool is_qid() const { return text_[0] == 'Q'; }
  const std::string &str() const { return text_; }

  auto operator<=>(const ConceptKey &) const = default;

 private:
  explicit ConceptKey(std::string text) : text_(std::move(text)) {}
  std::string text_;
};

struct ConceptPayload {
  std::string corpus;
  std::string term;
  std::string strategy;  // MappingRecord::StrategyName()
  Payload payload;
  bool operator==(const ConceptPayload &) const = default;
};

struct Concept {
  ConceptKey key;
  std::string label;
  std::vector<ConceptPayload> payloads;  // canonical entry order
  std::set<ConceptKey> edges;

  bool HasCorpus(std::string_view corpus) const;
  bool HasShape(PayloadShape shape) const;
  // All payloads of one shape, in order.
  std::vector<const ConceptPayload *> OfShape(PayloadShape shape) const;

  bool operator==(const Concept &) const = default;
};

struct GraphStats {
  struct CorpusCounts {
    long long entries = 0;  // ingested
    long long mapped = 0;   // with a QID
    long long in_graph = 0; // payloads still present in the graph
    bool operator==(const CorpusCounts &) const = default;
  };
  std::map<std::string, CorpusCounts> corpora;
  long long concepts = 0;
  long long qid_concepts = 0;
  long long local_concepts = 0;
  long long merged_concepts = 0;       // QID concepts with >= 2 payloads
  long long same_corpus_merges = 0;    // concepts with 2 payloads from one corpus
  long long edges = 0;
  long long removed_by_nlab_filter = 0;

  bool operator==(const GraphStats &) const = default;
};

class KnowledgeGraph {
 public:
  const std::map<ConceptKey, Concept> &concepts() const { return concepts_; }
  const GraphStats &stats() const { return stats_; }
  const Concept *Find(const ConceptKey &key) const;
  size_t size() const { return concepts_.size(); }

  // Recomputes the concept-derived parts of the stats and checks labels,
  // payloads and edge closure. Throws kInvariantViolation.
  void Validate() const;

  std::string ToJson() const;
  // Throws kBadGraphFile; the parsed graph is validated.
  static KnowledgeGraph FromJson(std::string_view text);
  static KnowledgeGraph Load(const std::string &path);

  bool operator==(const KnowledgeGraph &) const = default;

 private:
  friend struct GraphBuilder;
  friend struct AssembleResult Assemble(const std::vector<CorpusEntry> &,
                                        const std::vector<MappingRecord> &);
  friend KnowledgeGraph FilterNlab(const KnowledgeGraph &);

  std::map<ConceptKey, Concept> concepts_;
  GraphStats stats_;
};

struct AssembleResult {
  KnowledgeGraph graph;
  std::vector<std::string> warnings;
};

// Entries are matched to records by (corpus, trimmed term). Inputs are put in
// canonical order first, so the result does not depend on input order.
// Throws kMissingMapping.
AssembleResult Assemble(const std::vector<CorpusEntry> &entries,
                        const std::vector<MappingRecord> &mappings);

// Drops concepts whose payloads all come from the "nlab" corpus and prunes
// edges into them.
KnowledgeGraph FilterNlab(const KnowledgeGraph &graph);

// Rows of the main table: label compared after ASCII lowercasing, bytewise,
// ties broken by key.
std::vector<const Concept *> SortRows(const KnowledgeGraph &graph);

// Entries and records that reassemble into `graph` (for an unfiltered graph).
std::pair<std::vector<CorpusEntry>, std::vector<MappingRecord>> Flatten(
    const KnowledgeGraph &graph);

std::string StatsToJson(const GraphStats &stats);

// The site-relative path of a definition page.
std::string DefinitionPagePath(std::string_view corpus, std::string_view slug);

}  // namespace glossforge

#endif  // GLOSSFORGE_CONCEPT_GRAPH_H_
