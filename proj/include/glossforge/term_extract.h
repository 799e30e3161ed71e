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

// Term candidate extraction from dependency-annotated sentences.
//
// Three shapes of candidate are recognised:
//   noun      every NOUN token
//   compound  a NOUN preceded by a contiguous chain of tokens attached to it
//             (directly or through each other) with deprel `compound`
//   adj_noun  a maximal contiguous run of ADJ/amod tokens immediately before
//             a noun or compound candidate
// Formula tokens (MISC MathSpan=Yes) and stop lemmas never take part.

#ifndef GLOSSFORGE_TERM_EXTRACT_H_
#define GLOSSFORGE_TERM_EXTRACT_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "glossforge/conllu.h"

namespace glossforge {

enum class TermKind { kNoun, kCompound, kAdjNoun };

std::string_view TermKindName(TermKind kind);
std::optional<TermKind> ParseTermKind(std::string_view name);

struct TermCandidate {
  std::vector<std::string> lemmas;  // lowercase
  TermKind kind = TermKind::kNoun;
  std::string surface;  // representative surface form

  // Lemmas joined by single spaces.
  std::string Key() const;

  bool operator==(const TermCandidate &) const = default;
};

class StopLemmas {
 public:
  StopLemmas() = default;
  explicit StopLemmas(std::set<std::string> lemmas)
      : lemmas_(std::move(lemmas)) {}

  static StopLemmas Parse(std::string_view data);
  // The list shipped in data/stop_lemmas.txt.
  static const StopLemmas &Default();

  bool Contains(std::string_view lowercase_lemma) const {
    return lemmas_.count(std::string(lowercase_lemma)) > 0;
  }

 private:
  std::set<std::string> lemmas_;
};

// Candidates of one sentence, ordered by position of their first token; at
// equal positions nouns come before compounds before adj_nouns. Throws
// kMissingAnnotation if UPOS or HEAD is "_" on a token that is neither a
// formula nor punctuation.
std::vector<TermCandidate> ExtractCandidates(
    const Sentence &sentence,
    const StopLemmas &stop_lemmas = StopLemmas::Default());

class FrequencyTable {
 public:
  struct Key {
    std::vector<std::string> lemmas;
    TermKind kind;
    auto operator<=>(const Key &) const = default;
  };
  struct Stats {
    long long count = 0;
    std::string surface;  // lexicographically smallest surface seen
    bool operator==(const Stats &) const = default;
  };
  struct Row {
    TermCandidate term;
    long long count;
  };

  void Add(const TermCandidate &candidate, long long count = 1);
  void AddPropn(const std::string &lemma) { ++propn_counts_[lemma]; }
  void AddSentences(long long n) { total_sentences_ += n; }

  // Associative and commutative.
  void Merge(const FrequencyTable &other);

  // Rows by descending count, then lemma sequence, then kind.
  std::vector<Row> SortedRows() const;

  const std::map<Key, Stats> &entries() const { return entries_; }
  // PROPN lemmas are not candidates; they are counted here for inspection.
  const std::map<std::string, long long> &propn_counts() const {
    return propn_counts_;
  }
  long long total_sentences() const { return total_sentences_; }
  bool empty() const { return entries_.empty(); }

  bool operator==(const FrequencyTable &) const = default;

 private:
  std::map<Key, Stats> entries_;
  std::map<std::string, long long> propn_counts_;
  long long total_sentences_ = 0;
};

// Counts every candidate occurrence over all documents. kMissingAnnotation is
// rethrown with the document and sentence location prepended.
FrequencyTable Accumulate(const std::vector<Document> &docs,
                          const StopLemmas &stop_lemmas = StopLemmas::Default());

inline constexpr long long kDefaultMinCount = 2;
inline constexpr long long kDefaultMaxTerms = 500;

// Rows with count >= min_count in SortedRows() order, at most max_terms.
std::vector<FrequencyTable::Row> SelectTerms(const FrequencyTable &table,
                                             long long min_count = kDefaultMinCount,
                                             long long max_terms = kDefaultMaxTerms);

// "lemmas<TAB>kind<TAB>count" per row, LF-terminated.
std::string FormatTermTsv(const std::vector<FrequencyTable::Row> &rows);

}  // namespace glossforge

#endif  // GLOSSFORGE_TERM_EXTRACT_H_
