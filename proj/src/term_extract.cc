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

#include "glossforge/term_extract.h"

#include <algorithm>

#include <fmt/core.h>

#include "default_data.h"
#include "glossforge/error.h"
#include "glossforge/util.h"

namespace glossforge {
namespace {

bool IsPunctuationForm(std::string_view form) {
  for (char c : form) {
    if (IsAsciiAlnum(c) || IsAsciiSpace(c) ||
        static_cast<unsigned char>(c) >= 0x80) {
      return false;
    }
  }
  return !form.empty();
}

// Per-token facts the three rules need.
struct TokenView {
  std::string lemma;  // lowercase; falls back to the form when absent
  std::string form;
  std::string upos;
  std::string deprel;
  int head = -1;  // 0-based head index, -1 for root or unannotated
  bool excluded = false;
};

std::vector<TokenView> Analyze(const Sentence &sentence, const StopLemmas &stop) {
  std::vector<TokenView> view;
  view.reserve(sentence.tokens.size());
  for (const Token &t : sentence.tokens) {
    bool math = MiscHas(t.misc, "MathSpan=Yes") ||
                t.form.find('$') != std::string::npos;
    bool punct = t.upos == "PUNCT" ||
                 (t.upos == kAbsent && IsPunctuationForm(t.form));
    if (!math && !punct && (t.upos == kAbsent || !t.head)) {
      throw Error(ErrorCode::kMissingAnnotation,
                  fmt::format("token {} '{}' has no {}", t.id, t.form,
                              t.upos == kAbsent ? "UPOS" : "HEAD"));
    }
    TokenView v;
    v.lemma = ToLowerAscii(t.lemma == kAbsent ? t.form : t.lemma);
    v.form = t.form;
    v.upos = t.upos;
    v.deprel = t.deprel;
    v.head = t.head && *t.head > 0 ? *t.head - 1 : -1;
    v.excluded = math || v.lemma.find('$') != std::string::npos ||
                 stop.Contains(v.lemma);
    view.push_back(std::move(v));
  }
  return view;
}

TermCandidate MakeCandidate(const std::vector<TokenView> &view, int first,
                            int last, TermKind kind) {
  TermCandidate c;
  c.kind = kind;
  std::vector<std::string> forms;
  for (int i = first; i <= last; ++i) {
    c.lemmas.push_back(view[i].lemma);
    forms.push_back(view[i].form);
  }
  c.surface = Join(forms, " ");
  return c;
}

}  // namespace

std::string_view TermKindName(TermKind kind) {
  switch (kind) {
    case TermKind::kNoun: return "noun";
    case TermKind::kCompound: return "compound";
    case TermKind::kAdjNoun: return "adj_noun";
  }
  return "noun";
}

std::optional<TermKind> ParseTermKind(std::string_view name) {
  if (name == "noun") return TermKind::kNoun;
  if (name == "compound") return TermKind::kCompound;
  if (name == "adj_noun") return TermKind::kAdjNoun;
  return std::nullopt;
}

std::string TermCandidate::Key() const { return Join(lemmas, " "); }

StopLemmas StopLemmas::Parse(std::string_view data) {
  std::set<std::string> lemmas;
  for (std::string_view line : SplitLines(data)) {
    line = Trim(line);
    if (line.empty() || line.front() == '#') continue;
    lemmas.insert(ToLowerAscii(line));
  }
  return StopLemmas(std::move(lemmas));
}

const StopLemmas &StopLemmas::Default() {
  static const StopLemmas stop = Parse(data::kStopLemmas);
  return stop;
}

std::vector<TermCandidate> ExtractCandidates(const Sentence &sentence,
                                             const StopLemmas &stop_lemmas) {
  const std::vector<TokenView> view = Analyze(sentence, stop_lemmas);
  const int n = static_cast<int>(view.size());
  auto is_noun = [&](int i) {
    return view[i].upos == "NOUN" && !view[i].excluded;
  };

  // Compound chains: chain_start[i] < i when NOUN i heads a chain.
  std::vector<int> chain_start(n);
  std::vector<bool> in_chain(n, false);
  for (int i = 0; i < n; ++i) {
    chain_start[i] = i;
    if (!is_noun(i)) continue;
    for (int j = i - 1; j >= 0; --j) {
      const TokenView &t = view[j];
      if (t.excluded || t.deprel != "compound" || t.head <= j || t.head > i) {
        break;
      }
      chain_start[i] = j;
    }
    for (int j = chain_start[i]; j < i; ++j) in_chain[j] = true;
  }

  struct Positioned {
    int start;
    TermCandidate candidate;
  };
  std::vector<Positioned> out;
  // Index of the compound candidate starting at a position, -1 if none.
  std::vector<int> compound_end_at(n, -1);
  for (int i = 0; i < n; ++i) {
    if (!is_noun(i)) continue;
    out.push_back({i, MakeCandidate(view, i, i, TermKind::kNoun)});
    if (chain_start[i] < i && !in_chain[i]) {
      out.push_back(
          {chain_start[i], MakeCandidate(view, chain_start[i], i, TermKind::kCompound)});
      compound_end_at[chain_start[i]] = i;
    }
  }

  auto is_adj = [&](int i) {
    return view[i].upos == "ADJ" && view[i].deprel == "amod" && !view[i].excluded;
  };
  for (int i = 0; i < n; ++i) {
    if (!is_adj(i) || (i > 0 && is_adj(i - 1))) continue;
    int run_end = i;
    while (run_end + 1 < n && is_adj(run_end + 1)) ++run_end;
    const int target = run_end + 1;
    if (target >= n) continue;
    int target_end = -1;
    if (compound_end_at[target] >= 0) {
      target_end = compound_end_at[target];
    } else if (is_noun(target)) {
      target_end = target;
    }
    if (target_end < 0) continue;
    out.push_back({i, MakeCandidate(view, i, target_end, TermKind::kAdjNoun)});
  }

  std::stable_sort(out.begin(), out.end(), [](const Positioned &a, const Positioned &b) {
    if (a.start != b.start) return a.start < b.start;
    return a.candidate.kind < b.candidate.kind;
  });
  std::vector<TermCandidate> result;
  result.reserve(out.size());
  for (Positioned &p : out) result.push_back(std::move(p.candidate));
  return result;
}

void FrequencyTable::Add(const TermCandidate &candidate, long long count) {
  Stats &stats = entries_[Key{candidate.lemmas, candidate.kind}];
  if (stats.count == 0 || candidate.surface < stats.surface) {
    stats.surface = candidate.surface;
  }
  stats.count += count;
}

void FrequencyTable::Merge(const FrequencyTable &other) {
  for (const auto &[key, stats] : other.entries_) {
    Add(TermCandidate{key.lemmas, key.kind, stats.surface}, stats.count);
  }
  for (const auto &[lemma, count] : other.propn_counts_) {
    propn_counts_[lemma] += count;
  }
  total_sentences_ += other.total_sentences_;
}

std::vector<FrequencyTable::Row> FrequencyTable::SortedRows() const {
  std::vector<Row> rows;
  rows.reserve(entries_.size());
  // entries_ is already ordered by (lemmas, kind); a stable sort on count
  // keeps that as the tie-break.
  for (const auto &[key, stats] : entries_) {
    rows.push_back({TermCandidate{key.lemmas, key.kind, stats.surface}, stats.count});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row &a, const Row &b) { return a.count > b.count; });
  return rows;
}

FrequencyTable Accumulate(const std::vector<Document> &docs,
                          const StopLemmas &stop_lemmas) {
  FrequencyTable table;
  for (const Document &doc : docs) {
    FrequencyTable partial;
    for (size_t s = 0; s < doc.sentences.size(); ++s) {
      const Sentence &sentence = doc.sentences[s];
      std::vector<TermCandidate> candidates;
      try {
        candidates = ExtractCandidates(sentence, stop_lemmas);
      } catch (const Error &e) {
        if (e.code() != ErrorCode::kMissingAnnotation) throw;
        throw Error(e.code(),
                    fmt::format("document '{}' sentence {} ('{}'): {}", doc.doc_id,
                                s + 1, sentence.sent_id, e.detail()));
      }
      for (const TermCandidate &c : candidates) partial.Add(c);
      for (const Token &t : sentence.tokens) {
        if (t.upos == "PROPN" && !MiscHas(t.misc, "MathSpan=Yes")) {
          partial.AddPropn(ToLowerAscii(t.lemma == kAbsent ? t.form : t.lemma));
        }
      }
    }
    partial.AddSentences(static_cast<long long>(doc.sentences.size()));
    table.Merge(partial);
  }
  return table;
}

std::vector<FrequencyTable::Row> SelectTerms(const FrequencyTable &table,
                                             long long min_count,
                                             long long max_terms) {
  if (min_count < 1) {
    throw Error(ErrorCode::kInvalidArgument, "min_count must be at least 1");
  }
  if (max_terms < 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_terms must not be negative");
  }
  std::vector<FrequencyTable::Row> selected;
  for (FrequencyTable::Row &row : table.SortedRows()) {
    if (static_cast<long long>(selected.size()) >= max_terms) break;
    if (row.count < min_count) break;
    selected.push_back(std::move(row));
  }
  return selected;
}

std::string FormatTermTsv(const std::vector<FrequencyTable::Row> &rows) {
  std::string out;
  for (const FrequencyTable::Row &row : rows) {
    out += fmt::format("{}\t{}\t{}\n", row.term.Key(), TermKindName(row.term.kind),
                       row.count);
  }
  return out;
}

}  // namespace glossforge
