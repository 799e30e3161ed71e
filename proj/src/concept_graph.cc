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

#include "glossforge/concept_graph.h"

#include <algorithm>
#include <numeric>

#include <fmt/core.h>

#include "glossforge/error.h"
#include "glossforge/util.h"
#include "json.hpp"

namespace glossforge {

using nlohmann::ordered_json;

ConceptKey ConceptKey::Local(std::string_view corpus, std::string_view slug) {
  return ConceptKey(fmt::format("local:{}:{}", corpus, slug));
}

ConceptKey ConceptKey::Parse(std::string_view text) {
  if (Qid::IsValid(text)) return ConceptKey(std::string(text));
  if (text.substr(0, 6) == "local:") {
    std::string_view rest = text.substr(6);
    size_t colon = rest.find(':');
    if (colon != std::string_view::npos && colon > 0 && colon + 1 < rest.size()) {
      return ConceptKey(std::string(text));
    }
  }
  throw Error(ErrorCode::kBadGraphFile, fmt::format("bad concept key '{}'", text));
}

bool Concept::HasCorpus(std::string_view corpus) const {
  return std::any_of(payloads.begin(), payloads.end(),
                     [&](const ConceptPayload &p) { return p.corpus == corpus; });
}

bool Concept::HasShape(PayloadShape shape) const {
  return std::any_of(payloads.begin(), payloads.end(),
                     [&](const ConceptPayload &p) { return ShapeOf(p.payload) == shape; });
}

std::vector<const ConceptPayload *> Concept::OfShape(PayloadShape shape) const {
  std::vector<const ConceptPayload *> out;
  for (const ConceptPayload &p : payloads) {
    if (ShapeOf(p.payload) == shape) out.push_back(&p);
  }
  return out;
}

std::string DefinitionPagePath(std::string_view corpus, std::string_view slug) {
  if (corpus == kChicago) return fmt::format("defs/{}.html", slug);
  return fmt::format("defs/{}.{}.html", corpus, slug);
}

struct GraphBuilder {
  // Label priority by payload shape, then payload order.
  static std::string ChooseLabel(const Concept &c) {
    for (PayloadShape shape :
         {PayloadShape::kTranslations, PayloadShape::kDefinitionPage,
          PayloadShape::kProverLink, PayloadShape::kWikiPage}) {
      for (const ConceptPayload *p : c.OfShape(shape)) {
        if (const auto *t = std::get_if<Translations>(&p->payload)) {
          auto en = t->by_language.find("en");
          if (en != t->by_language.end() && !en->second.empty()) return en->second;
        }
        if (!p->term.empty()) return p->term;
      }
    }
    return c.key.str();
  }

  // Fills the concept-derived stats, keeping the ingestion counts.
  static GraphStats DeriveStats(const std::map<ConceptKey, Concept> &concepts,
                                const GraphStats &base) {
    GraphStats s;
    s.removed_by_nlab_filter = base.removed_by_nlab_filter;
    for (const auto &[name, counts] : base.corpora) {
      s.corpora[name].entries = counts.entries;
      s.corpora[name].mapped = counts.mapped;
    }
    for (const auto &[key, c] : concepts) {
      ++s.concepts;
      if (key.is_qid()) {
        ++s.qid_concepts;
        if (c.payloads.size() >= 2) ++s.merged_concepts;
      } else {
        ++s.local_concepts;
      }
      std::map<std::string, int> per_corpus;
      for (const ConceptPayload &p : c.payloads) {
        ++s.corpora[p.corpus].in_graph;
        ++per_corpus[p.corpus];
      }
      for (const auto &[corpus, n] : per_corpus) {
        if (n >= 2) {
          ++s.same_corpus_merges;
          break;
        }
      }
      s.edges += static_cast<long long>(c.edges.size());
    }
    return s;
  }

  static void Finish(KnowledgeGraph &g) { g.stats_ = DeriveStats(g.concepts_, g.stats_); }
};

const Concept *KnowledgeGraph::Find(const ConceptKey &key) const {
  auto it = concepts_.find(key);
  return it == concepts_.end() ? nullptr : &it->second;
}

void KnowledgeGraph::Validate() const {
  auto fail = [](const std::string &what) {
    throw Error(ErrorCode::kInvariantViolation, what);
  };
  for (const auto &[key, c] : concepts_) {
    if (!(c.key == key)) fail("concept stored under the wrong key " + key.str());
    if (c.payloads.empty()) fail("concept " + key.str() + " has no payload");
    if (c.label.empty()) fail("concept " + key.str() + " has an empty label");
    if (!key.is_qid() && c.payloads.size() != 1) {
      fail("local concept " + key.str() + " has more than one payload");
    }
    for (const ConceptPayload &p : c.payloads) {
      if (Trim(p.term).empty()) fail("concept " + key.str() + " has an empty term");
      std::optional<PayloadShape> builtin = BuiltinShape(p.corpus);
      if (builtin && *builtin != ShapeOf(p.payload)) {
        fail(fmt::format("concept {}: corpus '{}' carries a {} payload", key.str(),
                         p.corpus, PayloadShapeName(ShapeOf(p.payload))));
      }
    }
    for (const ConceptKey &e : c.edges) {
      if (!concepts_.count(e)) fail("edge " + key.str() + " -> " + e.str() + " dangles");
    }
  }
  if (!(GraphBuilder::DeriveStats(concepts_, stats_) == stats_)) {
    fail("graph stats disagree with its concepts");
  }
}

namespace {

ordered_json PayloadToJson(const ConceptPayload &p) {
  ordered_json j;
  j["corpus"] = p.corpus;
  j["term"] = p.term;
  j["strategy"] = p.strategy;
  j["shape"] = std::string(PayloadShapeName(ShapeOf(p.payload)));
  std::visit(
      [&](const auto &v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DefinitionPage>) {
          j["slug"] = v.slug;
          j["body"] = v.body;
          j["outgoing_slugs"] = v.outgoing_slugs;
        } else if constexpr (std::is_same_v<T, ProverLink>) {
          j["url"] = v.url ? ordered_json(*v.url) : ordered_json();
        } else if constexpr (std::is_same_v<T, Translations>) {
          j["translations"] = ordered_json::object();
          for (const auto &[lang, word] : v.by_language) j["translations"][lang] = word;
        } else {
          j["title"] = v.title;
        }
      },
      p.payload);
  return j;
}

ConceptPayload PayloadFromJson(const nlohmann::json &j) {
  ConceptPayload p;
  p.corpus = j.at("corpus").get<std::string>();
  p.term = j.at("term").get<std::string>();
  p.strategy = j.at("strategy").get<std::string>();
  std::string shape_name = j.at("shape").get<std::string>();
  std::optional<PayloadShape> shape = ParsePayloadShape(shape_name);
  if (!shape || shape_name != PayloadShapeName(*shape)) {
    throw Error(ErrorCode::kBadGraphFile, "unknown payload shape '" + shape_name + "'");
  }
  switch (*shape) {
    case PayloadShape::kDefinitionPage:
      p.payload = DefinitionPage{j.at("slug").get<std::string>(),
                                 j.at("body").get<std::string>(),
                                 j.at("outgoing_slugs").get<std::vector<std::string>>()};
      break;
    case PayloadShape::kProverLink: {
      ProverLink link;
      if (!j.at("url").is_null()) link.url = j.at("url").get<std::string>();
      p.payload = link;
      break;
    }
    case PayloadShape::kTranslations:
      p.payload = Translations{
          j.at("translations").get<std::map<std::string, std::string>>()};
      break;
    case PayloadShape::kWikiPage:
      p.payload = WikiPage{j.at("title").get<std::string>()};
      break;
  }
  Strategy strategy;
  std::string subject;
  if (!ParseStrategyName(p.strategy, &strategy, &subject)) {
    throw Error(ErrorCode::kBadGraphFile, "unknown strategy '" + p.strategy + "'");
  }
  return p;
}

ordered_json CountsToJson(const GraphStats::CorpusCounts &c) {
  ordered_json j;
  j["entries"] = c.entries;
  j["mapped"] = c.mapped;
  j["in_graph"] = c.in_graph;
  j["mapped_ratio"] =
      c.entries == 0 ? ordered_json()
                     : ordered_json(static_cast<double>(c.mapped) /
                                    static_cast<double>(c.entries));
  return j;
}

ordered_json StatsJson(const GraphStats &s) {
  ordered_json j;
  j["concepts"] = s.concepts;
  j["qid_concepts"] = s.qid_concepts;
  j["local_concepts"] = s.local_concepts;
  j["merged_concepts"] = s.merged_concepts;
  j["same_corpus_merges"] = s.same_corpus_merges;
  j["edges"] = s.edges;
  j["removed_by_nlab_filter"] = s.removed_by_nlab_filter;
  j["corpora"] = ordered_json::object();
  for (const auto &[name, c] : s.corpora) j["corpora"][name] = CountsToJson(c);
  return j;
}

}  // namespace

std::string StatsToJson(const GraphStats &stats) { return StatsJson(stats).dump(2) + "\n"; }

std::string KnowledgeGraph::ToJson() const {
  ordered_json root;
  root["version"] = 1;
  root["concepts"] = ordered_json::object();
  for (const auto &[key, c] : concepts_) {
    ordered_json jc;
    jc["label"] = c.label;
    jc["payloads"] = ordered_json::array();
    for (const ConceptPayload &p : c.payloads) jc["payloads"].push_back(PayloadToJson(p));
    jc["edges"] = ordered_json::array();
    for (const ConceptKey &e : c.edges) jc["edges"].push_back(e.str());
    root["concepts"][key.str()] = std::move(jc);
  }
  root["stats"] = StatsJson(stats_);
  return root.dump(1) + "\n";
}

KnowledgeGraph KnowledgeGraph::FromJson(std::string_view text) {
  KnowledgeGraph g;
  try {
    nlohmann::json root = nlohmann::json::parse(text);
    if (root.at("version").get<int>() != 1) {
      throw Error(ErrorCode::kBadGraphFile, "unsupported graph version");
    }
    for (const auto &[key_text, jc] : root.at("concepts").items()) {
      ConceptKey key = ConceptKey::Parse(key_text);
      Concept c{key, jc.at("label").get<std::string>(), {}, {}};
      for (const auto &jp : jc.at("payloads")) c.payloads.push_back(PayloadFromJson(jp));
      for (const auto &je : jc.at("edges")) {
        c.edges.insert(ConceptKey::Parse(je.get<std::string>()));
      }
      g.concepts_.emplace(key, std::move(c));
    }
    const nlohmann::json &js = root.at("stats");
    g.stats_.concepts = js.at("concepts").get<long long>();
    g.stats_.qid_concepts = js.at("qid_concepts").get<long long>();
    g.stats_.local_concepts = js.at("local_concepts").get<long long>();
    g.stats_.merged_concepts = js.at("merged_concepts").get<long long>();
    g.stats_.same_corpus_merges = js.at("same_corpus_merges").get<long long>();
    g.stats_.edges = js.at("edges").get<long long>();
    g.stats_.removed_by_nlab_filter = js.at("removed_by_nlab_filter").get<long long>();
    for (const auto &[name, jcount] : js.at("corpora").items()) {
      GraphStats::CorpusCounts &c = g.stats_.corpora[name];
      c.entries = jcount.at("entries").get<long long>();
      c.mapped = jcount.at("mapped").get<long long>();
      c.in_graph = jcount.at("in_graph").get<long long>();
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kBadGraphFile, e.what());
  }
  try {
    g.Validate();
  } catch (const Error &e) {
    throw Error(ErrorCode::kBadGraphFile, e.detail());
  }
  return g;
}

KnowledgeGraph KnowledgeGraph::Load(const std::string &path) {
  std::string text = ReadFile(path);
  try {
    return FromJson(text);
  } catch (const Error &e) {
    throw Error(e.code(), path + ": " + e.detail());
  }
}

AssembleResult Assemble(const std::vector<CorpusEntry> &entries,
                        const std::vector<MappingRecord> &mappings) {
  std::map<std::pair<std::string, std::string>, const MappingRecord *> by_term;
  for (const MappingRecord &r : mappings) {
    by_term[{r.corpus, std::string(Trim(r.term))}] = &r;
  }

  std::vector<std::string> slugs;
  slugs.reserve(entries.size());
  for (const CorpusEntry &e : entries) slugs.push_back(e.LocalSlug());
  std::vector<size_t> order(entries.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return std::tie(entries[a].corpus, slugs[a], entries[a].term) <
           std::tie(entries[b].corpus, slugs[b], entries[b].term);
  });

  AssembleResult result;
  KnowledgeGraph &g = result.graph;
  std::map<std::string, std::map<std::string, ConceptKey>> slug_to_key;

  for (size_t i : order) {
    const CorpusEntry &e = entries[i];
    auto it = by_term.find({e.corpus, std::string(Trim(e.term))});
    if (it == by_term.end()) {
      throw Error(ErrorCode::kMissingMapping,
                  fmt::format("no mapping record for '{}' in corpus '{}'", e.term, e.corpus));
    }
    const MappingRecord &r = *it->second;
    GraphStats::CorpusCounts &counts = g.stats_.corpora[e.corpus];
    ++counts.entries;

    std::optional<ConceptKey> key;
    if (r.qid) {
      ++counts.mapped;
      key = ConceptKey::ForQid(*r.qid);
    } else {
      key = ConceptKey::Local(e.corpus, slugs[i]);
      for (int n = 2; g.concepts_.count(*key); ++n) {
        key = ConceptKey::Local(e.corpus, fmt::format("{}_{}", slugs[i], n));
      }
    }
    slug_to_key[e.corpus].emplace(slugs[i], *key);
    auto [cit, inserted] = g.concepts_.try_emplace(*key, Concept{*key, "", {}, {}});
    cit->second.payloads.push_back({e.corpus, e.term, r.StrategyName(), e.payload});
  }

  for (auto &[key, c] : g.concepts_) {
    c.label = GraphBuilder::ChooseLabel(c);
    for (const ConceptPayload &p : c.payloads) {
      const auto *page = std::get_if<DefinitionPage>(&p.payload);
      if (page == nullptr) continue;
      const auto &slug_map = slug_to_key[p.corpus];
      for (const std::string &slug : page->outgoing_slugs) {
        auto target = slug_map.find(slug);
        if (target == slug_map.end()) {
          result.warnings.push_back(fmt::format("{} page '{}' links to missing '{}'",
                                                p.corpus, page->slug, slug));
        } else if (!(target->second == key)) {
          c.edges.insert(target->second);
        }
      }
    }
  }
  GraphBuilder::Finish(g);
  g.Validate();
  return result;
}

KnowledgeGraph FilterNlab(const KnowledgeGraph &graph) {
  KnowledgeGraph out;
  long long removed = 0;
  for (const auto &[key, c] : graph.concepts()) {
    bool nlab_only = std::all_of(c.payloads.begin(), c.payloads.end(),
                                 [](const ConceptPayload &p) { return p.corpus == kNlab; });
    if (nlab_only) {
      ++removed;
    } else {
      out.concepts_.emplace(key, c);
    }
  }
  for (auto &[key, c] : out.concepts_) {
    std::erase_if(c.edges, [&](const ConceptKey &e) { return !out.concepts_.count(e); });
  }
  out.stats_ = graph.stats();
  out.stats_.removed_by_nlab_filter += removed;
  GraphBuilder::Finish(out);
  return out;
}

std::vector<const Concept *> SortRows(const KnowledgeGraph &graph) {
  std::vector<std::pair<std::string, const Concept *>> keyed;
  for (const auto &[key, c] : graph.concepts()) keyed.push_back({ToLowerAscii(c.label), &c});
  std::sort(keyed.begin(), keyed.end(), [](const auto &a, const auto &b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second->key < b.second->key;
  });
  std::vector<const Concept *> rows;
  for (const auto &[label, c] : keyed) rows.push_back(c);
  return rows;
}

std::pair<std::vector<CorpusEntry>, std::vector<MappingRecord>> Flatten(
    const KnowledgeGraph &graph) {
  std::vector<CorpusEntry> entries;
  std::vector<MappingRecord> records;
  for (const auto &[key, c] : graph.concepts()) {
    for (const ConceptPayload &p : c.payloads) {
      entries.push_back({p.corpus, p.term, p.payload});
      MappingRecord r;
      r.corpus = p.corpus;
      r.term = p.term;
      if (key.is_qid()) r.qid = Qid::FromString(key.str());
      ParseStrategyName(p.strategy, &r.strategy, &r.subject);
      records.push_back(std::move(r));
    }
  }
  return {std::move(entries), std::move(records)};
}

}  // namespace glossforge
