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

// Static site output.
//
//   database.html       one <tr class="concept"> per concept
//   defs/<slug>.html    one page per definition page payload
//   assets/filter.js    substring filter for the table
//   assets/style.css
//   manifest.json       {"files": [{"path", "bytes", "sha256"}, ...]}
//
// All local links are relative, so the site works from any prefix or from
// the file system.

#ifndef GLOSSFORGE_SITE_EMIT_H_
#define GLOSSFORGE_SITE_EMIT_H_

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "glossforge/concept_graph.h"

namespace glossforge {

// Templates substitute {qid}, {title} or {term}, URL-encoded.
struct SiteOptions {
  std::string base_url;
  std::string wikidata_url_template = "https://www.wikidata.org/wiki/{qid}";
  std::string nlab_url_template = "https://ncatlab.org/nlab/show/{title}";
  std::string mulima_url_template = "https://thosgood.com/maths-dictionary/#{term}";
  unsigned workers = 1;
};

// Replaces every "{name}" in `tmpl` with the URL-encoded value.
std::string ExpandUrlTemplate(std::string_view tmpl, std::string_view name,
                              std::string_view value);

// Where a Markdown link should point: an href, or nullopt for a dangling
// link.
using LinkResolver = std::function<std::optional<std::string>(std::string_view target)>;

// Renders the supported Markdown subset: ATX headings, paragraphs, ordered
// and unordered lists, *emphasis*, **strong**, `code` and [links](target).
// $...$ and $$...$$ spans are copied verbatim (HTML-escaped) into
// <span class="math">. Anything else is escaped text.
std::string RenderMarkdown(std::string_view markdown, const LinkResolver &resolve);

std::string RenderTable(const std::vector<const Concept *> &rows,
                        const SiteOptions &options);

// Path -> content for every definition page in the graph.
std::map<std::string, std::string> RenderDefinitionPages(const KnowledgeGraph &graph,
                                                         const SiteOptions &options);

// Every file of the site except manifest.json, keyed by relative path.
std::map<std::string, std::string> RenderSite(const KnowledgeGraph &graph,
                                              const SiteOptions &options);

struct ManifestEntry {
  std::string path;
  size_t bytes = 0;
  std::string sha256;
  bool operator==(const ManifestEntry &) const = default;
};

std::vector<ManifestEntry> BuildManifest(const std::map<std::string, std::string> &files);
std::string ManifestToJson(const std::vector<ManifestEntry> &manifest);

// Renders the site into a temporary sibling directory and renames it over
// `out`. Throws kIoFailure; on failure `out` is left as it was.
std::vector<ManifestEntry> EmitSite(const KnowledgeGraph &graph,
                                    const std::filesystem::path &out,
                                    const SiteOptions &options);

}  // namespace glossforge

#endif  // GLOSSFORGE_SITE_EMIT_H_
