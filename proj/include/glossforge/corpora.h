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

// Adapters turning the four source shapes into CorpusEntry lists.
//
//   chicago      directory of <slug>.md definition pages
//   french_lean  TSV: term <TAB> lean_url (url may be empty)
//   mulima       TSV: term <TAB> lang=word;lang=word;...
//   nlab         text, one page title per line
//
// A custom corpus may use any of these shapes under its own name.

#ifndef GLOSSFORGE_CORPORA_H_
#define GLOSSFORGE_CORPORA_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace glossforge {

inline constexpr std::string_view kChicago = "chicago";
inline constexpr std::string_view kFrenchLean = "french_lean";
inline constexpr std::string_view kMulima = "mulima";
inline constexpr std::string_view kNlab = "nlab";

struct DefinitionPage {
  std::string slug;
  std::string body;                         // verbatim Markdown
  std::vector<std::string> outgoing_slugs;  // first-appearance order, unique
  bool operator==(const DefinitionPage &) const = default;
};

struct ProverLink {
  std::optional<std::string> url;
  bool operator==(const ProverLink &) const = default;
};

struct Translations {
  std::map<std::string, std::string> by_language;  // two-letter code -> word
  bool operator==(const Translations &) const = default;
};

struct WikiPage {
  std::string title;
  bool operator==(const WikiPage &) const = default;
};

using Payload = std::variant<DefinitionPage, ProverLink, Translations, WikiPage>;

enum class PayloadShape { kDefinitionPage, kProverLink, kTranslations, kWikiPage };

std::string_view PayloadShapeName(PayloadShape shape);
std::optional<PayloadShape> ParsePayloadShape(std::string_view name);
PayloadShape ShapeOf(const Payload &payload);
// The shape a built-in corpus name implies, nullopt for custom corpora.
std::optional<PayloadShape> BuiltinShape(std::string_view corpus);

struct CorpusEntry {
  std::string corpus;
  std::string term;
  Payload payload;

  // The page slug for definition pages, Slugify(term) otherwise.
  std::string LocalSlug() const;

  bool operator==(const CorpusEntry &) const = default;
};

// For a relative Markdown link target such as "group.md" or
// "../notes/Group.md#axioms", the lowercase file stem; nullopt for anything
// else (absolute URLs, anchors, non-.md files).
std::optional<std::string> SlugFromLinkTarget(std::string_view target);

// Relative .md link slugs found in a Markdown body, first-appearance order.
std::vector<std::string> HarvestLinkSlugs(std::string_view markdown);

// One entry per *.md file in `dir` (not recursive), files in lexicographic
// order. Slugs are lowercased file stems. Errors: kUnreadableFile,
// kDuplicateSlug.
std::vector<CorpusEntry> IngestChicago(const std::filesystem::path &dir,
                                       std::string_view corpus = kChicago);
// The term of a definition page: a leading "# Heading" line if present,
// otherwise the slug with underscores as spaces.
std::string ChicagoTerm(std::string_view slug, std::string_view body);

// Errors: kMalformedRow with the line number.
std::vector<CorpusEntry> ParseFrenchLean(std::string_view tsv,
                                         std::string_view corpus = kFrenchLean);
// Errors: kMalformedRow, kBadLanguageCode.
std::vector<CorpusEntry> ParseMulima(std::string_view tsv,
                                     std::string_view corpus = kMulima);
std::vector<CorpusEntry> ParseNlab(std::string_view text,
                                   std::string_view corpus = kNlab);

// File-reading wrappers; kUnreadableFile when the file cannot be read.
std::vector<CorpusEntry> IngestFrenchLean(const std::filesystem::path &file,
                                          std::string_view corpus = kFrenchLean);
std::vector<CorpusEntry> IngestMulima(const std::filesystem::path &file,
                                      std::string_view corpus = kMulima);
std::vector<CorpusEntry> IngestNlab(const std::filesystem::path &file,
                                    std::string_view corpus = kNlab);

}  // namespace glossforge

#endif  // GLOSSFORGE_CORPORA_H_
