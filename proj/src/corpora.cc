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

#include "glossforge/corpora.h"

#include <algorithm>
#include <regex>
#include <set>
#include <system_error>

#include <fmt/core.h>

#include "glossforge/error.h"
#include "glossforge/util.h"

namespace glossforge {
namespace {

bool EndsWithMd(std::string_view s) {
  return s.size() > 3 && ToLowerAscii(s.substr(s.size() - 3)) == ".md";
}

bool IsLanguageCode(std::string_view s) {
  return s.size() == 2 && s[0] >= 'a' && s[0] <= 'z' && s[1] >= 'a' && s[1] <= 'z';
}

template <typename RowFn>
void ForEachRow(std::string_view text, RowFn fn) {
  std::vector<std::string_view> lines = SplitLines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty()) continue;
    fn(i + 1, lines[i]);
  }
}

}  // namespace

std::string_view PayloadShapeName(PayloadShape shape) {
  switch (shape) {
    case PayloadShape::kDefinitionPage: return "definition_page";
    case PayloadShape::kProverLink: return "prover_link";
    case PayloadShape::kTranslations: return "translations";
    case PayloadShape::kWikiPage: return "wiki_page";
  }
  return "definition_page";
}

std::optional<PayloadShape> ParsePayloadShape(std::string_view name) {
  if (name == "definition_page" || name == kChicago) return PayloadShape::kDefinitionPage;
  if (name == "prover_link" || name == kFrenchLean) return PayloadShape::kProverLink;
  if (name == "translations" || name == kMulima) return PayloadShape::kTranslations;
  if (name == "wiki_page" || name == kNlab) return PayloadShape::kWikiPage;
  return std::nullopt;
}

PayloadShape ShapeOf(const Payload &payload) {
  return static_cast<PayloadShape>(payload.index());
}

std::optional<PayloadShape> BuiltinShape(std::string_view corpus) {
  if (corpus == kChicago) return PayloadShape::kDefinitionPage;
  if (corpus == kFrenchLean) return PayloadShape::kProverLink;
  if (corpus == kMulima) return PayloadShape::kTranslations;
  if (corpus == kNlab) return PayloadShape::kWikiPage;
  return std::nullopt;
}

std::string CorpusEntry::LocalSlug() const {
  if (const auto *page = std::get_if<DefinitionPage>(&payload)) return page->slug;
  std::string slug = Slugify(term);
  if (slug.empty()) slug = "term_" + Sha256Hex(term).substr(0, 12);
  return slug;
}

std::optional<std::string> SlugFromLinkTarget(std::string_view target) {
  target = Trim(target);
  if (target.empty() || target.front() == '#' || target.front() == '/' ||
      target.find("://") != std::string_view::npos ||
      target.rfind("mailto:", 0) == 0) {
    return std::nullopt;
  }
  size_t cut = target.find_first_of("#?");
  if (cut != std::string_view::npos) target = target.substr(0, cut);
  size_t slash = target.find_last_of('/');
  if (slash != std::string_view::npos) target = target.substr(slash + 1);
  if (!EndsWithMd(target)) return std::nullopt;
  return ToLowerAscii(target.substr(0, target.size() - 3));
}

std::vector<std::string> HarvestLinkSlugs(std::string_view markdown) {
  static const std::regex kLink(R"(\[[^\]]*\]\(([^)\s]+)(?:\s+"[^"]*")?\))");
  std::vector<std::string> slugs;
  std::set<std::string> seen;
  std::string text(markdown);
  for (auto it = std::sregex_iterator(text.begin(), text.end(), kLink);
       it != std::sregex_iterator(); ++it) {
    std::optional<std::string> slug = SlugFromLinkTarget((*it)[1].str());
    if (slug && seen.insert(*slug).second) slugs.push_back(*slug);
  }
  return slugs;
}

std::string ChicagoTerm(std::string_view slug, std::string_view body) {
  std::vector<std::string_view> lines = SplitLines(body);
  if (!lines.empty() && lines[0].size() > 2 && lines[0].substr(0, 2) == "# ") {
    std::string_view heading = Trim(lines[0].substr(2));
    if (!heading.empty()) return std::string(heading);
  }
  std::string term(slug);
  std::replace(term.begin(), term.end(), '_', ' ');
  return ToLowerAscii(term);
}

std::vector<CorpusEntry> IngestChicago(const std::filesystem::path &dir,
                                       std::string_view corpus) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorCode::kUnreadableFile, "not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (auto it = std::filesystem::directory_iterator(dir, ec);
       !ec && it != std::filesystem::directory_iterator(); it.increment(ec)) {
    const std::filesystem::path &p = it->path();
    if (EndsWithMd(p.filename().string()) && !it->is_directory()) files.push_back(p);
  }
  if (ec) {
    throw Error(ErrorCode::kUnreadableFile,
                "cannot list " + dir.string() + ": " + ec.message());
  }
  std::sort(files.begin(), files.end(), [](const auto &a, const auto &b) {
    return a.filename().string() < b.filename().string();
  });

  std::vector<CorpusEntry> entries;
  std::map<std::string, std::string> slug_to_file;
  for (const std::filesystem::path &file : files) {
    std::string name = file.filename().string();
    std::string slug = ToLowerAscii(name.substr(0, name.size() - 3));
    auto [it, inserted] = slug_to_file.emplace(slug, name);
    if (!inserted) {
      throw Error(ErrorCode::kDuplicateSlug,
                  fmt::format("'{}' and '{}' both have slug '{}'", it->second, name, slug));
    }
    std::string body = ReadFile(file);
    CorpusEntry entry;
    entry.corpus = std::string(corpus);
    entry.term = ChicagoTerm(slug, body);
    entry.payload = DefinitionPage{slug, body, HarvestLinkSlugs(body)};
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<CorpusEntry> ParseFrenchLean(std::string_view tsv, std::string_view corpus) {
  std::vector<CorpusEntry> entries;
  ForEachRow(tsv, [&](size_t line_no, std::string_view line) {
    std::vector<std::string> cols = Split(line, '\t');
    if (cols.size() != 2) {
      throw Error(ErrorCode::kMalformedRow,
                  fmt::format("line {}: expected 2 columns, found {}", line_no, cols.size()));
    }
    std::string term(Trim(cols[0]));
    if (term.empty()) {
      throw Error(ErrorCode::kMalformedRow, fmt::format("line {}: empty term", line_no));
    }
    ProverLink link;
    std::string_view url = Trim(cols[1]);
    if (!url.empty()) link.url = std::string(url);
    entries.push_back({std::string(corpus), std::move(term), std::move(link)});
  });
  return entries;
}

std::vector<CorpusEntry> ParseMulima(std::string_view tsv, std::string_view corpus) {
  std::vector<CorpusEntry> entries;
  ForEachRow(tsv, [&](size_t line_no, std::string_view line) {
    std::vector<std::string> cols = Split(line, '\t');
    if (cols.size() != 2) {
      throw Error(ErrorCode::kMalformedRow,
                  fmt::format("line {}: expected 2 columns, found {}", line_no, cols.size()));
    }
    std::string term(Trim(cols[0]));
    if (term.empty()) {
      throw Error(ErrorCode::kMalformedRow, fmt::format("line {}: empty term", line_no));
    }
    Translations translations;
    for (const std::string &pair : Split(cols[1], ';')) {
      if (Trim(pair).empty()) continue;
      size_t eq = pair.find('=');
      if (eq == std::string::npos) {
        throw Error(ErrorCode::kMalformedRow,
                    fmt::format("line {}: '{}' is not lang=word", line_no, pair));
      }
      std::string lang(Trim(std::string_view(pair).substr(0, eq)));
      std::string word(Trim(std::string_view(pair).substr(eq + 1)));
      if (!IsLanguageCode(lang)) {
        throw Error(ErrorCode::kBadLanguageCode,
                    fmt::format("line {}: '{}' is not a two-letter language code",
                                line_no, lang));
      }
      if (word.empty()) {
        throw Error(ErrorCode::kMalformedRow,
                    fmt::format("line {}: empty translation for '{}'", line_no, lang));
      }
      translations.by_language[lang] = word;
    }
    translations.by_language.emplace("en", term);
    entries.push_back({std::string(corpus), std::move(term), std::move(translations)});
  });
  return entries;
}

std::vector<CorpusEntry> ParseNlab(std::string_view text, std::string_view corpus) {
  std::vector<CorpusEntry> entries;
  ForEachRow(text, [&](size_t, std::string_view line) {
    std::string title(Trim(line));
    entries.push_back({std::string(corpus), title, WikiPage{title}});
  });
  return entries;
}

std::vector<CorpusEntry> IngestFrenchLean(const std::filesystem::path &file,
                                          std::string_view corpus) {
  return ParseFrenchLean(ReadFile(file), corpus);
}

std::vector<CorpusEntry> IngestMulima(const std::filesystem::path &file,
                                      std::string_view corpus) {
  return ParseMulima(ReadFile(file), corpus);
}

std::vector<CorpusEntry> IngestNlab(const std::filesystem::path &file,
                                    std::string_view corpus) {
  return ParseNlab(ReadFile(file), corpus);
}

}  // namespace glossforge
