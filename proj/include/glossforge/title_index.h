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

// Wikipedia page title -> Wikidata item index with redirect resolution.
//
// The index is built once from two TSV files and is read-only afterwards:
//
//   titles.tsv     title <TAB> qid <TAB> flags     (flags "" or "D")
//   redirects.tsv  from_title <TAB> to_title
//
// "D" marks a disambiguation page. Titles are normalized MediaWiki-style
// (see NormalizeTitle) on both build and lookup.

#ifndef GLOSSFORGE_TITLE_INDEX_H_
#define GLOSSFORGE_TITLE_INDEX_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace glossforge {

// A Wikidata item id, "Q" followed by one or more digits.
class Qid {
 public:
  static bool IsValid(std::string_view s);
  static std::optional<Qid> Parse(std::string_view s);
  // Throws Error(kBadQid).
  static Qid FromString(std::string_view s);

  const std::string &str() const { return value_; }

  auto operator<=>(const Qid &) const = default;

 private:
  explicit Qid(std::string value) : value_(std::move(value)) {}
  std::string value_;
};

inline constexpr int kMaxRedirectHops = 8;

struct IndexEntry {
  std::string title;
  Qid qid;
  bool is_disambiguation = false;

  bool operator==(const IndexEntry &) const = default;
};

struct BuildMeta {
  std::string titles_sha256;
  std::string redirects_sha256;
  long long entry_count = 0;
  long long disambiguation_count = 0;
  long long redirect_count = 0;

  bool operator==(const BuildMeta &) const = default;
};

// Trims, collapses internal whitespace runs to one space, turns spaces into
// underscores and uppercases the first character (ASCII only). Throws
// Error(kEmptyTitle) when nothing is left.
std::string NormalizeTitle(std::string_view raw);

class TitleIndex {
 public:
  TitleIndex() = default;

  // Normalizes `title`, follows redirects and returns the terminal entry, or
  // nullptr. Never throws; an empty title is simply absent.
  const IndexEntry *Lookup(std::string_view title) const;

  const std::vector<IndexEntry> &entries() const { return entries_; }
  const std::vector<std::pair<std::string, std::string>> &redirects() const {
    return redirects_;
  }
  const BuildMeta &meta() const { return meta_; }
  size_t size() const { return entries_.size(); }

  // Binary .qidx encoding; byte-identical for equal indices.
  std::string Serialize() const;
  // Throws Error(kBadIndexFile) on a corrupt or foreign file.
  static TitleIndex Deserialize(std::string_view bytes);

  void Save(const std::filesystem::path &path) const;
  // Throws kUnreadableFile if the file cannot be read.
  static TitleIndex Load(const std::filesystem::path &path);

  bool operator==(const TitleIndex &) const = default;

 private:
  friend struct TitleIndexBuilder;

  const IndexEntry *FindEntry(std::string_view normalized) const;
  const std::string *FindRedirect(std::string_view normalized) const;

  std::vector<IndexEntry> entries_;  // sorted by title
  std::vector<std::pair<std::string, std::string>> redirects_;  // sorted by from
  BuildMeta meta_;
};

struct BuildResult {
  TitleIndex index;
  std::vector<std::string> warnings;
};

// Builds the index. Duplicate titles: the last row wins, with a warning.
// Redirects whose source is also a page, or whose chain ends at no page, are
// dropped with a warning. Errors: kMalformedRow, kBadQid (with line numbers),
// kRedirectCycle, kRedirectChainTooLong.
BuildResult BuildTitleIndex(std::string_view titles_tsv,
                            std::string_view redirects_tsv);

}  // namespace glossforge

#endif  // GLOSSFORGE_TITLE_INDEX_H_
