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

#include "glossforge/title_index.h"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <set>

#include <fmt/core.h>

#include "glossforge/error.h"
#include "glossforge/util.h"
#include "json.hpp"

namespace glossforge {

// .qidx layout, all integers little-endian:
//
//   "QIDX" u32 version
//   u32 meta_length, meta JSON
//   u64 entry_count, u64 redirect_count
//   u64 entry_offsets[entry_count]       relative to the record area
//   u64 redirect_offsets[redirect_count]
//   u64 record_area_length, record area
//
// Entry record:    str title, str qid, u8 flags (bit 0 = disambiguation)
// Redirect record: str from, str to
// where str is u32 length followed by the bytes.
namespace {

constexpr std::string_view kMagic = "QIDX";
constexpr uint32_t kFormatVersion = 1;

void PutU32(std::string *out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void PutU64(std::string *out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void PutStr(std::string *out, std::string_view s) {
  PutU32(out, static_cast<uint32_t>(s.size()));
  out->append(s);
}

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  uint64_t U(int bytes) {
    Need(bytes);
    uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) {
      v |= static_cast<uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    }
    pos_ += bytes;
    return v;
  }
  std::string_view Bytes(uint64_t n) {
    Need(n);
    std::string_view s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::string Str() { return std::string(Bytes(U(4))); }
  void Seek(uint64_t pos) {
    if (pos > data_.size()) Corrupt("offset out of range");
    pos_ = pos;
  }
  bool done() const { return pos_ == data_.size(); }

  [[noreturn]] static void Corrupt(const std::string &what) {
    throw Error(ErrorCode::kBadIndexFile, what);
  }

 private:
  void Need(uint64_t n) const {
    if (n > data_.size() - pos_) Corrupt("truncated index file");
  }
  std::string_view data_;
  size_t pos_ = 0;
};

std::string MetaJson(const BuildMeta &meta) {
  nlohmann::json j = {
      {"titles_sha256", meta.titles_sha256},
      {"redirects_sha256", meta.redirects_sha256},
      {"entry_count", meta.entry_count},
      {"disambiguation_count", meta.disambiguation_count},
      {"redirect_count", meta.redirect_count},
  };
  return j.dump();
}

BuildMeta MetaFromJson(std::string_view text) {
  BuildMeta meta;
  try {
    nlohmann::json j = nlohmann::json::parse(text);
    meta.titles_sha256 = j.at("titles_sha256").get<std::string>();
    meta.redirects_sha256 = j.at("redirects_sha256").get<std::string>();
    meta.entry_count = j.at("entry_count").get<long long>();
    meta.disambiguation_count = j.at("disambiguation_count").get<long long>();
    meta.redirect_count = j.at("redirect_count").get<long long>();
  } catch (const nlohmann::json::exception &e) {
    Reader::Corrupt(std::string("bad metadata: ") + e.what());
  }
  return meta;
}

enum class ChainEnd { kEntry, kDangling, kCycle, kTooLong };

// Follows `start` through `redirects` until it reaches a page.
ChainEnd FollowChain(const std::string &start,
                     const std::map<std::string, std::string> &redirects,
                     const std::set<std::string> &pages) {
  std::set<std::string> seen{start};
  std::string current = start;
  for (int hop = 1;; ++hop) {
    auto it = redirects.find(current);
    assert(it != redirects.end());
    const std::string &next = it->second;
    if (pages.count(next)) return hop <= kMaxRedirectHops ? ChainEnd::kEntry : ChainEnd::kTooLong;
    if (!redirects.count(next)) return ChainEnd::kDangling;
    if (!seen.insert(next).second) return ChainEnd::kCycle;
    if (hop >= kMaxRedirectHops) return ChainEnd::kTooLong;
    current = next;
  }
}

}  // namespace

struct TitleIndexBuilder {
  static TitleIndex Make(std::map<std::string, IndexEntry> entries,
                         std::map<std::string, std::string> redirects,
                         BuildMeta meta) {
    TitleIndex index;
    for (auto &[title, entry] : entries) index.entries_.push_back(std::move(entry));
    for (auto &[from, to] : redirects) index.redirects_.emplace_back(from, to);
    index.meta_ = std::move(meta);
    return index;
  }
};

bool Qid::IsValid(std::string_view s) {
  if (s.size() < 2 || s[0] != 'Q') return false;
  return std::all_of(s.begin() + 1, s.end(), IsAsciiDigit);
}

std::optional<Qid> Qid::Parse(std::string_view s) {
  if (!IsValid(s)) return std::nullopt;
  return Qid(std::string(s));
}

Qid Qid::FromString(std::string_view s) {
  std::optional<Qid> qid = Parse(s);
  if (!qid) throw Error(ErrorCode::kBadQid, "not a Wikidata id: '" + std::string(s) + "'");
  return *qid;
}

std::string NormalizeTitle(std::string_view raw) {
  std::string_view trimmed = Trim(raw);
  if (trimmed.empty()) throw Error(ErrorCode::kEmptyTitle, "empty title");
  std::string out;
  out.reserve(trimmed.size());
  bool in_space = false;
  for (char c : trimmed) {
    if (IsAsciiSpace(c)) {
      if (!in_space) out.push_back('_');
      in_space = true;
      continue;
    }
    in_space = false;
    out.push_back(c);
  }
  if (out[0] >= 'a' && out[0] <= 'z') out[0] = static_cast<char>(out[0] - 'a' + 'A');
  return out;
}

const IndexEntry *TitleIndex::FindEntry(std::string_view normalized) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), normalized,
      [](const IndexEntry &e, std::string_view t) { return e.title < t; });
  if (it == entries_.end() || it->title != normalized) return nullptr;
  return &*it;
}

const std::string *TitleIndex::FindRedirect(std::string_view normalized) const {
  auto it = std::lower_bound(
      redirects_.begin(), redirects_.end(), normalized,
      [](const std::pair<std::string, std::string> &r, std::string_view t) {
        return r.first < t;
      });
  if (it == redirects_.end() || it->first != normalized) return nullptr;
  return &it->second;
}

const IndexEntry *TitleIndex::Lookup(std::string_view title) const {
  std::string current;
  try {
    current = NormalizeTitle(title);
  } catch (const Error &) {
    return nullptr;
  }
  for (int hop = 0; hop <= kMaxRedirectHops; ++hop) {
    if (const IndexEntry *entry = FindEntry(current)) return entry;
    const std::string *next = FindRedirect(current);
    if (next == nullptr) return nullptr;
    current = *next;
  }
  assert(false && "redirect chain longer than the build-time bound");
  return nullptr;
}

BuildResult BuildTitleIndex(std::string_view titles_tsv,
                            std::string_view redirects_tsv) {
  BuildResult result;
  std::map<std::string, IndexEntry> entries;

  std::vector<std::string_view> lines = SplitLines(titles_tsv);
  for (size_t i = 0; i < lines.size(); ++i) {
    const size_t line_no = i + 1;
    if (Trim(lines[i]).empty()) continue;
    std::vector<std::string> cols = Split(lines[i], '\t');
    if (cols.size() != 2 && cols.size() != 3) {
      throw Error(ErrorCode::kMalformedRow,
                  fmt::format("titles line {}: expected 3 columns, found {}", line_no,
                              cols.size()));
    }
    std::string flags = cols.size() == 3 ? cols[2] : "";
    if (flags != "" && flags != "D") {
      throw Error(ErrorCode::kMalformedRow,
                  fmt::format("titles line {}: unknown flags '{}'", line_no, flags));
    }
    std::optional<Qid> qid = Qid::Parse(cols[1]);
    if (!qid) {
      throw Error(ErrorCode::kBadQid,
                  fmt::format("titles line {}: bad qid '{}'", line_no, cols[1]));
    }
    std::string title;
    try {
      title = NormalizeTitle(cols[0]);
    } catch (const Error &) {
      throw Error(ErrorCode::kMalformedRow,
                  fmt::format("titles line {}: empty title", line_no));
    }
    if (entries.count(title)) {
      result.warnings.push_back(fmt::format(
          "titles line {}: duplicate title '{}', last row wins", line_no, title));
    }
    entries.insert_or_assign(title, IndexEntry{title, *qid, flags == "D"});
  }

  std::map<std::string, std::string> redirects;
  lines = SplitLines(redirects_tsv);
  for (size_t i = 0; i < lines.size(); ++i) {
    const size_t line_no = i + 1;
    if (Trim(lines[i]).empty()) continue;
    std::vector<std::string> cols = Split(lines[i], '\t');
    if (cols.size() != 2) {
      throw Error(ErrorCode::kMalformedRow,
                  fmt::format("redirects line {}: expected 2 columns, found {}",
                              line_no, cols.size()));
    }
    std::string from, to;
    try {
      from = NormalizeTitle(cols[0]);
      to = NormalizeTitle(cols[1]);
    } catch (const Error &) {
      throw Error(ErrorCode::kMalformedRow,
                  fmt::format("redirects line {}: empty title", line_no));
    }
    if (entries.count(from)) {
      result.warnings.push_back(fmt::format(
          "redirects line {}: '{}' is a page, redirect ignored", line_no, from));
      continue;
    }
    if (redirects.count(from)) {
      result.warnings.push_back(fmt::format(
          "redirects line {}: duplicate redirect '{}', last row wins", line_no, from));
    }
    redirects.insert_or_assign(from, to);
  }

  std::set<std::string> pages;
  for (const auto &[title, entry] : entries) pages.insert(title);
  std::vector<std::string> dangling;
  for (const auto &[from, to] : redirects) {
    switch (FollowChain(from, redirects, pages)) {
      case ChainEnd::kEntry:
        break;
      case ChainEnd::kDangling:
        dangling.push_back(from);
        break;
      case ChainEnd::kCycle:
        throw Error(ErrorCode::kRedirectCycle,
                    fmt::format("redirect cycle reachable from '{}'", from));
      case ChainEnd::kTooLong:
        throw Error(ErrorCode::kRedirectChainTooLong,
                    fmt::format("redirect chain from '{}' exceeds {} hops", from,
                                kMaxRedirectHops));
    }
  }
  for (const std::string &from : dangling) {
    result.warnings.push_back(fmt::format(
        "redirect '{}' -> '{}' does not reach a page, dropped", from, redirects[from]));
  }
  for (const std::string &from : dangling) redirects.erase(from);

  BuildMeta meta;
  meta.titles_sha256 = Sha256Hex(titles_tsv);
  meta.redirects_sha256 = Sha256Hex(redirects_tsv);
  meta.entry_count = static_cast<long long>(entries.size());
  for (const auto &[title, entry] : entries) {
    if (entry.is_disambiguation) ++meta.disambiguation_count;
  }
  meta.redirect_count = static_cast<long long>(redirects.size());
  result.index = TitleIndexBuilder::Make(std::move(entries), std::move(redirects),
                                         std::move(meta));
  return result;
}

std::string TitleIndex::Serialize() const {
  std::string records;
  std::vector<uint64_t> entry_offsets, redirect_offsets;
  for (const IndexEntry &e : entries_) {
    entry_offsets.push_back(records.size());
    PutStr(&records, e.title);
    PutStr(&records, e.qid.str());
    records.push_back(e.is_disambiguation ? 1 : 0);
  }
  for (const auto &[from, to] : redirects_) {
    redirect_offsets.push_back(records.size());
    PutStr(&records, from);
    PutStr(&records, to);
  }

  std::string out(kMagic);
  PutU32(&out, kFormatVersion);
  PutStr(&out, MetaJson(meta_));
  PutU64(&out, entries_.size());
  PutU64(&out, redirects_.size());
  for (uint64_t off : entry_offsets) PutU64(&out, off);
  for (uint64_t off : redirect_offsets) PutU64(&out, off);
  PutU64(&out, records.size());
  out += records;
  return out;
}

TitleIndex TitleIndex::Deserialize(std::string_view bytes) {
  Reader r(bytes);
  if (r.Bytes(kMagic.size()) != kMagic) Reader::Corrupt("not a .qidx file");
  uint32_t version = static_cast<uint32_t>(r.U(4));
  if (version != kFormatVersion) {
    Reader::Corrupt(fmt::format("unsupported .qidx version {}", version));
  }
  BuildMeta meta = MetaFromJson(r.Str());
  uint64_t n_entries = r.U(8);
  uint64_t n_redirects = r.U(8);
  if (n_entries > bytes.size() || n_redirects > bytes.size()) {
    Reader::Corrupt("implausible record counts");
  }
  std::vector<uint64_t> entry_offsets(n_entries), redirect_offsets(n_redirects);
  for (uint64_t &off : entry_offsets) off = r.U(8);
  for (uint64_t &off : redirect_offsets) off = r.U(8);
  uint64_t area_length = r.U(8);
  std::string_view area = r.Bytes(area_length);
  if (!r.done()) Reader::Corrupt("trailing bytes after record area");

  TitleIndex index;
  index.meta_ = std::move(meta);
  Reader records(area);
  for (uint64_t off : entry_offsets) {
    records.Seek(off);
    std::string title = records.Str();
    std::optional<Qid> qid = Qid::Parse(records.Str());
    if (!qid) Reader::Corrupt("bad qid in entry record");
    uint64_t flags = records.U(1);
    if (flags > 1) Reader::Corrupt("bad entry flags");
    index.entries_.push_back({std::move(title), *qid, flags == 1});
  }
  for (uint64_t off : redirect_offsets) {
    records.Seek(off);
    std::string from = records.Str();
    std::string to = records.Str();
    index.redirects_.emplace_back(std::move(from), std::move(to));
  }

  for (size_t i = 1; i < index.entries_.size(); ++i) {
    if (!(index.entries_[i - 1].title < index.entries_[i].title)) {
      Reader::Corrupt("entry titles not strictly sorted");
    }
  }
  for (size_t i = 1; i < index.redirects_.size(); ++i) {
    if (!(index.redirects_[i - 1].first < index.redirects_[i].first)) {
      Reader::Corrupt("redirect titles not strictly sorted");
    }
  }
  std::set<std::string> pages;
  for (const IndexEntry &e : index.entries_) pages.insert(e.title);
  std::map<std::string, std::string> redirects(index.redirects_.begin(),
                                               index.redirects_.end());
  for (const auto &[from, to] : index.redirects_) {
    if (pages.count(from) || FollowChain(from, redirects, pages) != ChainEnd::kEntry) {
      Reader::Corrupt("redirect '" + from + "' does not resolve to a page");
    }
  }
  if (index.meta_.entry_count != static_cast<long long>(index.entries_.size()) ||
      index.meta_.redirect_count != static_cast<long long>(index.redirects_.size())) {
    Reader::Corrupt("metadata counts disagree with the records");
  }
  return index;
}

void TitleIndex::Save(const std::filesystem::path &path) const {
  WriteFileAtomic(path, Serialize());
}

TitleIndex TitleIndex::Load(const std::filesystem::path &path) {
  std::string bytes = ReadFile(path);
  try {
    return Deserialize(bytes);
  } catch (const Error &e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

}  // namespace glossforge
