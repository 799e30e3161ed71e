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

#include "glossforge/detex.h"

#include <algorithm>

#include <fmt/core.h>

#include "default_data.h"
#include "glossforge/error.h"
#include "glossforge/util.h"

namespace glossforge {
namespace {

bool IsWordChar(char c) {
  return IsAsciiAlnum(c) || static_cast<unsigned char>(c) >= 0x80;
}

bool IsTerminator(std::string_view form) {
  return form == "." || form == "!" || form == "?";
}

bool IsPeelable(char c) {
  return c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?';
}

bool CanStartSentence(const DetexToken &token) {
  char c = token.form.front();
  return IsAsciiUpper(c) || IsAsciiDigit(c) || c == '$';
}

size_t DelimiterLength(std::string_view text, size_t i) {
  return i + 1 < text.size() && text[i + 1] == '$' ? 2 : 1;
}

std::string CollapseWhitespace(std::string_view s) {
  std::string out;
  bool pending = false;
  for (char c : s) {
    if (IsAsciiSpace(c)) {
      pending = true;
      continue;
    }
    if (pending && !out.empty()) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

void WarnOnBracketMath(std::string_view text, std::vector<std::string> *warnings) {
  for (std::string_view delim : {"\\[", "\\]", "\\(", "\\)"}) {
    size_t pos = text.find(delim);
    if (pos == std::string_view::npos) continue;
    size_t count = 0;
    for (size_t p = pos; p != std::string_view::npos; p = text.find(delim, p + 2)) {
      ++count;
    }
    warnings->push_back(fmt::format(
        "'{}' delimiter left untreated as literal text ({} occurrence(s), "
        "first at offset {})",
        delim, count, pos));
  }
}

// Appends a non-math unit, splitting off trailing punctuation.
void AppendWordUnit(std::string_view text, size_t start, size_t end,
                    bool space_after, const AbbreviationList &abbreviations,
                    std::vector<DetexToken> *out) {
  size_t word_end = end;
  while (word_end - start > 1 && IsPeelable(text[word_end - 1]) &&
         !abbreviations.Contains(text.substr(start, word_end - start))) {
    --word_end;
  }
  out->push_back({std::string(text.substr(start, word_end - start)), false,
                  word_end == end ? space_after : false, start, word_end});
  for (size_t p = word_end; p < end; ++p) {
    out->push_back({std::string(1, text[p]), false,
                    p + 1 == end ? space_after : false, p, p + 1});
  }
}

}  // namespace

std::string TokenizedSentence::Text() const {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    out += tokens[i].form;
    if (i + 1 < tokens.size() && tokens[i].space_after) out.push_back(' ');
  }
  return out;
}

AbbreviationList::AbbreviationList(const std::vector<std::string> &entries) {
  for (const std::string &e : entries) entries_.insert(ToLowerAscii(e));
}

AbbreviationList AbbreviationList::Parse(std::string_view data) {
  std::vector<std::string> entries;
  for (std::string_view line : SplitLines(data)) {
    line = Trim(line);
    if (line.empty() || line.front() == '#') continue;
    entries.emplace_back(line);
  }
  return AbbreviationList(entries);
}

const AbbreviationList &AbbreviationList::Default() {
  static const AbbreviationList list = Parse(data::kAbbreviations);
  return list;
}

bool AbbreviationList::Contains(std::string_view token) const {
  return entries_.count(ToLowerAscii(token)) > 0;
}

std::string PadDelimiters(std::string_view text) {
  std::string out;
  out.reserve(text.size() + text.size() / 4);
  const size_t n = text.size();
  size_t i = 0;
  while (i < n) {
    char c = text[i];
    if (c == '$') {
      size_t len = DelimiterLength(text, i);
      if (!out.empty() && !IsAsciiSpace(out.back())) out.push_back(' ');
      out.append(text.substr(i, len));
      if (i + len < n && !IsAsciiSpace(text[i + len])) out.push_back(' ');
      i += len;
      continue;
    }
    if (c == '-' && i > 0 && i + 1 < n && IsWordChar(text[i - 1]) &&
        IsWordChar(text[i + 1])) {
      out += " - ";
      ++i;
      continue;
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

std::vector<MathSpan> ScanMathSpans(std::string_view text, MathMode mode,
                                    std::vector<std::string> *warnings) {
  if (mode == MathMode::kStrict) {
    size_t dollars = std::count(text.begin(), text.end(), '$');
    if (dollars % 2 != 0) {
      throw Error(ErrorCode::kUnbalancedMath,
                  fmt::format("odd number of '$' characters ({})", dollars));
    }
  }
  std::vector<MathSpan> spans;
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '$') {
      ++i;
      continue;
    }
    const size_t len = DelimiterLength(text, i);
    size_t close = text.find(len == 2 ? "$$" : "$", i + len);
    if (close == std::string_view::npos) {
      if (mode == MathMode::kStrict) {
        throw Error(ErrorCode::kUnbalancedMath,
                    fmt::format("unmatched '{}' at offset {}",
                                text.substr(i, len), i));
      }
      if (warnings != nullptr) {
        warnings->push_back(fmt::format(
            "unmatched '{}' at offset {} kept as a literal token",
            text.substr(i, len), i));
      }
      i += len;
      continue;
    }
    MathSpan span;
    span.start = i;
    span.end = close + len;
    span.content = std::string(text.substr(span.start, span.end - span.start));
    span.display = len == 2;
    spans.push_back(std::move(span));
    i = close + len;
  }
  return spans;
}

TokenizedText Tokenize(const RawText &raw, const AbbreviationList &abbreviations) {
  TokenizedText result;
  std::string_view text = raw.text;
  WarnOnBracketMath(text, &result.warnings);
  std::vector<MathSpan> spans = ScanMathSpans(text, raw.mode, &result.warnings);

  std::vector<DetexToken> tokens;
  size_t next_span = 0;
  size_t pos = 0;
  const size_t n = text.size();
  while (pos < n) {
    if (IsAsciiSpace(text[pos])) {
      ++pos;
      continue;
    }
    if (next_span < spans.size() && spans[next_span].start == pos) {
      const MathSpan &span = spans[next_span++];
      bool space_after = span.end == n || IsAsciiSpace(text[span.end]);
      tokens.push_back({CollapseWhitespace(span.content), true, space_after,
                        span.start, span.end});
      pos = span.end;
      continue;
    }
    if (text[pos] == '$') {
      // Unmatched delimiter (lenient mode only): a literal token of its own.
      size_t len = DelimiterLength(text, pos);
      size_t end = pos + len;
      bool space_after = end == n || IsAsciiSpace(text[end]);
      tokens.push_back({std::string(text.substr(pos, len)), false, space_after,
                        pos, end});
      pos = end;
      continue;
    }
    size_t end = pos;
    while (end < n && !IsAsciiSpace(text[end]) && text[end] != '$') ++end;
    bool space_after = end == n || IsAsciiSpace(text[end]);
    AppendWordUnit(text, pos, end, space_after, abbreviations, &tokens);
    pos = end;
  }

  TokenizedSentence current;
  for (size_t i = 0; i < tokens.size(); ++i) {
    current.tokens.push_back(tokens[i]);
    const DetexToken &t = tokens[i];
    if (t.is_math || !IsTerminator(t.form)) continue;
    bool last = i + 1 == tokens.size();
    if (last || (t.space_after && CanStartSentence(tokens[i + 1]))) {
      result.sentences.push_back(std::move(current));
      current = TokenizedSentence();
    }
  }
  if (!current.tokens.empty()) result.sentences.push_back(std::move(current));
  return result;
}

Document EmitSkeleton(const std::string &doc_id, const TokenizedText &text) {
  Document doc;
  doc.doc_id = doc_id;
  for (size_t s = 0; s < text.sentences.size(); ++s) {
    const TokenizedSentence &in = text.sentences[s];
    Sentence sentence;
    sentence.sent_id = fmt::format("{}-{}", doc_id, s + 1);
    sentence.text = in.Text();
    for (size_t i = 0; i < in.tokens.size(); ++i) {
      const DetexToken &t = in.tokens[i];
      Token token;
      token.id = static_cast<int>(i + 1);
      token.form = t.form;
      std::vector<std::string> misc;
      if (t.is_math) misc.emplace_back("MathSpan=Yes");
      if (!t.space_after && i + 1 < in.tokens.size()) {
        misc.emplace_back("SpaceAfter=No");
      }
      if (!misc.empty()) token.misc = Join(misc, "|");
      sentence.tokens.push_back(std::move(token));
    }
    doc.sentences.push_back(std::move(sentence));
  }
  return doc;
}

}  // namespace glossforge
