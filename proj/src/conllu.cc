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

#include "glossforge/conllu.h"

#include <climits>
#include <set>

#include <fmt/core.h>

#include "glossforge/error.h"
#include "glossforge/util.h"

namespace glossforge {
namespace {

constexpr int kColumns = 10;

enum class CommentKey { kNone, kSentId, kText, kLength };

// Classifies a comment body ("# key = value" minus the '#').
CommentKey ClassifyComment(std::string_view body, std::string_view *value) {
  size_t eq = body.find('=');
  if (eq == std::string_view::npos) return CommentKey::kNone;
  std::string_view key = Trim(body.substr(0, eq));
  *value = Trim(body.substr(eq + 1));
  if (key == "sent_id") return CommentKey::kSentId;
  if (key == "text") return CommentKey::kText;
  if (key == "length") return CommentKey::kLength;
  return CommentKey::kNone;
}

bool HasLineBreak(std::string_view s) {
  return s.find('\n') != std::string_view::npos ||
         s.find('\r') != std::string_view::npos;
}

bool IsBlank(std::string_view line) { return Trim(line).empty(); }

[[noreturn]] void Fail(ErrorCode code, size_t line, const std::string &what) {
  throw Error(code, fmt::format("line {}: {}", line, what));
}

// Accumulates one sentence block while parsing.
struct PendingSentence {
  Sentence sentence;
  std::optional<long long> declared_length;
  size_t first_line = 0;
  bool seen_sent_id = false;
  bool seen_text = false;
  std::vector<size_t> token_lines;

  bool empty() const {
    return first_line == 0;
  }
};

void CheckHeads(const PendingSentence &pending) {
  const Sentence &s = pending.sentence;
  int roots = 0;
  for (size_t i = 0; i < s.tokens.size(); ++i) {
    const Token &t = s.tokens[i];
    if (!t.head) continue;
    size_t line = pending.token_lines[i];
    if (*t.head > static_cast<long long>(s.tokens.size())) {
      Fail(ErrorCode::kBadHead, line,
           fmt::format("head {} out of range for sentence of length {}",
                       *t.head, s.tokens.size()));
    }
    if (*t.head == t.id) {
      Fail(ErrorCode::kBadHead, line,
           fmt::format("token {} is its own head", t.id));
    }
    if (*t.head == 0 && ++roots > 1) {
      Fail(ErrorCode::kBadHead, line, "more than one root in sentence");
    }
  }
}

Token ParseTokenLine(std::string_view line, size_t line_no, int expected_id) {
  std::vector<std::string> fields = Split(line, '\t');
  if (fields.size() != kColumns) {
    Fail(ErrorCode::kMalformedLine, line_no,
         fmt::format("expected {} tab-separated columns, found {}", kColumns,
                     fields.size()));
  }
  const std::string &id_field = fields[0];
  if (id_field.find('-') != std::string::npos ||
      id_field.find('.') != std::string::npos) {
    Fail(ErrorCode::kRangeTokenUnsupported, line_no,
         "multiword-token and empty-node ids are not supported: '" +
             id_field + "'");
  }
  std::optional<long long> id = ParseNonNegative(id_field);
  if (!id || *id < 1 || *id > INT_MAX) {
    Fail(ErrorCode::kMalformedLine, line_no, "bad token id '" + id_field + "'");
  }
  if (*id != expected_id) {
    Fail(ErrorCode::kNonConsecutiveIds, line_no,
         fmt::format("expected id {}, found {}", expected_id, *id));
  }
  for (int i = 1; i < kColumns; ++i) {
    if (fields[i].empty()) {
      Fail(ErrorCode::kMalformedLine, line_no,
           fmt::format("empty column {}", i + 1));
    }
  }

  Token token;
  token.id = static_cast<int>(*id);
  token.form = std::move(fields[1]);
  token.lemma = std::move(fields[2]);
  token.upos = std::move(fields[3]);
  token.xpos = std::move(fields[4]);
  token.feats = std::move(fields[5]);
  if (fields[6] != kAbsent) {
    std::optional<long long> head = ParseNonNegative(fields[6]);
    if (!head || *head > INT_MAX) {
      Fail(ErrorCode::kBadHead, line_no, "bad head '" + fields[6] + "'");
    }
    token.head = static_cast<int>(*head);
  }
  token.deprel = std::move(fields[7]);
  token.deps = std::move(fields[8]);
  token.misc = std::move(fields[9]);
  return token;
}

}  // namespace

bool MiscHas(std::string_view misc, std::string_view item) {
  for (const std::string &part : Split(misc, '|')) {
    if (part == item) return true;
  }
  return false;
}

Document ParseConllu(std::string_view input, std::string doc_id) {
  if (input.substr(0, 3) == "\xEF\xBB\xBF") input.remove_prefix(3);

  Document doc;
  doc.doc_id = std::move(doc_id);
  std::set<std::string> sent_ids;
  PendingSentence pending;

  auto flush = [&](size_t line_no) {
    if (pending.empty()) return;
    Sentence &s = pending.sentence;
    if (s.tokens.empty()) {
      Fail(ErrorCode::kMalformedLine, line_no,
           "comment block without token lines");
    }
    if (pending.declared_length &&
        *pending.declared_length != static_cast<long long>(s.tokens.size())) {
      Fail(ErrorCode::kInvariantViolation, pending.first_line,
           fmt::format("length comment says {} but sentence has {} tokens",
                       *pending.declared_length, s.tokens.size()));
    }
    CheckHeads(pending);
    if (!s.sent_id.empty() && !sent_ids.insert(s.sent_id).second) {
      Fail(ErrorCode::kInvariantViolation, pending.first_line,
           "duplicate sent_id '" + s.sent_id + "'");
    }
    doc.sentences.push_back(std::move(s));
    pending = PendingSentence();
  };

  std::vector<std::string_view> lines = SplitLines(input);
  for (size_t i = 0; i < lines.size(); ++i) {
    const size_t line_no = i + 1;
    std::string_view line = lines[i];
    if (IsBlank(line)) {
      flush(line_no);
      continue;
    }
    if (pending.empty()) pending.first_line = line_no;

    if (line.front() == '#') {
      if (!pending.sentence.tokens.empty()) {
        Fail(ErrorCode::kMalformedLine, line_no,
             "comment line after token lines");
      }
      std::string_view body = line.substr(1);
      std::string_view value;
      switch (ClassifyComment(body, &value)) {
        case CommentKey::kSentId:
          if (pending.seen_sent_id) {
            Fail(ErrorCode::kMalformedLine, line_no, "duplicate sent_id comment");
          }
          pending.seen_sent_id = true;
          pending.sentence.sent_id = std::string(value);
          break;
        case CommentKey::kText:
          if (pending.seen_text) {
            Fail(ErrorCode::kMalformedLine, line_no, "duplicate text comment");
          }
          pending.seen_text = true;
          pending.sentence.text = std::string(value);
          break;
        case CommentKey::kLength: {
          if (pending.declared_length) {
            Fail(ErrorCode::kMalformedLine, line_no, "duplicate length comment");
          }
          std::optional<long long> n = ParseNonNegative(value);
          if (!n) {
            Fail(ErrorCode::kMalformedLine, line_no,
                 "length comment is not a number");
          }
          pending.declared_length = n;
          break;
        }
        case CommentKey::kNone:
          pending.sentence.extra_comments.emplace_back(body);
          break;
      }
      continue;
    }

    int expected = static_cast<int>(pending.sentence.tokens.size()) + 1;
    pending.sentence.tokens.push_back(ParseTokenLine(line, line_no, expected));
    pending.token_lines.push_back(line_no);
  }
  flush(lines.size() + 1);
  return doc;
}

void ValidateSentence(const Sentence &s) {
  auto fail = [&](const std::string &what) {
    throw Error(ErrorCode::kInvariantViolation,
                fmt::format("sentence '{}': {}", s.sent_id, what));
  };
  if (s.tokens.empty()) fail("sentence has no tokens");
  for (const std::string *meta : {&s.sent_id, &s.text}) {
    if (HasLineBreak(*meta) || Trim(*meta) != *meta) {
      fail("comment value has line breaks or surrounding whitespace");
    }
  }
  for (const std::string &extra : s.extra_comments) {
    std::string_view value;
    if (HasLineBreak(extra) || ClassifyComment(extra, &value) != CommentKey::kNone) {
      fail("extra comment '" + extra + "' would not read back as opaque");
    }
  }
  int roots = 0;
  const int n = static_cast<int>(s.tokens.size());
  for (int i = 0; i < n; ++i) {
    const Token &t = s.tokens[i];
    if (t.id != i + 1) fail(fmt::format("token {} has id {}", i + 1, t.id));
    for (const std::string *field :
         {&t.form, &t.lemma, &t.upos, &t.xpos, &t.feats, &t.deprel, &t.deps,
          &t.misc}) {
      if (field->empty() || field->find('\t') != std::string::npos ||
          HasLineBreak(*field)) {
        fail(fmt::format("token {} has an empty field or one containing a tab "
                         "or line break",
                         t.id));
      }
    }
    if (t.head) {
      if (*t.head < 0 || *t.head > n || *t.head == t.id) {
        fail(fmt::format("token {} has bad head {}", t.id, *t.head));
      }
      if (*t.head == 0) ++roots;
    }
  }
  if (roots > 1) fail("more than one root");
}

std::string SerializeConllu(const Document &doc) {
  std::set<std::string_view> sent_ids;
  std::string out;
  for (const Sentence &s : doc.sentences) {
    ValidateSentence(s);
    if (!s.sent_id.empty() && !sent_ids.insert(s.sent_id).second) {
      throw Error(ErrorCode::kInvariantViolation,
                  "duplicate sent_id '" + s.sent_id + "'");
    }
    if (!s.sent_id.empty()) out += "# sent_id = " + s.sent_id + "\n";
    if (!s.text.empty()) out += "# text = " + s.text + "\n";
    out += fmt::format("# length = {}\n", s.tokens.size());
    for (const std::string &extra : s.extra_comments) out += "#" + extra + "\n";
    for (const Token &t : s.tokens) {
      out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", t.id,
                         t.form, t.lemma, t.upos, t.xpos, t.feats,
                         t.head ? std::to_string(*t.head) : std::string(kAbsent),
                         t.deprel, t.deps, t.misc);
    }
    out += "\n";
  }
  return out;
}

}  // namespace glossforge
