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

// CoNLL-U data model, reader and writer.
//
// The supported subset is plain word lines with consecutive integer ids.
// Multiword-token ranges ("1-2") and empty nodes ("1.1") are rejected with
// kRangeTokenUnsupported. Sentence comments `sent_id`, `text` and `length`
// are interpreted (keys matched case-sensitively); any other comment line is
// carried through verbatim.

#ifndef GLOSSFORGE_CONLLU_H_
#define GLOSSFORGE_CONLLU_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace glossforge {

// The absent-value sentinel for every optional column.
inline constexpr std::string_view kAbsent = "_";

struct Token {
  int id = 0;
  std::string form;
  std::string lemma{kAbsent};
  std::string upos{kAbsent};
  std::string xpos{kAbsent};
  std::string feats{kAbsent};
  std::optional<int> head;  // nullopt when the HEAD column is "_"
  std::string deprel{kAbsent};
  std::string deps{kAbsent};
  std::string misc{kAbsent};

  bool operator==(const Token &) const = default;
};

struct Sentence {
  std::string sent_id;
  std::string text;
  // Bodies (everything after '#') of comments other than sent_id/text/length,
  // in input order.
  std::vector<std::string> extra_comments;
  std::vector<Token> tokens;

  size_t length() const { return tokens.size(); }

  bool operator==(const Sentence &) const = default;
};

struct Document {
  std::string doc_id;
  std::vector<Sentence> sentences;

  bool operator==(const Document &) const = default;
};

// True if the '|'-separated MISC column contains `item` (e.g. "MathSpan=Yes").
bool MiscHas(std::string_view misc, std::string_view item);

// Parses CoNLL-U text. Accepts LF and CRLF line endings. Errors carry the
// 1-based line number: kMalformedLine, kBadHead, kNonConsecutiveIds,
// kRangeTokenUnsupported, kInvariantViolation (length comment disagreeing with
// the token count, duplicate sent_id).
Document ParseConllu(std::string_view input, std::string doc_id = "");

// Writes comments in the fixed order sent_id, text, length, then any extra
// comments, then token lines and one blank line per sentence. LF only.
// Throws kInvariantViolation if the document could not be read back equal.
std::string SerializeConllu(const Document &doc);

// Throws kInvariantViolation when `sentence` breaks a Token/Sentence
// invariant.
void ValidateSentence(const Sentence &sentence);

}  // namespace glossforge

#endif  // GLOSSFORGE_CONLLU_H_
