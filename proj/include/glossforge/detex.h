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

// Detextor: sentence splitting and tokenization of mathematical English in
// which every dollar-delimited formula is kept as a single token.
//
// Typical use:
//
//   std::string padded = PadDelimiters(raw);
//   TokenizedText t = Tokenize({padded, MathMode::kStrict}, abbreviations);
//   Document doc = EmitSkeleton("abstract-17", t);
//
// No LaTeX command is expanded or interpreted. `\[ \]` and `\( \)` are left
// as literal text and reported as warnings.

#ifndef GLOSSFORGE_DETEX_H_
#define GLOSSFORGE_DETEX_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "glossforge/conllu.h"

namespace glossforge {

enum class MathMode { kStrict, kLenient };

struct RawText {
  std::string text;
  MathMode mode = MathMode::kStrict;
};

// A formula: [start, end) byte offsets into the tokenized text; `content`
// includes both delimiters ("$...$" or "$$...$$").
struct MathSpan {
  size_t start = 0;
  size_t end = 0;
  std::string content;
  bool display = false;
};

struct DetexToken {
  std::string form;
  bool is_math = false;
  bool space_after = true;  // followed by whitespace (or end) in the source
  size_t start = 0;         // byte offsets into the tokenized text
  size_t end = 0;
};

struct TokenizedSentence {
  std::vector<DetexToken> tokens;

  // Token forms joined by single spaces, respecting space_after.
  std::string Text() const;
};

struct TokenizedText {
  std::vector<TokenizedSentence> sentences;
  std::vector<std::string> warnings;
};

// Case-insensitive set of tokens such as "e.g." that end in a period without
// ending a sentence.
class AbbreviationList {
 public:
  AbbreviationList() = default;
  explicit AbbreviationList(const std::vector<std::string> &entries);

  // One abbreviation per line; blank lines and '#' comments are ignored.
  static AbbreviationList Parse(std::string_view data);
  // The list shipped in data/abbreviations.txt.
  static const AbbreviationList &Default();

  bool Contains(std::string_view token) const;
  size_t size() const { return entries_.size(); }

 private:
  std::set<std::string> entries_;
};

// Surrounds every `$` (a `$$` pair counts as one delimiter) and every hyphen
// between two word characters with single spaces, except where a side is
// already whitespace or the start/end of the text. Idempotent.
std::string PadDelimiters(std::string_view text);

// Finds formula spans. In strict mode an unmatched delimiter (including an odd
// number of `$`) throws kUnbalancedMath; in lenient mode it is skipped and a
// warning is appended to `warnings` (may be null).
std::vector<MathSpan> ScanMathSpans(std::string_view text, MathMode mode,
                                    std::vector<std::string> *warnings);

// Splits into sentences and tokens. Outside formulas tokens are
// whitespace-separated units, with trailing . , ; : ! ? split off unless the
// unit is an abbreviation. A sentence ends at a `.`, `!` or `?` token that is
// last, or is followed by whitespace and a token beginning with an uppercase
// letter, a digit or `$`.
TokenizedText Tokenize(const RawText &text,
                       const AbbreviationList &abbreviations =
                           AbbreviationList::Default());

// Builds a CoNLL-U skeleton: FORM filled, annotation columns "_", sent_ids
// "<doc_id>-<n>", formula tokens marked MathSpan=Yes in MISC.
Document EmitSkeleton(const std::string &doc_id, const TokenizedText &text);

}  // namespace glossforge

#endif  // GLOSSFORGE_DETEX_H_
