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

// String, file and digest helpers shared by every module.

#ifndef GLOSSFORGE_UTIL_H_
#define GLOSSFORGE_UTIL_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace glossforge {

inline bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}
inline bool IsAsciiDigit(char c) { return c >= '0' && c <= '9'; }
inline bool IsAsciiUpper(char c) { return c >= 'A' && c <= 'Z'; }
inline bool IsAsciiAlnum(char c) {
  return IsAsciiDigit(c) || (c >= 'a' && c <= 'z') || IsAsciiUpper(c);
}

std::string_view Trim(std::string_view s);
std::string ToLowerAscii(std::string_view s);

// Splits on every occurrence of `sep`; "a\t\tb" yields three fields.
std::vector<std::string> Split(std::string_view s, char sep);
std::string Join(const std::vector<std::string> &parts, std::string_view sep);

// Splits text into lines, accepting LF and CRLF. A trailing newline does not
// produce a final empty line.
std::vector<std::string_view> SplitLines(std::string_view text);

// Parses a non-negative decimal integer with no sign, spaces or leading '+'.
std::optional<long long> ParseNonNegative(std::string_view s);

// Lowercase, apostrophes dropped, every other non-alphanumeric run becomes a
// single underscore: "my professor's pet lemma" -> "my_professors_pet_lemma".
std::string Slugify(std::string_view s);

// Minimal HTML escaping for text and attribute values.
std::string HtmlEscape(std::string_view s);

// Percent-encodes everything but ASCII alphanumerics and "-._~"; spaces
// become '+'.
std::string UrlEncodeComponent(std::string_view s);

// Hex SHA-256 of `data`.
std::string Sha256Hex(std::string_view data);

// Reads a whole file. Throws Error(kUnreadableFile) naming the path.
std::string ReadFile(const std::filesystem::path &path);

// Writes through a sibling temporary file and renames it into place, so a
// failed write never leaves a partial file. Throws Error(kIoFailure).
void WriteFileAtomic(const std::filesystem::path &path, std::string_view data);

}  // namespace glossforge

#endif  // GLOSSFORGE_UTIL_H_
