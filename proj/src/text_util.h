// Copyright 2026 The mrref Authors.
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

// Line and field helpers shared by the text readers. Internal header.

#ifndef MRREF_SRC_TEXT_UTIL_H_
#define MRREF_SRC_TEXT_UTIL_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mrref::text {

std::string_view Trim(std::string_view s);

// Splits on `sep`, trimming each piece. Empty input yields no pieces.
std::vector<std::string> Split(std::string_view s, char sep);

// Splits a record into whitespace-separated fields. A field may contain a
// double-quoted section (`surface="a b"`) with `\"` and `\\` escapes; the
// quotes are removed and escapes resolved. Returns nullopt on an
// unterminated quote.
std::optional<std::vector<std::string>> SplitFields(std::string_view line);

std::string Quote(std::string_view s);

std::optional<std::size_t> ParseSize(std::string_view s);
std::optional<double> ParseDouble(std::string_view s);

// Shortest text that parses back to exactly `value`.
std::string FormatDouble(double value);

// Fixed two-decimal rendering used by reports.
std::string FormatFixed2(double value);

// Iterates over lines with 1-based numbers, skipping blanks and `#` comments.
template <typename Fn>
void ForEachRecord(std::string_view text, Fn &&fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
    ++line_no;
    line = Trim(line);
    if (line.empty() || line.front() == '#') continue;
    fn(line_no, line);
  }
}

}  // namespace mrref::text

#endif  // MRREF_SRC_TEXT_UTIL_H_
