// Copyright 2026 The odbot Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ODBOT_TEXT_TOKENIZER_H_
#define ODBOT_TEXT_TOKENIZER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace odbot::text {

// A word or punctuation mark with its byte span in the source message.
struct Token {
  std::string text;   // surface form
  std::string lower;  // case-folded surface form
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive

  bool operator==(const Token&) const = default;
};

// Splits on whitespace, then detaches punctuation: every maximal run of
// letters/digits is one token and every other non-space character is a token
// of its own. Bytes >= 0x80 (UTF-8 sequences) count as letters, so umlauts
// stay inside words.
std::vector<Token> Tokenize(std::string_view text);

// Lowercases ASCII and the Latin-1 uppercase block (U+00C0..U+00DE).
std::string Lowercase(std::string_view text);

// Convenience: the lowercased token strings of `text`.
std::vector<std::string> LowerTokens(std::string_view text);

// True if the token contains at least one letter or digit.
bool IsWordToken(const Token& token);

}  // namespace odbot::text

#endif  // ODBOT_TEXT_TOKENIZER_H_
