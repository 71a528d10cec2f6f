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

#include "odbot/text/tokenizer.h"

namespace odbot::text {
namespace {

bool IsSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsWordByte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c >= 0x80;
}

}  // namespace

std::string Lowercase(std::string_view text) {
  std::string out(text);
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto c = static_cast<unsigned char>(out[i]);
    if (c >= 'A' && c <= 'Z') {
      out[i] = static_cast<char>(c + ('a' - 'A'));
    } else if (c == 0xC3 && i + 1 < out.size()) {
      // U+00C0..U+00DE are encoded as C3 80..C3 9E; U+00D7 (x) has no case.
      auto next = static_cast<unsigned char>(out[i + 1]);
      if (next >= 0x80 && next <= 0x9E && next != 0x97) {
        out[i + 1] = static_cast<char>(next + 0x20);
      }
      ++i;
    }
  }
  return out;
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    auto c = static_cast<unsigned char>(text[i]);
    if (IsSpace(c)) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (IsWordByte(c)) {
      while (i < n && IsWordByte(static_cast<unsigned char>(text[i]))) ++i;
    } else {
      ++i;
    }
    Token token;
    token.text = std::string(text.substr(start, i - start));
    token.lower = Lowercase(token.text);
    token.start = start;
    token.end = i;
    tokens.push_back(std::move(token));
  }
  return tokens;
}

std::vector<std::string> LowerTokens(std::string_view text) {
  std::vector<std::string> out;
  for (auto& token : Tokenize(text)) out.push_back(std::move(token.lower));
  return out;
}

bool IsWordToken(const Token& token) {
  for (char c : token.text) {
    if (IsWordByte(static_cast<unsigned char>(c))) return true;
  }
  return false;
}

}  // namespace odbot::text
