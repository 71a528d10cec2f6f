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

#include "odbot/text/features.h"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace odbot::text {
namespace {

// Byte offsets of each code point start in a UTF-8 string.
std::vector<std::size_t> CodePointStarts(std::string_view s) {
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto c = static_cast<unsigned char>(s[i]);
    if ((c & 0xC0) != 0x80) starts.push_back(i);
  }
  return starts;
}

bool IsUpper(unsigned char c) { return c >= 'A' && c <= 'Z'; }

bool IsTitlecase(std::string_view s) {
  if (s.empty()) return false;
  auto first = static_cast<unsigned char>(s[0]);
  bool upper_first =
      IsUpper(first) ||
      (first == 0xC3 && s.size() > 1 &&
       static_cast<unsigned char>(s[1]) >= 0x80 &&
       static_cast<unsigned char>(s[1]) <= 0x9E);
  if (!upper_first) return false;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (IsUpper(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

bool IsDigits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
}

template <typename Fn>
void ForEachNgram(const std::vector<std::string>& words, Fn&& fn) {
  for (std::size_t i = 0; i < words.size(); ++i) {
    fn(words[i]);
    if (i + 1 < words.size()) fn(words[i] + " " + words[i + 1]);
  }
}

}  // namespace

TokenFeatures CrfFeatures(std::span<const Token> tokens,
                          std::size_t position) {
  if (position >= tokens.size()) {
    throw std::out_of_range("CrfFeatures: position " +
                            std::to_string(position) + " out of range");
  }
  const Token& token = tokens[position];
  const std::string& word = token.lower;
  auto starts = CodePointStarts(word);
  const std::size_t length = starts.size();

  TokenFeatures features;
  auto& out = features.names;
  out.push_back("w0=" + word);
  if (length >= 2) {
    out.push_back("suf2=" + word.substr(starts[length - 2]));
    out.push_back("pre2=" + word.substr(0, length > 2 ? starts[2] : word.size()));
  }
  if (length >= 3) out.push_back("suf3=" + word.substr(starts[length - 3]));
  if (IsTitlecase(token.text)) out.push_back("title=1");
  if (IsDigits(token.text)) out.push_back("digit=1");
  if (position == 0) {
    out.push_back("BOS=1");
  } else {
    out.push_back("w-1=" + tokens[position - 1].lower);
  }
  if (position + 1 == tokens.size()) {
    out.push_back("EOS=1");
  } else {
    out.push_back("w+1=" + tokens[position + 1].lower);
  }
  std::sort(out.begin(), out.end());
  return features;
}

std::optional<int> Vocabulary::Find(std::string_view ngram) const {
  auto it = ids_.find(std::string(ngram));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

int Vocabulary::Intern(const std::string& ngram) {
  auto [it, inserted] = ids_.emplace(ngram, static_cast<int>(names_.size()));
  if (inserted) names_.push_back(ngram);
  return it->second;
}

MessageVector BuildMessageVector(std::string_view text, Vocabulary& vocabulary,
                                 bool frozen) {
  if (frozen) return BuildMessageVector(text, std::as_const(vocabulary));
  MessageVector vec;
  ForEachNgram(LowerTokens(text), [&](const std::string& ngram) {
    vec[vocabulary.Intern(ngram)] += 1.0;
  });
  return vec;
}

MessageVector BuildMessageVector(std::string_view text,
                                 const Vocabulary& vocabulary) {
  MessageVector vec;
  ForEachNgram(LowerTokens(text), [&](const std::string& ngram) {
    if (auto id = vocabulary.Find(ngram)) vec[*id] += 1.0;
  });
  return vec;
}

}  // namespace odbot::text
