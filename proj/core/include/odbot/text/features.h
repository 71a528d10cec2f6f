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

#ifndef ODBOT_TEXT_FEATURES_H_
#define ODBOT_TEXT_FEATURES_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "odbot/text/tokenizer.h"

namespace odbot::text {

// Binary indicator features for one token position. Every listed feature has
// value 1.0; names are sorted so the set compares byte-for-byte.
struct TokenFeatures {
  std::vector<std::string> names;

  bool operator==(const TokenFeatures&) const = default;
};

// Expands the fixed CRF template set at `position`:
//   w0=<lower>  suf2=  suf3=  pre2=  title=1  digit=1
//   w-1=<lower> w+1=<lower>  BOS=1  EOS=1
// Affixes count code points and are only emitted when the word is long
// enough. Throws std::out_of_range if `position` is not a valid index.
TokenFeatures CrfFeatures(std::span<const Token> tokens, std::size_t position);

// Registry mapping n-gram strings to dense feature ids.
class Vocabulary {
 public:
  std::optional<int> Find(std::string_view ngram) const;
  int Intern(const std::string& ngram);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::unordered_map<std::string, int> ids_;
  std::vector<std::string> names_;
};

// Sparse bag of n-gram counts keyed by vocabulary id.
using MessageVector = std::map<int, double>;

// Unigram and bigram counts over the lowercased tokens of `text`. With
// `frozen` unknown n-grams are dropped; otherwise they are interned.
MessageVector BuildMessageVector(std::string_view text, Vocabulary& vocabulary,
                                 bool frozen);

// Inference-only overload; never mutates the registry.
MessageVector BuildMessageVector(std::string_view text,
                                 const Vocabulary& vocabulary);

}  // namespace odbot::text

#endif  // ODBOT_TEXT_FEATURES_H_
