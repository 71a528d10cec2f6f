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

#ifndef ODBOT_NER_GAZETTEER_H_
#define ODBOT_NER_GAZETTEER_H_

#include <cstddef>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "odbot/ner/entity.h"
#include "odbot/text/tokenizer.h"

namespace odbot::ner {

// Exact-match list of location names, each stored as its lowercased token
// sequence.
class Gazetteer {
 public:
  Gazetteer() = default;

  // One name per line; '#' comments and blank lines are skipped.
  // Throws std::runtime_error if the file cannot be read.
  static Gazetteer FromFile(const std::filesystem::path& path);
  static Gazetteer FromNames(std::span<const std::string> names);

  // Names that tokenize to nothing are ignored.
  void Add(std::string_view name);

  bool Contains(std::span<const std::string> lowered_tokens) const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  std::size_t max_entry_length() const { return max_length_; }

  // Left-to-right longest-match scan. Matched tokens are consumed, so the
  // returned mentions never overlap.
  std::vector<EntityMention> Lookup(std::string_view text,
                                    std::span<const text::Token> tokens) const;

 private:
  std::set<std::vector<std::string>> entries_;
  std::size_t max_length_ = 0;
};

}  // namespace odbot::ner

#endif  // ODBOT_NER_GAZETTEER_H_
