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

#include "odbot/ner/gazetteer.h"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace odbot::ner {

std::string_view ExtractorName(Extractor extractor) {
  return extractor == Extractor::kCrf ? "crf" : "gazetteer";
}

Gazetteer Gazetteer::FromFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read gazetteer file: " + path.string());
  }
  Gazetteer gazetteer;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    gazetteer.Add(line);
  }
  return gazetteer;
}

Gazetteer Gazetteer::FromNames(std::span<const std::string> names) {
  Gazetteer gazetteer;
  for (const auto& name : names) gazetteer.Add(name);
  return gazetteer;
}

void Gazetteer::Add(std::string_view name) {
  auto tokens = text::LowerTokens(name);
  if (tokens.empty()) return;
  max_length_ = std::max(max_length_, tokens.size());
  entries_.insert(std::move(tokens));
}

bool Gazetteer::Contains(std::span<const std::string> lowered_tokens) const {
  return entries_.contains(
      std::vector<std::string>(lowered_tokens.begin(), lowered_tokens.end()));
}

std::vector<EntityMention> Gazetteer::Lookup(
    std::string_view text, std::span<const text::Token> tokens) const {
  std::vector<EntityMention> mentions;
  std::vector<std::string> window;
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t longest = std::min(max_length_, tokens.size() - i);
    std::size_t matched = 0;
    for (std::size_t len = longest; len >= 1; --len) {
      window.clear();
      for (std::size_t k = 0; k < len; ++k) window.push_back(tokens[i + k].lower);
      if (entries_.contains(window)) {
        matched = len;
        break;
      }
    }
    if (matched == 0) {
      ++i;
      continue;
    }
    EntityMention mention;
    mention.type = EntityType::kLocation;
    mention.start = tokens[i].start;
    mention.end = tokens[i + matched - 1].end;
    mention.surface = std::string(text.substr(mention.start, mention.end - mention.start));
    mention.extractor = Extractor::kGazetteer;
    mention.confidence = 1.0;
    mentions.push_back(std::move(mention));
    i += matched;
  }
  return mentions;
}

}  // namespace odbot::ner
