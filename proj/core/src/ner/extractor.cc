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

#include "odbot/ner/extractor.h"

#include <algorithm>
#include <cmath>

namespace odbot::ner {

std::vector<EntityMention> CrfMentions(const CrfModel& model,
                                       std::string_view text,
                                       std::span<const text::Token> tokens) {
  if (tokens.empty()) return {};
  auto labels = ViterbiDecode(model, tokens);
  auto spans = CollapseSpans(labels);
  if (spans.empty()) return {};

  double best = PathScore(model, tokens, labels);
  double confidence = std::exp(best - LogPartition(model, tokens));
  confidence = std::clamp(confidence, 0.0, 1.0);

  std::vector<EntityMention> mentions;
  for (const auto& span : spans) {
    EntityMention mention;
    mention.type = span.type;
    mention.start = tokens[span.first_token].start;
    mention.end = tokens[span.last_token].end;
    mention.surface =
        std::string(text.substr(mention.start, mention.end - mention.start));
    mention.extractor = Extractor::kCrf;
    mention.confidence = confidence;
    mentions.push_back(std::move(mention));
  }
  return mentions;
}

std::vector<EntityMention> ExtractEntities(const CrfModel& model,
                                           const Gazetteer& gazetteer,
                                           std::string_view text) {
  auto tokens = text::Tokenize(text);
  auto merged = gazetteer.Lookup(text, tokens);
  const std::size_t num_gazetteer = merged.size();
  for (auto& mention : CrfMentions(model, text, tokens)) {
    bool overlaps = std::any_of(
        merged.begin(), merged.begin() + num_gazetteer,
        [&](const EntityMention& g) {
          return mention.start < g.end && g.start < mention.end;
        });
    if (!overlaps) merged.push_back(std::move(mention));
  }
  std::sort(merged.begin(), merged.end(),
            [](const EntityMention& a, const EntityMention& b) {
              return a.start < b.start;
            });
  return merged;
}

}  // namespace odbot::ner
