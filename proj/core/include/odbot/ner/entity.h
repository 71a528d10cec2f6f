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

#ifndef ODBOT_NER_ENTITY_H_
#define ODBOT_NER_ENTITY_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "odbot/ner/bio.h"

namespace odbot::ner {

enum class Extractor : std::uint8_t { kCrf, kGazetteer };

std::string_view ExtractorName(Extractor extractor);

// A typed span of the user message. `surface` is text[start, end).
struct EntityMention {
  EntityType type = EntityType::kTopic;
  std::string surface;
  std::size_t start = 0;
  std::size_t end = 0;
  Extractor extractor = Extractor::kCrf;
  double confidence = 0.0;

  bool operator==(const EntityMention&) const = default;
};

}  // namespace odbot::ner

#endif  // ODBOT_NER_ENTITY_H_
