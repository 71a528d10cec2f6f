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

#ifndef ODBOT_NER_BIO_H_
#define ODBOT_NER_BIO_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace odbot::ner {

// Declaration order is the Viterbi tie-break order.
enum class BioLabel : std::uint8_t {
  kOutside = 0,
  kBeginTopic,
  kInsideTopic,
  kBeginLocation,
  kInsideLocation,
};

inline constexpr std::size_t kNumLabels = 5;

inline constexpr std::array<BioLabel, kNumLabels> kAllLabels = {
    BioLabel::kOutside, BioLabel::kBeginTopic, BioLabel::kInsideTopic,
    BioLabel::kBeginLocation, BioLabel::kInsideLocation};

constexpr std::size_t Index(BioLabel label) {
  return static_cast<std::size_t>(label);
}

enum class EntityType : std::uint8_t { kTopic, kLocation };

std::string_view LabelName(BioLabel label);
std::optional<BioLabel> ParseLabel(std::string_view name);
std::string_view EntityTypeName(EntityType type);
std::optional<EntityType> ParseEntityType(std::string_view name);

constexpr BioLabel BeginLabel(EntityType type) {
  return type == EntityType::kTopic ? BioLabel::kBeginTopic
                                    : BioLabel::kBeginLocation;
}
constexpr BioLabel InsideLabel(EntityType type) {
  return type == EntityType::kTopic ? BioLabel::kInsideTopic
                                    : BioLabel::kInsideLocation;
}

// I-X may only follow B-X or I-X. The first position is unconstrained.
constexpr bool IsAllowedTransition(BioLabel from, BioLabel to) {
  switch (to) {
    case BioLabel::kInsideTopic:
      return from == BioLabel::kBeginTopic || from == BioLabel::kInsideTopic;
    case BioLabel::kInsideLocation:
      return from == BioLabel::kBeginLocation ||
             from == BioLabel::kInsideLocation;
    default:
      return true;
  }
}

bool IsValidSequence(std::span<const BioLabel> labels);

// A labelled token span [first_token, last_token] (inclusive).
struct LabelSpan {
  EntityType type;
  std::size_t first_token;
  std::size_t last_token;
};

// Collapses BIO labels into spans. A stray I-X that does not continue a span
// of the same type opens a new one.
std::vector<LabelSpan> CollapseSpans(std::span<const BioLabel> labels);

}  // namespace odbot::ner

#endif  // ODBOT_NER_BIO_H_
