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

#include "odbot/ner/bio.h"

namespace odbot::ner {
namespace {

constexpr std::array<std::string_view, kNumLabels> kLabelNames = {
    "O", "B-topic", "I-topic", "B-location", "I-location"};

}  // namespace

std::string_view LabelName(BioLabel label) { return kLabelNames[Index(label)]; }

std::optional<BioLabel> ParseLabel(std::string_view name) {
  for (BioLabel label : kAllLabels) {
    if (kLabelNames[Index(label)] == name) return label;
  }
  return std::nullopt;
}

std::string_view EntityTypeName(EntityType type) {
  return type == EntityType::kTopic ? "topic" : "location";
}

std::optional<EntityType> ParseEntityType(std::string_view name) {
  if (name == "topic") return EntityType::kTopic;
  if (name == "location") return EntityType::kLocation;
  return std::nullopt;
}

bool IsValidSequence(std::span<const BioLabel> labels) {
  for (std::size_t t = 1; t < labels.size(); ++t) {
    if (!IsAllowedTransition(labels[t - 1], labels[t])) return false;
  }
  return true;
}

std::vector<LabelSpan> CollapseSpans(std::span<const BioLabel> labels) {
  std::vector<LabelSpan> spans;
  bool open = false;
  for (std::size_t t = 0; t < labels.size(); ++t) {
    BioLabel label = labels[t];
    if (label == BioLabel::kOutside) {
      open = false;
      continue;
    }
    EntityType type = (label == BioLabel::kBeginTopic ||
                       label == BioLabel::kInsideTopic)
                          ? EntityType::kTopic
                          : EntityType::kLocation;
    bool inside = label == InsideLabel(type);
    if (inside && open && spans.back().type == type) {
      spans.back().last_token = t;
    } else {
      spans.push_back({type, t, t});
      open = true;
    }
  }
  return spans;
}

}  // namespace odbot::ner
