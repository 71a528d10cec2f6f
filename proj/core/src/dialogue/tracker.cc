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

#include "odbot/dialogue/tracker.h"

#include <stdexcept>
#include <type_traits>

#include "odbot/text/tokenizer.h"

namespace odbot::dialogue {

std::string_view ModeName(Mode mode) {
  return mode == Mode::kSearch ? "search" : "explore";
}

TimePoint EventTime(const Event& event) {
  return std::visit([](const auto& e) { return e.time; }, event);
}

Tracker::Tracker(std::string session_id) : session_id_(std::move(session_id)) {
  if (session_id_.empty()) {
    throw std::invalid_argument("session id must not be empty");
  }
}

bool Tracker::last_event_is_user() const {
  return !events_.empty() && std::holds_alternative<UserEvent>(events_.back());
}

void Tracker::Apply(Event event) {
  if (!events_.empty()) {
    TimePoint floor = EventTime(events_.back());
    std::visit(
        [&](auto& e) {
          if (e.time < floor) e.time = floor;
        },
        event);
  }
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, UserEvent>) {
          has_user_turn_ = true;
          latest_intent_ = e.intent;
          results_.clear();
          for (const auto& mention : e.entities) {
            auto value = text::Lowercase(mention.surface);
            if (mention.type == ner::EntityType::kTopic) {
              slots_.topic = std::move(value);
            } else {
              slots_.location = std::move(value);
            }
          }
          if (e.intent == intent::Intent::kSearch) slots_.mode = Mode::kSearch;
          if (e.intent == intent::Intent::kExplore) slots_.mode = Mode::kExplore;
          for (const auto& [name, value] : e.slot_writes) {
            if (name == "topic") slots_.topic = text::Lowercase(value);
            if (name == "location") slots_.location = text::Lowercase(value);
          }
        } else if constexpr (std::is_same_v<T, ActionEvent>) {
          previous_action_ = e.action;
        } else if constexpr (std::is_same_v<T, ResultsEvent>) {
          results_ = e.results;
        }
      },
      event);
  events_.push_back(std::move(event));
}

bool IsKnownSlot(std::string_view name) {
  return name == "topic" || name == "location";
}

bool UpdateTracker(Tracker& tracker, std::string text,
                   std::optional<intent::Intent> intent,
                   std::vector<ner::EntityMention> entities,
                   std::map<std::string, std::string> slot_writes,
                   TimePoint time) {
  for (const auto& [name, value] : slot_writes) {
    if (!IsKnownSlot(name)) {
      tracker.Apply(ErrorEvent{"unknown slot '" + name + "'", time});
      return false;
    }
  }
  tracker.Apply(UserEvent{std::move(text), intent, std::move(entities),
                          std::move(slot_writes), time});
  return true;
}

Tracker Replay(std::string session_id, std::span<const Event> events) {
  Tracker tracker(std::move(session_id));
  for (const auto& event : events) tracker.Apply(event);
  return tracker;
}

}  // namespace odbot::dialogue
