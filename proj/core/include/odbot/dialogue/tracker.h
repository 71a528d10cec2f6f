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

#ifndef ODBOT_DIALOGUE_TRACKER_H_
#define ODBOT_DIALOGUE_TRACKER_H_

#include <chrono>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "odbot/catalog/dataset.h"
#include "odbot/dialogue/action.h"
#include "odbot/intent/intent.h"
#include "odbot/ner/entity.h"

namespace odbot::dialogue {

using Clock = std::chrono::system_clock;
using TimePoint = Clock::time_point;

enum class Mode : std::uint8_t { kSearch, kExplore };

std::string_view ModeName(Mode mode);

struct Slots {
  std::optional<std::string> topic;
  std::optional<std::string> location;
  std::optional<Mode> mode;

  bool operator==(const Slots&) const = default;
};

// A user turn. An empty `intent` is the low-confidence signal: the
// classifier's best guess fell below the configured threshold.
struct UserEvent {
  std::string text;
  std::optional<intent::Intent> intent;
  std::vector<ner::EntityMention> entities;
  std::map<std::string, std::string> slot_writes;
  TimePoint time;
};

struct ActionEvent {
  Action action;
  TimePoint time;
};

// Datasets returned by action_search, kept until the next user turn.
struct ResultsEvent {
  std::vector<catalog::DatasetRecord> results;
  TimePoint time;
};

// A rejected user turn (bad payload, unknown slot). Changes no state.
struct ErrorEvent {
  std::string message;
  TimePoint time;
};

using Event = std::variant<UserEvent, ActionEvent, ResultsEvent, ErrorEvent>;

TimePoint EventTime(const Event& event);

// Per-session dialogue state derived entirely from an append-only event log.
class Tracker {
 public:
  // Throws std::invalid_argument for an empty id.
  explicit Tracker(std::string session_id);

  const std::string& session_id() const { return session_id_; }
  const Slots& slots() const { return slots_; }
  const std::vector<Event>& events() const { return events_; }

  // action_listen until a bot action has run.
  Action last_action() const { return previous_action_.value_or(Action::kActionListen); }
  // Empty before the first bot action.
  const std::optional<Action>& previous_action() const { return previous_action_; }

  bool has_user_turn() const { return has_user_turn_; }
  // Only meaningful when has_user_turn(); empty means low confidence.
  const std::optional<intent::Intent>& latest_intent() const { return latest_intent_; }
  const std::vector<catalog::DatasetRecord>& results() const { return results_; }
  bool last_event_is_user() const;

  // Appends `event` and folds it into the state. Timestamps earlier than the
  // last event are raised to keep the log time-ordered.
  void Apply(Event event);

 private:
  std::string session_id_;
  Slots slots_;
  std::vector<Event> events_;
  std::optional<Action> previous_action_;
  bool has_user_turn_ = false;
  std::optional<intent::Intent> latest_intent_;
  std::vector<catalog::DatasetRecord> results_;
};

// Slot names accepted in payloads.
bool IsKnownSlot(std::string_view name);

// Records a user turn. Topic mentions write the topic slot and location
// mentions the location slot (last one wins), intents search/explore set the
// mode, and payload slot writes override entity writes. An unknown slot name
// appends an ErrorEvent instead and returns false.
bool UpdateTracker(Tracker& tracker, std::string text,
                   std::optional<intent::Intent> intent,
                   std::vector<ner::EntityMention> entities,
                   std::map<std::string, std::string> slot_writes,
                   TimePoint time);

// Rebuilds a tracker by applying `events` in order to a fresh one.
Tracker Replay(std::string session_id, std::span<const Event> events);

}  // namespace odbot::dialogue

#endif  // ODBOT_DIALOGUE_TRACKER_H_
