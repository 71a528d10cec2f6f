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

#include "odbot/dialogue/manager.h"

#include <stdexcept>

#include "odbot/dialogue/state_features.h"

namespace odbot::dialogue {
namespace {

Action LastQuestion(const Tracker& tracker) {
  const auto& events = tracker.events();
  for (auto it = events.rbegin(); it != events.rend(); ++it) {
    if (const auto* e = std::get_if<ActionEvent>(&*it); e && IsQuestion(e->action)) {
      return e->action;
    }
  }
  return Action::kUtterAskMode;
}

}  // namespace

TurnResult SelectActions(const PolicyModel& policy, Tracker& tracker,
                         const catalog::Index& index,
                         const Templates& templates, TimePoint now) {
  if (!tracker.last_event_is_user()) {
    throw std::logic_error("SelectActions needs a pending user turn");
  }
  TurnResult turn;

  if (!tracker.latest_intent()) {
    Action question = LastQuestion(tracker);
    tracker.Apply(ActionEvent{question, now});
    BotResponse response = RenderAction(question, tracker, templates, index);
    response.text = Interpolate(templates.clarify(), tracker.slots()) + " " + response.text;
    turn.actions = {question, Action::kActionListen};
    turn.responses.push_back(std::move(response));
    tracker.Apply(ActionEvent{Action::kActionListen, now});
    return turn;
  }

  while (turn.actions.size() + 1 < kMaxActionsPerTurn) {
    Action action = policy.BestAction(FeaturizeState(tracker));
    tracker.Apply(ActionEvent{action, now});
    turn.actions.push_back(action);
    if (action == Action::kActionListen) return turn;
    if (action == Action::kActionSearch) {
      auto query = catalog::SearchQuery::FromSlots(tracker.slots().topic,
                                                   tracker.slots().location);
      tracker.Apply(ResultsEvent{index.Search(query), now});
    }
    turn.responses.push_back(RenderAction(action, tracker, templates, index));
  }
  // The last slot is reserved for a forced listen so the log stays well formed.
  tracker.Apply(ActionEvent{Action::kActionListen, now});
  turn.actions.push_back(Action::kActionListen);
  turn.runaway = true;
  return turn;
}

}  // namespace odbot::dialogue
