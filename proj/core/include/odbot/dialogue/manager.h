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

#ifndef ODBOT_DIALOGUE_MANAGER_H_
#define ODBOT_DIALOGUE_MANAGER_H_

#include <cstddef>
#include <vector>

#include "odbot/catalog/index.h"
#include "odbot/dialogue/policy.h"
#include "odbot/dialogue/templates.h"
#include "odbot/dialogue/tracker.h"

namespace odbot::dialogue {

inline constexpr std::size_t kMaxActionsPerTurn = 10;

struct TurnResult {
  std::vector<Action> actions;  // including the closing action_listen
  std::vector<BotResponse> responses;
  bool runaway = false;  // the action limit forced the closing listen
};

// Runs one bot turn after a user event: predicts, executes and logs actions
// until action_listen. If the policy never predicts it, the turn is cut off
// with a forced action_listen as action number kMaxActionsPerTurn.
// action_search queries `index` with the tracker's topic and location and
// stores the hits.
//
// A low-confidence user turn bypasses the policy: the most recent question
// is asked again, prefixed with the clarification message.
//
// Throws std::logic_error unless the tracker's last event is a user turn.
TurnResult SelectActions(const PolicyModel& policy, Tracker& tracker,
                         const catalog::Index& index,
                         const Templates& templates, TimePoint now);

}  // namespace odbot::dialogue

#endif  // ODBOT_DIALOGUE_MANAGER_H_
