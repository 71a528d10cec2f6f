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

#include "odbot/dialogue/action.h"

namespace odbot::dialogue {
namespace {

constexpr std::array<std::string_view, kNumActions> kActionNames = {
    "utter_greet",          "utter_ask_mode",
    "utter_ask_topic",      "utter_ask_topic_options",
    "utter_ask_location_options", "utter_confirm_search",
    "utter_no_results",     "utter_anything_else",
    "utter_goodbye",        "utter_youre_welcome",
    "action_search",        "action_listen"};

}  // namespace

std::string_view ActionName(Action action) {
  return kActionNames[Index(action)];
}

std::optional<Action> ParseAction(std::string_view name) {
  for (Action action : kAllActions) {
    if (kActionNames[Index(action)] == name) return action;
  }
  return std::nullopt;
}

}  // namespace odbot::dialogue
