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

#ifndef ODBOT_DIALOGUE_ACTION_H_
#define ODBOT_DIALOGUE_ACTION_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace odbot::dialogue {

// Ten utterance templates, the catalog search action and the listen control
// action. Declaration order is the argmax tie-break order.
enum class Action : std::uint8_t {
  kUtterGreet = 0,
  kUtterAskMode,
  kUtterAskTopic,
  kUtterAskTopicOptions,
  kUtterAskLocationOptions,
  kUtterConfirmSearch,
  kUtterNoResults,
  kUtterAnythingElse,
  kUtterGoodbye,
  kUtterYoureWelcome,
  kActionSearch,
  kActionListen,
};

inline constexpr std::size_t kNumActions = 12;
inline constexpr std::size_t kNumTemplates = 10;

inline constexpr std::array<Action, kNumActions> kAllActions = {
    Action::kUtterGreet,          Action::kUtterAskMode,
    Action::kUtterAskTopic,       Action::kUtterAskTopicOptions,
    Action::kUtterAskLocationOptions, Action::kUtterConfirmSearch,
    Action::kUtterNoResults,      Action::kUtterAnythingElse,
    Action::kUtterGoodbye,        Action::kUtterYoureWelcome,
    Action::kActionSearch,        Action::kActionListen};

constexpr std::size_t Index(Action action) {
  return static_cast<std::size_t>(action);
}

constexpr bool IsTemplate(Action action) {
  return Index(action) < kNumTemplates;
}

// Actions that ask the user something; low-confidence input re-asks the most
// recent one.
constexpr bool IsQuestion(Action action) {
  return action == Action::kUtterAskMode || action == Action::kUtterAskTopic ||
         action == Action::kUtterAskTopicOptions ||
         action == Action::kUtterAskLocationOptions;
}

std::string_view ActionName(Action action);
std::optional<Action> ParseAction(std::string_view name);

}  // namespace odbot::dialogue

#endif  // ODBOT_DIALOGUE_ACTION_H_
