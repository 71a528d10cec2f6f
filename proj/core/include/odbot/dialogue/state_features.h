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

#ifndef ODBOT_DIALOGUE_STATE_FEATURES_H_
#define ODBOT_DIALOGUE_STATE_FEATURES_H_

#include <cstddef>
#include <vector>

#include "odbot/dialogue/tracker.h"

namespace odbot::dialogue {

// Binary state vector consumed by the policy. Layout version 1:
//
//   [ 0,  9)  last user intent, one-hot in canonical intent order
//   [ 9]      no user turn yet
//   [10]      last user turn was below the confidence threshold
//   [11]      topic slot filled
//   [12]      location slot filled
//   [13, 16)  mode: none, search, explore
//   [16, 28)  previous bot action, one-hot in action order
//   [28]      no previous bot action
//   [29]      search results present
//
// Any change to this layout must bump kStateLayoutVersion.
inline constexpr int kStateLayoutVersion = 1;
inline constexpr std::size_t kStateSize = 30;

namespace state_layout {
inline constexpr std::size_t kIntent = 0;
inline constexpr std::size_t kNoIntent = 9;
inline constexpr std::size_t kLowConfidence = 10;
inline constexpr std::size_t kTopicFilled = 11;
inline constexpr std::size_t kLocationFilled = 12;
inline constexpr std::size_t kMode = 13;
inline constexpr std::size_t kPreviousAction = 16;
inline constexpr std::size_t kNoPreviousAction = 28;
inline constexpr std::size_t kResultsPresent = 29;
}  // namespace state_layout

using StateVector = std::vector<double>;

StateVector FeaturizeState(const Tracker& tracker);

}  // namespace odbot::dialogue

#endif  // ODBOT_DIALOGUE_STATE_FEATURES_H_
