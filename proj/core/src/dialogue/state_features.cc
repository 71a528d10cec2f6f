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

#include "odbot/dialogue/state_features.h"

namespace odbot::dialogue {

StateVector FeaturizeState(const Tracker& tracker) {
  namespace L = state_layout;
  StateVector v(kStateSize, 0.0);
  if (!tracker.has_user_turn()) {
    v[L::kNoIntent] = 1.0;
  } else if (!tracker.latest_intent()) {
    v[L::kLowConfidence] = 1.0;
  } else {
    v[L::kIntent + intent::Index(*tracker.latest_intent())] = 1.0;
  }
  const Slots& slots = tracker.slots();
  if (slots.topic) v[L::kTopicFilled] = 1.0;
  if (slots.location) v[L::kLocationFilled] = 1.0;
  if (!slots.mode) {
    v[L::kMode] = 1.0;
  } else {
    v[L::kMode + (*slots.mode == Mode::kSearch ? 1 : 2)] = 1.0;
  }
  if (auto previous = tracker.previous_action()) {
    v[L::kPreviousAction + Index(*previous)] = 1.0;
  } else {
    v[L::kNoPreviousAction] = 1.0;
  }
  if (!tracker.results().empty()) v[L::kResultsPresent] = 1.0;
  return v;
}

}  // namespace odbot::dialogue
