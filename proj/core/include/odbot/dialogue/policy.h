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

#ifndef ODBOT_DIALOGUE_POLICY_H_
#define ODBOT_DIALOGUE_POLICY_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "odbot/dialogue/action.h"
#include "odbot/dialogue/state_features.h"
#include "odbot/dialogue/story.h"

namespace odbot::dialogue {

// Feedforward network: state -> tanh hidden layer -> softmax over actions.
struct PolicyModel {
  static constexpr std::size_t kHiddenUnits = 16;

  // Row-major [unit][input] and [action][unit].
  std::vector<double> hidden_weights;
  std::vector<double> hidden_bias;
  std::vector<double> output_weights;
  std::vector<double> output_bias;
  std::uint64_t seed = 0;
  int layout_version = kStateLayoutVersion;

  std::array<double, kNumActions> Probabilities(const StateVector& state) const;
  // Argmax with ties going to the earlier action.
  Action BestAction(const StateVector& state) const;
};

struct PolicyTrainingOptions {
  int epochs = 2000;
  double learning_rate = 0.1;
  std::uint64_t seed = 42;
};

class PolicyTrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unrolls the stories and returns the number of distinct dialogue states.
// Throws PolicyTrainingError naming both stories when one state has two gold
// actions, and StoryError for malformed stories.
std::size_t CheckStoryConsistency(std::span<const Story> stories);

// Unrolls the stories, rejects identical states with different gold actions
// (naming both stories), trains with full-batch cross-entropy and fails
// unless every unrolled pair is reproduced.
PolicyModel TrainPolicy(std::span<const Story> stories,
                        const PolicyTrainingOptions& options = {});

// Fraction of unrolled story steps whose gold action is the policy's argmax.
double StoryReplayAccuracy(const PolicyModel& policy,
                           std::span<const Story> stories);

}  // namespace odbot::dialogue

#endif  // ODBOT_DIALOGUE_POLICY_H_
