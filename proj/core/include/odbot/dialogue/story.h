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

#ifndef ODBOT_DIALOGUE_STORY_H_
#define ODBOT_DIALOGUE_STORY_H_

#include <filesystem>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "odbot/dialogue/action.h"
#include "odbot/dialogue/state_features.h"
#include "odbot/intent/intent.h"
#include "odbot/ner/bio.h"

namespace odbot::dialogue {

struct UserStep {
  intent::Intent intent;
  std::vector<std::pair<ner::EntityType, std::string>> entities;
  std::map<std::string, std::string> slots;
};

struct BotStep {
  Action action;
  // Only for action_search: whether the search found anything.
  bool found_results = true;
};

using StoryStep = std::variant<UserStep, BotStep>;

// A hand-written example conversation. Each run of bot steps is implicitly
// closed by action_listen.
struct Story {
  std::string name;
  std::vector<StoryStep> steps;
};

class StoryError : public std::invalid_argument {
 public:
  StoryError(std::string story, const std::string& what)
      : std::invalid_argument("story '" + story + "': " + what),
        story_(std::move(story)) {}
  const std::string& story() const { return story_; }

 private:
  std::string story_;
};

// Parses the stories document:
//
//   stories:
//     - story: <name>
//       steps:
//         - intent: add_keyword
//           entities: [{topic: schools}]
//           slots: {location: graz}
//         - action: action_search
//           results: false
//
// Throws StoryError naming the story for unknown intents, actions or slots,
// and std::runtime_error for YAML syntax errors.
std::vector<Story> ParseStories(std::string_view yaml);
std::vector<Story> LoadStories(const std::filesystem::path& path);

// Structural checks: starts with a user step, no explicit action_listen.
void ValidateStory(const Story& story);

// One supervised example: the state before the bot acted and the gold action.
struct TrainingPair {
  StateVector state;
  Action action;
  std::string story;
  std::size_t step;  // index into Story::steps, or steps.size() for the final listen
};

// Replays every story through a Tracker and records (state, next action)
// pairs, including the implicit action_listen after each bot run.
std::vector<TrainingPair> UnrollStories(std::span<const Story> stories);

}  // namespace odbot::dialogue

#endif  // ODBOT_DIALOGUE_STORY_H_
