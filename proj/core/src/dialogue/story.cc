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

#include "odbot/dialogue/story.h"

#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "odbot/dialogue/tracker.h"

namespace odbot::dialogue {
namespace {

UserStep ParseUserStep(const std::string& story, const YAML::Node& node) {
  auto name = node["intent"].as<std::string>();
  auto parsed = intent::ParseIntent(name);
  if (!parsed) throw StoryError(story, "unknown intent '" + name + "'");
  UserStep step{*parsed, {}, {}};
  if (auto entities = node["entities"]) {
    for (const auto& entity : entities) {
      for (const auto& kv : entity) {
        auto type_name = kv.first.as<std::string>();
        auto type = ner::ParseEntityType(type_name);
        if (!type) throw StoryError(story, "unknown entity type '" + type_name + "'");
        step.entities.emplace_back(*type, kv.second.as<std::string>());
      }
    }
  }
  if (auto slots = node["slots"]) {
    for (const auto& kv : slots) {
      auto slot = kv.first.as<std::string>();
      if (!IsKnownSlot(slot)) throw StoryError(story, "unknown slot '" + slot + "'");
      step.slots.emplace(slot, kv.second.as<std::string>());
    }
  }
  return step;
}

BotStep ParseBotStep(const std::string& story, const YAML::Node& node) {
  auto name = node["action"].as<std::string>();
  auto action = ParseAction(name);
  if (!action) throw StoryError(story, "unknown action '" + name + "'");
  BotStep step{*action, true};
  if (auto results = node["results"]) {
    if (*action != Action::kActionSearch) {
      throw StoryError(story, "'results' is only valid on action_search");
    }
    step.found_results = results.as<bool>();
  }
  return step;
}

}  // namespace

std::vector<Story> ParseStories(std::string_view yaml) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::Exception& e) {
    throw std::runtime_error(std::string("stories: ") + e.what());
  }
  std::vector<Story> stories;
  for (const auto& node : root["stories"]) {
    Story story;
    story.name = node["story"].as<std::string>("");
    if (story.name.empty()) {
      throw StoryError("#" + std::to_string(stories.size()), "story has no name");
    }
    try {
      for (const auto& step : node["steps"]) {
        if (step["intent"]) {
          story.steps.push_back(ParseUserStep(story.name, step));
        } else if (step["action"]) {
          story.steps.push_back(ParseBotStep(story.name, step));
        } else {
          throw StoryError(story.name, "step is neither intent nor action");
        }
      }
    } catch (const YAML::Exception& e) {
      throw StoryError(story.name, e.what());
    }
    ValidateStory(story);
    stories.push_back(std::move(story));
  }
  return stories;
}

std::vector<Story> LoadStories(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read stories file: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseStories(buffer.str());
}

void ValidateStory(const Story& story) {
  if (story.steps.empty() || !std::holds_alternative<UserStep>(story.steps.front())) {
    throw StoryError(story.name, "must start with a user step");
  }
  for (const auto& step : story.steps) {
    if (auto* bot = std::get_if<BotStep>(&step);
        bot != nullptr && bot->action == Action::kActionListen) {
      throw StoryError(story.name, "action_listen is implicit and must not be listed");
    }
  }
}

std::vector<TrainingPair> UnrollStories(std::span<const Story> stories) {
  std::vector<TrainingPair> pairs;
  const TimePoint t0{};
  catalog::DatasetRecord placeholder{"story-result", "placeholder", "", {}, {},
                                     "about:blank", ""};
  for (const auto& story : stories) {
    ValidateStory(story);
    Tracker tracker(story.name);
    bool bot_run_open = false;
    auto close_run = [&](std::size_t step) {
      pairs.push_back({FeaturizeState(tracker), Action::kActionListen, story.name, step});
      tracker.Apply(ActionEvent{Action::kActionListen, t0});
      bot_run_open = false;
    };
    for (std::size_t i = 0; i < story.steps.size(); ++i) {
      if (const auto* user = std::get_if<UserStep>(&story.steps[i])) {
        if (bot_run_open || tracker.last_event_is_user()) close_run(i);
        std::vector<ner::EntityMention> mentions;
        for (const auto& [type, surface] : user->entities) {
          ner::EntityMention mention;
          mention.type = type;
          mention.surface = surface;
          mention.end = surface.size();
          mention.confidence = 1.0;
          mentions.push_back(std::move(mention));
        }
        UpdateTracker(tracker, "", user->intent, std::move(mentions), user->slots, t0);
      } else {
        const auto& bot = std::get<BotStep>(story.steps[i]);
        pairs.push_back({FeaturizeState(tracker), bot.action, story.name, i});
        tracker.Apply(ActionEvent{bot.action, t0});
        if (bot.action == Action::kActionSearch) {
          std::vector<catalog::DatasetRecord> results;
          if (bot.found_results) results.push_back(placeholder);
          tracker.Apply(ResultsEvent{std::move(results), t0});
        }
        bot_run_open = true;
      }
    }
    close_run(story.steps.size());
  }
  return pairs;
}

}  // namespace odbot::dialogue
