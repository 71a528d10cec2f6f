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

#include "odbot/dialogue/templates.h"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <yaml-cpp/yaml.h>

#include "odbot/intent/payload.h"

namespace odbot::dialogue {
namespace {

constexpr std::string_view kTopicMarker = "{topic}";
constexpr std::string_view kLocationMarker = "{location}";

ResponseTemplate ParseTemplate(const std::string& key, const YAML::Node& node) {
  ResponseTemplate tmpl;
  if (node.IsScalar()) {
    tmpl.text = node.as<std::string>();
    return tmpl;
  }
  if (!node["text"]) throw std::runtime_error("template '" + key + "' has no text");
  tmpl.text = node["text"].as<std::string>();
  if (node["fallback"]) tmpl.fallback = node["fallback"].as<std::string>();
  if (auto source = node["button_source"]) {
    auto name = source.as<std::string>();
    if (name == "topics") {
      tmpl.button_source = ButtonSource::kTopics;
    } else if (name == "locations") {
      tmpl.button_source = ButtonSource::kLocations;
    } else {
      throw std::runtime_error("template '" + key + "' has unknown button_source '" +
                               name + "'");
    }
  }
  for (const auto& button : node["buttons"]) {
    Button b{button["title"].as<std::string>(), button["payload"].as<std::string>()};
    bool parses = false;
    try {
      parses = intent::ParsePayload(b.payload).has_value();
    } catch (const intent::PayloadError&) {
    }
    if (!parses) {
      throw std::runtime_error("template '" + key + "' has an invalid button payload '" +
                               b.payload + "'");
    }
    tmpl.buttons.push_back(std::move(b));
  }
  if (tmpl.buttons.size() > kMaxButtons) {
    throw std::runtime_error("template '" + key + "' has more than 6 buttons");
  }
  return tmpl;
}

void ReplaceAll(std::string& s, std::string_view from, const std::string& to) {
  for (auto pos = s.find(from); pos != std::string::npos;
       pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

bool MissingSlot(std::string_view text, const Slots& slots) {
  return (!slots.topic && text.find(kTopicMarker) != std::string_view::npos) ||
         (!slots.location && text.find(kLocationMarker) != std::string_view::npos);
}

}  // namespace

Templates Templates::Parse(std::string_view yaml) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::Exception& e) {
    throw std::runtime_error(std::string("templates: ") + e.what());
  }
  Templates out;
  std::set<Action> seen;
  try {
    for (const auto& kv : root["templates"]) {
      auto key = kv.first.as<std::string>();
      auto action = ParseAction(key);
      if (!action || !IsTemplate(*action)) {
        throw std::runtime_error("unknown template '" + key + "'");
      }
      out.templates_[Index(*action)] = ParseTemplate(key, kv.second);
      seen.insert(*action);
    }
    auto messages = root["messages"];
    for (auto [key, target] : {std::pair{"search_results", &out.search_results_},
                               std::pair{"clarify", &out.clarify_},
                               std::pair{"payload_error", &out.payload_error_}}) {
      if (!messages[key]) throw std::runtime_error(std::string("missing message '") + key + "'");
      *target = ParseTemplate(key, messages[key]);
    }
  } catch (const YAML::Exception& e) {
    throw std::runtime_error(std::string("templates: ") + e.what());
  }
  for (Action action : kAllActions) {
    if (IsTemplate(action) && !seen.contains(action)) {
      throw std::runtime_error("missing template '" + std::string(ActionName(action)) + "'");
    }
  }
  return out;
}

Templates Templates::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read templates file: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str());
}

const ResponseTemplate& Templates::ForAction(Action action) const {
  if (!IsTemplate(action)) {
    throw std::invalid_argument(std::string(ActionName(action)) + " is not a template");
  }
  return templates_[Index(action)];
}

std::string Interpolate(const ResponseTemplate& tmpl, const Slots& slots) {
  std::string text = tmpl.text;
  if (MissingSlot(text, slots) && tmpl.fallback) text = *tmpl.fallback;
  ReplaceAll(text, kTopicMarker, slots.topic.value_or(""));
  ReplaceAll(text, kLocationMarker, slots.location.value_or(""));
  return text;
}

BotResponse RenderAction(Action action, const Tracker& tracker,
                         const Templates& templates,
                         const catalog::Index& index) {
  BotResponse response;
  if (action == Action::kActionSearch) {
    if (tracker.results().empty()) {
      return RenderAction(Action::kUtterNoResults, tracker, templates, index);
    }
    response.text = Interpolate(templates.search_results(), tracker.slots());
    for (const auto& record : tracker.results()) {
      if (response.links.size() == kMaxLinks) break;
      response.links.push_back({record.title, record.url});
    }
    return response;
  }

  const ResponseTemplate& tmpl = templates.ForAction(action);
  response.text = Interpolate(tmpl, tracker.slots());
  response.buttons = tmpl.buttons;
  if (tmpl.button_source != ButtonSource::kNone) {
    const bool topics = tmpl.button_source == ButtonSource::kTopics;
    const std::size_t room = kMaxButtons - std::min(kMaxButtons, response.buttons.size());
    auto options = topics ? index.ListTopics(room) : index.ListLocations(room);
    for (auto& option : options) {
      intent::Payload payload{
          topics ? intent::Intent::kAddKeyword : intent::Intent::kAddLocation,
          {{topics ? "topic" : "location", option}}};
      response.buttons.push_back({option, intent::FormatPayload(payload)});
    }
  }
  return response;
}

}  // namespace odbot::dialogue
