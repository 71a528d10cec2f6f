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

#include "odbot/service/wire.h"

#include <stdexcept>
#include <type_traits>

#include <nlohmann/json.hpp>

namespace odbot::service {
namespace {

using nlohmann::json;

json ToJson(const dialogue::BotResponse& r) {
  json buttons = json::array();
  for (const auto& b : r.buttons) buttons.push_back({{"title", b.title}, {"payload", b.payload}});
  json links = json::array();
  for (const auto& l : r.links) links.push_back({{"title", l.title}, {"url", l.url}});
  return {{"text", r.text}, {"buttons", buttons}, {"links", links}};
}

std::int64_t Millis(dialogue::TimePoint t) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch())
      .count();
}

json OptionalString(const std::optional<std::string>& s) {
  return s ? json(*s) : json(nullptr);
}

}  // namespace

std::string ResponsesToJson(std::span<const dialogue::BotResponse> responses) {
  json list = json::array();
  for (const auto& r : responses) list.push_back(ToJson(r));
  return json{{"responses", list}}.dump();
}

std::vector<dialogue::BotResponse> ResponsesFromJson(const std::string& body) {
  auto root = json::parse(body, nullptr, false);
  if (root.is_discarded() || !root.contains("responses")) {
    throw std::runtime_error("not a responses document");
  }
  std::vector<dialogue::BotResponse> out;
  try {
    for (const auto& r : root.at("responses")) {
      dialogue::BotResponse response;
      response.text = r.at("text").get<std::string>();
      for (const auto& b : r.at("buttons")) {
        response.buttons.push_back({b.at("title").get<std::string>(),
                                    b.at("payload").get<std::string>()});
      }
      for (const auto& l : r.at("links")) {
        response.links.push_back({l.at("title").get<std::string>(),
                                  l.at("url").get<std::string>()});
      }
      out.push_back(std::move(response));
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(e.what());
  }
  return out;
}

std::string TrackerToJson(const dialogue::Tracker& tracker) {
  const auto& slots = tracker.slots();
  json events = json::array();
  for (const auto& event : tracker.events()) {
    std::visit(
        [&](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          json j = {{"time_ms", Millis(e.time)}};
          if constexpr (std::is_same_v<T, dialogue::UserEvent>) {
            j["event"] = "user";
            j["text"] = e.text;
            j["intent"] = e.intent ? json(std::string(intent::IntentName(*e.intent)))
                                   : json("low_confidence");
            json entities = json::array();
            for (const auto& m : e.entities) {
              entities.push_back({{"type", ner::EntityTypeName(m.type)},
                                  {"surface", m.surface},
                                  {"start", m.start},
                                  {"end", m.end},
                                  {"extractor", ner::ExtractorName(m.extractor)},
                                  {"confidence", m.confidence}});
            }
            j["entities"] = entities;
            j["slots"] = e.slot_writes;
          } else if constexpr (std::is_same_v<T, dialogue::ActionEvent>) {
            j["event"] = "action";
            j["action"] = dialogue::ActionName(e.action);
          } else if constexpr (std::is_same_v<T, dialogue::ResultsEvent>) {
            j["event"] = "results";
            json ids = json::array();
            for (const auto& r : e.results) ids.push_back(r.id);
            j["dataset_ids"] = ids;
          } else {
            j["event"] = "error";
            j["message"] = e.message;
          }
          events.push_back(std::move(j));
        },
        event);
  }
  json snapshot = {
      {"session_id", tracker.session_id()},
      {"slots",
       {{"topic", OptionalString(slots.topic)},
        {"location", OptionalString(slots.location)},
        {"mode", slots.mode ? json(std::string(dialogue::ModeName(*slots.mode)))
                            : json(nullptr)}}},
      {"last_action", dialogue::ActionName(tracker.last_action())},
      {"events", events}};
  return snapshot.dump();
}

}  // namespace odbot::service
