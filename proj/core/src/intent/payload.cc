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

#include "odbot/intent/payload.h"

#include <nlohmann/json.hpp>

namespace odbot::intent {
namespace {

bool IsNameChar(char c) { return (c >= 'a' && c <= 'z') || c == '_'; }

std::string_view Trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

}  // namespace

std::optional<Payload> ParsePayload(std::string_view text) {
  text = Trim(text);
  if (text.empty() || text.front() != '/') return std::nullopt;

  std::size_t pos = 1;
  while (pos < text.size() && IsNameChar(text[pos])) ++pos;
  std::string_view name = text.substr(1, pos - 1);
  if (name.empty()) throw PayloadError("payload has no intent name");
  auto intent = ParseIntent(name);
  if (!intent) {
    throw PayloadError("payload names unknown intent '" + std::string(name) + "'");
  }

  Payload payload{*intent, {}};
  std::string_view rest = Trim(text.substr(pos));
  if (rest.empty()) return payload;
  if (rest.front() != '{') {
    throw PayloadError("unexpected text after payload intent: '" +
                       std::string(rest) + "'");
  }
  auto object = nlohmann::json::parse(rest, nullptr, /*allow_exceptions=*/false);
  if (object.is_discarded() || !object.is_object()) {
    throw PayloadError("payload slots are not a valid JSON object");
  }
  for (auto& [key, value] : object.items()) {
    if (!value.is_string()) {
      throw PayloadError("payload slot '" + key + "' is not a string");
    }
    payload.slots.emplace(key, value.get<std::string>());
  }
  return payload;
}

std::string FormatPayload(const Payload& payload) {
  std::string out = "/" + std::string(IntentName(payload.intent));
  if (!payload.slots.empty()) {
    nlohmann::json object = nlohmann::json::object();
    for (const auto& [key, value] : payload.slots) object[key] = value;
    out += object.dump();
  }
  return out;
}

}  // namespace odbot::intent
