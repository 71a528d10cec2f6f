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

#include "odbot/intent/intent.h"

namespace odbot::intent {
namespace {

constexpr std::array<std::string_view, kNumIntents> kIntentNames = {
    "greeting", "goodbye",   "add_keyword", "add_location", "search",
    "explore",  "thank_you", "affirm",      "deny"};

}  // namespace

std::string_view IntentName(Intent intent) {
  return kIntentNames[Index(intent)];
}

std::optional<Intent> ParseIntent(std::string_view name) {
  for (Intent intent : kAllIntents) {
    if (kIntentNames[Index(intent)] == name) return intent;
  }
  return std::nullopt;
}

Intent RequireIntent(std::string_view name) {
  if (auto intent = ParseIntent(name)) return *intent;
  throw UnknownIntentError(std::string(name));
}

}  // namespace odbot::intent
