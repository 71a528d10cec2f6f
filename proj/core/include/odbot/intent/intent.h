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

#ifndef ODBOT_INTENT_INTENT_H_
#define ODBOT_INTENT_INTENT_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace odbot::intent {

// Declaration order is the canonical order used for tie-breaks.
enum class Intent : std::uint8_t {
  kGreeting = 0,
  kGoodbye,
  kAddKeyword,
  kAddLocation,
  kSearch,
  kExplore,
  kThankYou,
  kAffirm,
  kDeny,
};

inline constexpr std::size_t kNumIntents = 9;

inline constexpr std::array<Intent, kNumIntents> kAllIntents = {
    Intent::kGreeting, Intent::kGoodbye,  Intent::kAddKeyword,
    Intent::kAddLocation, Intent::kSearch, Intent::kExplore,
    Intent::kThankYou, Intent::kAffirm,   Intent::kDeny};

constexpr std::size_t Index(Intent intent) {
  return static_cast<std::size_t>(intent);
}

// Snake-case names: greeting, goodbye, add_keyword, ...
std::string_view IntentName(Intent intent);
std::optional<Intent> ParseIntent(std::string_view name);

class UnknownIntentError : public std::invalid_argument {
 public:
  explicit UnknownIntentError(std::string name)
      : std::invalid_argument("unknown intent '" + name + "'"),
        name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// Like ParseIntent but throws UnknownIntentError.
Intent RequireIntent(std::string_view name);

}  // namespace odbot::intent

#endif  // ODBOT_INTENT_INTENT_H_
