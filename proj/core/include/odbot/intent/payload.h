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

#ifndef ODBOT_INTENT_PAYLOAD_H_
#define ODBOT_INTENT_PAYLOAD_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "odbot/intent/intent.h"

namespace odbot::intent {

// A button payload such as /add_keyword{"topic":"education"}.
struct Payload {
  Intent intent;
  std::map<std::string, std::string> slots;

  bool operator==(const Payload&) const = default;
};

class PayloadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Returns nullopt when `text` does not start with '/'. Otherwise parses
// "/<intent>" optionally followed by a JSON object with string values, and
// throws PayloadError if that fails.
std::optional<Payload> ParsePayload(std::string_view text);

// Inverse of ParsePayload.
std::string FormatPayload(const Payload& payload);

}  // namespace odbot::intent

#endif  // ODBOT_INTENT_PAYLOAD_H_
