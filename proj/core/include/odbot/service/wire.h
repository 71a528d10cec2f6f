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

#ifndef ODBOT_SERVICE_WIRE_H_
#define ODBOT_SERVICE_WIRE_H_

#include <span>
#include <string>

#include "odbot/dialogue/templates.h"
#include "odbot/dialogue/tracker.h"

namespace odbot::service {

// {"responses":[{"text":...,"buttons":[{"title","payload"}],
//                "links":[{"title","url"}]}]}
std::string ResponsesToJson(std::span<const dialogue::BotResponse> responses);

// Parses the body produced by ResponsesToJson. Throws std::runtime_error.
std::vector<dialogue::BotResponse> ResponsesFromJson(const std::string& body);

// Debug snapshot: slots, last action and the event log.
std::string TrackerToJson(const dialogue::Tracker& tracker);

}  // namespace odbot::service

#endif  // ODBOT_SERVICE_WIRE_H_
