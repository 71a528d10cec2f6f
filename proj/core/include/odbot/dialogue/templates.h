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

#ifndef ODBOT_DIALOGUE_TEMPLATES_H_
#define ODBOT_DIALOGUE_TEMPLATES_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "odbot/catalog/index.h"
#include "odbot/dialogue/action.h"
#include "odbot/dialogue/tracker.h"

namespace odbot::dialogue {

inline constexpr std::size_t kMaxButtons = 6;
inline constexpr std::size_t kMaxLinks = catalog::kMaxResults;

struct Button {
  std::string title;
  std::string payload;
  bool operator==(const Button&) const = default;
};

struct Link {
  std::string title;
  std::string url;
  bool operator==(const Link&) const = default;
};

// Structured bot output; presentation is left to the client.
struct BotResponse {
  std::string text;
  std::vector<Button> buttons;
  std::vector<Link> links;
  bool operator==(const BotResponse&) const = default;
};

enum class ButtonSource : std::uint8_t { kNone, kTopics, kLocations };

struct ResponseTemplate {
  std::string text;  // may contain {topic} and {location}
  // Used when `text` mentions a slot that is not set.
  std::optional<std::string> fallback;
  std::vector<Button> buttons;
  ButtonSource button_source = ButtonSource::kNone;
};

// Response wording for the ten utterance templates plus three service
// messages. Loaded from YAML:
//
//   templates:
//     utter_ask_topic_options:
//       text: Which topic would you like to explore?
//       button_source: topics
//   messages:
//     search_results: {text: ..., fallback: ...}
//     clarify: ...
//     payload_error: ...
class Templates {
 public:
  // Throws std::runtime_error for missing templates, unknown keys, or
  // button payloads that do not parse.
  static Templates Parse(std::string_view yaml);
  static Templates Load(const std::filesystem::path& path);

  // `action` must be an utterance template.
  const ResponseTemplate& ForAction(Action action) const;
  const ResponseTemplate& search_results() const { return search_results_; }
  const ResponseTemplate& clarify() const { return clarify_; }
  const ResponseTemplate& payload_error() const { return payload_error_; }

 private:
  std::array<ResponseTemplate, kNumTemplates> templates_;
  ResponseTemplate search_results_;
  ResponseTemplate clarify_;
  ResponseTemplate payload_error_;
};

// Fills {topic}/{location} from the slots, switching to the fallback wording
// when a referenced slot is unset.
std::string Interpolate(const ResponseTemplate& tmpl, const Slots& slots);

// Renders a template (with catalog-sourced buttons where configured) or the
// stored search results of action_search; empty results render
// utter_no_results instead.
BotResponse RenderAction(Action action, const Tracker& tracker,
                         const Templates& templates,
                         const catalog::Index& index);

}  // namespace odbot::dialogue

#endif  // ODBOT_DIALOGUE_TEMPLATES_H_
