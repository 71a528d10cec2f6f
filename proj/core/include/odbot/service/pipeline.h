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

#ifndef ODBOT_SERVICE_PIPELINE_H_
#define ODBOT_SERVICE_PIPELINE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "odbot/catalog/index.h"
#include "odbot/dialogue/manager.h"
#include "odbot/dialogue/policy.h"
#include "odbot/dialogue/templates.h"
#include "odbot/intent/classifier.h"
#include "odbot/ner/crf.h"
#include "odbot/ner/entity.h"
#include "odbot/ner/gazetteer.h"
#include "odbot/service/session_store.h"

namespace odbot::service {

inline constexpr double kDefaultConfidenceThreshold = 0.3;

// Everything a conversation needs, immutable once built and shared by all
// sessions.
struct Pipeline {
  ner::CrfModel crf;
  ner::Gazetteer gazetteer;
  intent::IntentModel intent_model;
  dialogue::PolicyModel policy;
  dialogue::Templates templates;
  catalog::Index index;
  double confidence_threshold = kDefaultConfidenceThreshold;
  std::string model_version;
};

struct Interpretation {
  std::vector<ner::EntityMention> entities;
  intent::IntentPrediction prediction;
  // Empty when the prediction is below the confidence threshold.
  std::optional<intent::Intent> intent;
};

Interpretation Interpret(const Pipeline& pipeline, std::string_view text);

// One user message through one tracker: payloads bypass the statistical NLU,
// free text goes through entity extraction and intent classification, then
// the dialogue manager runs a bot turn. A bad payload yields a single
// clarification response and an error event.
std::vector<dialogue::BotResponse> RunTurn(const Pipeline& pipeline,
                                           dialogue::Tracker& tracker,
                                           std::string text,
                                           dialogue::TimePoint now);

// RunTurn under the store's per-session serialization. Throws
// SessionNotFound.
std::vector<dialogue::BotResponse> HandleMessage(SessionStore& store,
                                                 const std::string& session_id,
                                                 std::string text,
                                                 const Pipeline& pipeline);

}  // namespace odbot::service

#endif  // ODBOT_SERVICE_PIPELINE_H_
