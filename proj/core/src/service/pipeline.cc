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

#include "odbot/service/pipeline.h"

#include <iostream>

#include "odbot/intent/payload.h"
#include "odbot/ner/extractor.h"

namespace odbot::service {

Interpretation Interpret(const Pipeline& pipeline, std::string_view text) {
  Interpretation out;
  out.entities = ner::ExtractEntities(pipeline.crf, pipeline.gazetteer, text);
  out.prediction = intent::ClassifyIntent(pipeline.intent_model, text);
  if (out.prediction.confidence >= pipeline.confidence_threshold) {
    out.intent = out.prediction.top;
  }
  return out;
}

std::vector<dialogue::BotResponse> RunTurn(const Pipeline& pipeline,
                                           dialogue::Tracker& tracker,
                                           std::string text,
                                           dialogue::TimePoint now) {
  auto clarification = [&] {
    return std::vector<dialogue::BotResponse>{
        {dialogue::Interpolate(pipeline.templates.payload_error(), tracker.slots()),
         {},
         {}}};
  };

  std::optional<intent::Payload> payload;
  try {
    payload = intent::ParsePayload(text);
  } catch (const intent::PayloadError& e) {
    tracker.Apply(dialogue::ErrorEvent{e.what(), now});
    return clarification();
  }

  bool accepted = false;
  if (payload) {
    accepted = dialogue::UpdateTracker(tracker, std::move(text), payload->intent, {},
                                       payload->slots, now);
  } else {
    auto nlu = Interpret(pipeline, text);
    accepted = dialogue::UpdateTracker(tracker, std::move(text), nlu.intent,
                                       std::move(nlu.entities), {}, now);
  }
  if (!accepted) return clarification();

  auto turn = dialogue::SelectActions(pipeline.policy, tracker, pipeline.index,
                                      pipeline.templates, now);
  if (turn.runaway) {
    std::clog << "odbot: policy fault in session " << tracker.session_id()
              << ": no action_listen predicted within " << turn.actions.size()
              << " actions\n";
  }
  return std::move(turn.responses);
}

std::vector<dialogue::BotResponse> HandleMessage(SessionStore& store,
                                                 const std::string& session_id,
                                                 std::string text,
                                                 const Pipeline& pipeline) {
  return store.WithSession(session_id, [&](dialogue::Tracker& tracker) {
    return RunTurn(pipeline, tracker, std::move(text), store.now());
  });
}

}  // namespace odbot::service
