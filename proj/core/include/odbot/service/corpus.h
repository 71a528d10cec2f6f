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

#ifndef ODBOT_SERVICE_CORPUS_H_
#define ODBOT_SERVICE_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "odbot/intent/classifier.h"
#include "odbot/ner/bio.h"
#include "odbot/ner/crf.h"

namespace odbot::service {

struct EntityAnnotation {
  ner::EntityType type;
  std::size_t start = 0;  // byte offsets into the example text
  std::size_t end = 0;

  bool operator==(const EntityAnnotation&) const = default;
};

struct NluExample {
  std::string text;
  intent::Intent intent;
  std::vector<EntityAnnotation> entities;
};

struct NluCorpus {
  std::vector<NluExample> examples;
};

// Parses the NLU training document:
//
//   nlu:
//     - intent: search
//       examples:
//         - find [schools](topic) in [Graz](location)
//
// Brackets mark entity spans; the markup is stripped from the stored text.
// Throws intent::UnknownIntentError for an unknown intent name and
// std::runtime_error for malformed YAML or markup.
NluCorpus ParseNluCorpus(std::string_view yaml);
NluCorpus LoadNluCorpus(const std::filesystem::path& path);

// Splits one annotated line into plain text and spans.
NluExample ParseAnnotatedExample(std::string_view line, intent::Intent intent);

// Count floors for a training corpus.
struct CorpusFloors {
  std::size_t total_examples = 250;
  std::size_t with_topic = 121;
  std::size_t with_location = 18;
  std::size_t per_intent = 6;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks the count floors and that every span lies within its text, on token
// boundaries, without overlapping another span of the same example.
ValidationReport ValidateCorpus(const NluCorpus& corpus,
                                const CorpusFloors& floors = {});

std::vector<ner::CrfExample> ToCrfExamples(const NluCorpus& corpus);
std::vector<intent::IntentExample> ToIntentExamples(const NluCorpus& corpus);

}  // namespace odbot::service

#endif  // ODBOT_SERVICE_CORPUS_H_
