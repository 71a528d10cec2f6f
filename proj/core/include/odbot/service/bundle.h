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

#ifndef ODBOT_SERVICE_BUNDLE_H_
#define ODBOT_SERVICE_BUNDLE_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "odbot/dialogue/policy.h"
#include "odbot/dialogue/story.h"
#include "odbot/intent/classifier.h"
#include "odbot/ner/crf.h"
#include "odbot/ner/gazetteer.h"
#include "odbot/service/corpus.h"
#include "odbot/service/pipeline.h"

namespace odbot::service {

inline constexpr int kBundleFormatVersion = 1;

struct BundleManifest {
  int format_version = kBundleFormatVersion;
  int state_layout_version = dialogue::kStateLayoutVersion;
  std::uint64_t seed = 0;
  std::string nlu_sha256;
  std::string stories_sha256;
  std::string templates_sha256;
  std::string model_version;
};

// The trained artifacts: CRF weights, SVM weights with their vocabulary, and
// the policy network, plus a manifest describing what produced them.
struct ModelBundle {
  ner::CrfModel crf;
  intent::IntentModel intent_model;
  dialogue::PolicyModel policy;
  BundleManifest manifest;
};

class BundleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Writes manifest.json, crf.json, intent.json and policy.json into `dir`,
// creating it if needed.
void SaveBundle(const ModelBundle& bundle, const std::filesystem::path& dir);

// Throws BundleError for missing files, malformed JSON, or a format/layout
// version other than the one this build understands.
ModelBundle LoadBundle(const std::filesystem::path& dir);

std::string Sha256Hex(std::string_view data);
// Throws std::runtime_error if the file cannot be read.
std::string Sha256File(const std::filesystem::path& path);

struct TrainingConfig {
  std::uint64_t seed = 42;
  ner::CrfTrainingOptions crf;
  intent::IntentTrainingOptions intent;
  dialogue::PolicyTrainingOptions policy;
};

// Trains all three models. The seed in `config` overrides the per-model seeds.
ModelBundle TrainBundle(const NluCorpus& corpus,
                        std::span<const dialogue::Story> stories,
                        const TrainingConfig& config = {});

struct TrainingFiles {
  std::filesystem::path nlu;
  std::filesystem::path stories;
  std::filesystem::path templates;
};

// Loads the inputs, refuses an invalid corpus (std::runtime_error carrying
// the validation report), trains, and fills in the manifest hashes.
ModelBundle TrainFromFiles(const TrainingFiles& files,
                           const TrainingConfig& config = {},
                           const CorpusFloors& floors = {});

struct EvalReport {
  double intent_accuracy = 0.0;
  double entity_precision = 0.0;
  double entity_recall = 0.0;
  double entity_f1 = 0.0;
  double story_replay = 0.0;
};

// Training-fit metrics. Entity scores compare (type, start, end) triples from
// the full extractor (CRF plus gazetteer) against the gold annotations.
EvalReport EvaluateBundle(const ModelBundle& bundle,
                          const ner::Gazetteer& gazetteer,
                          const NluCorpus& corpus,
                          std::span<const dialogue::Story> stories);

// Paths needed at serving time in addition to the trained bundle.
struct RuntimeFiles {
  std::filesystem::path model_dir;
  std::filesystem::path templates;
  std::filesystem::path gazetteer;
  std::filesystem::path catalog;
};

// Loads the bundle, templates, gazetteer and catalog into a ready pipeline.
// Skipped catalog lines and a templates file that differs from the one
// recorded at training time are reported through `warnings`.
Pipeline LoadPipeline(const RuntimeFiles& files,
                      std::vector<std::string>* warnings = nullptr);

}  // namespace odbot::service

#endif  // ODBOT_SERVICE_BUNDLE_H_
