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

#ifndef ODBOT_INTENT_CLASSIFIER_H_
#define ODBOT_INTENT_CLASSIFIER_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "odbot/intent/intent.h"
#include "odbot/text/features.h"

namespace odbot::intent {

struct IntentExample {
  std::string text;
  Intent intent;
};

// One linear scorer per intent over the shared n-gram vocabulary.
struct IntentModel {
  text::Vocabulary vocabulary;
  // weights[intent][feature id]
  std::array<std::vector<double>, kNumIntents> weights;
  std::array<double, kNumIntents> bias{};
  double regularization = 0.0;

  std::array<double, kNumIntents> DecisionScores(
      const text::MessageVector& vec) const;
};

struct IntentPrediction {
  Intent top = Intent::kGreeting;
  double confidence = 0.0;
  // All nine intents, confidence descending, ties in canonical order.
  std::vector<std::pair<Intent, double>> ranking;
};

struct IntentTrainingOptions {
  int epochs = 100;
  double regularization = 0.001;
  std::uint64_t seed = 7;
};

// One-vs-rest linear SVM. Each binary scorer minimizes
//   regularization / 2 * |w|^2 + mean_i max(0, 1 - y_i * (w . x_i + b))
// by Pegasos-style subgradient steps of size 1 / (regularization * t) over a
// seeded shuffle of the corpus. The bias is treated as the weight of a
// constant feature. Throws std::invalid_argument for an empty corpus.
IntentModel TrainIntentModel(std::span<const IntentExample> corpus,
                             const IntentTrainingOptions& options = {});

// Sum over intents of the regularized hinge objective above.
double RegularizedHingeLoss(const IntentModel& model,
                            std::span<const IntentExample> corpus);

// Softmax over raw decision scores; ranking ties go to canonical order.
IntentPrediction PredictFromScores(const std::array<double, kNumIntents>& scores);

IntentPrediction ClassifyIntent(const IntentModel& model, std::string_view text);

}  // namespace odbot::intent

#endif  // ODBOT_INTENT_CLASSIFIER_H_
