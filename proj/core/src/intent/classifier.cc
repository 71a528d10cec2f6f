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

#include "odbot/intent/classifier.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace odbot::intent {
namespace {

double Dot(const std::vector<double>& w, const text::MessageVector& x) {
  double sum = 0.0;
  for (auto [id, value] : x) {
    if (static_cast<std::size_t>(id) < w.size()) sum += w[id] * value;
  }
  return sum;
}

// Fisher-Yates with raw engine draws so the permutation only depends on the
// seed, not on the standard library's distribution implementation.
void Shuffle(std::vector<std::size_t>& order, std::mt19937_64& rng) {
  for (std::size_t i = order.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
}

}  // namespace

std::array<double, kNumIntents> IntentModel::DecisionScores(
    const text::MessageVector& vec) const {
  std::array<double, kNumIntents> scores{};
  for (std::size_t c = 0; c < kNumIntents; ++c) {
    scores[c] = Dot(weights[c], vec) + bias[c];
  }
  return scores;
}

IntentModel TrainIntentModel(std::span<const IntentExample> corpus,
                             const IntentTrainingOptions& options) {
  if (corpus.empty()) {
    throw std::invalid_argument("intent training corpus is empty");
  }
  if (options.regularization <= 0.0 || options.epochs <= 0) {
    throw std::invalid_argument(
        "intent training needs positive regularization and epochs");
  }
  IntentModel model;
  model.regularization = options.regularization;
  std::vector<text::MessageVector> vectors;
  vectors.reserve(corpus.size());
  for (const auto& example : corpus) {
    vectors.push_back(
        text::BuildMessageVector(example.text, model.vocabulary, false));
  }
  const std::size_t dim = model.vocabulary.size();
  const double lambda = options.regularization;

  for (Intent intent : kAllIntents) {
    const std::size_t c = Index(intent);
    std::vector<double> w(dim, 0.0);
    double b = 0.0;
    std::mt19937_64 rng(options.seed);
    std::vector<std::size_t> order(corpus.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::uint64_t t = 0;
    for (int epoch = 0; epoch < options.epochs; ++epoch) {
      Shuffle(order, rng);
      for (std::size_t i : order) {
        ++t;
        const double eta = 1.0 / (lambda * static_cast<double>(t));
        const double y = corpus[i].intent == intent ? 1.0 : -1.0;
        const double margin = y * (Dot(w, vectors[i]) + b);
        const double decay = 1.0 - eta * lambda;
        for (double& wj : w) wj *= decay;
        b *= decay;
        if (margin < 1.0) {
          for (auto [id, value] : vectors[i]) w[id] += eta * y * value;
          b += eta * y;
        }
      }
    }
    model.weights[c] = std::move(w);
    model.bias[c] = b;
  }
  return model;
}

double RegularizedHingeLoss(const IntentModel& model,
                            std::span<const IntentExample> corpus) {
  if (corpus.empty()) return 0.0;
  std::vector<text::MessageVector> vectors;
  for (const auto& example : corpus) {
    vectors.push_back(text::BuildMessageVector(example.text, model.vocabulary));
  }
  double total = 0.0;
  for (Intent intent : kAllIntents) {
    const std::size_t c = Index(intent);
    double norm_sq = model.bias[c] * model.bias[c];
    for (double w : model.weights[c]) norm_sq += w * w;
    double hinge = 0.0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const double y = corpus[i].intent == intent ? 1.0 : -1.0;
      const double score = Dot(model.weights[c], vectors[i]) + model.bias[c];
      hinge += std::max(0.0, 1.0 - y * score);
    }
    total += 0.5 * model.regularization * norm_sq +
             hinge / static_cast<double>(corpus.size());
  }
  return total;
}

IntentPrediction PredictFromScores(
    const std::array<double, kNumIntents>& scores) {
  const double max = *std::max_element(scores.begin(), scores.end());
  std::array<double, kNumIntents> probs{};
  double sum = 0.0;
  for (std::size_t c = 0; c < kNumIntents; ++c) {
    probs[c] = std::exp(scores[c] - max);
    sum += probs[c];
  }
  IntentPrediction prediction;
  for (Intent intent : kAllIntents) {
    prediction.ranking.emplace_back(intent, probs[Index(intent)] / sum);
  }
  // Ordering by raw score keeps the ranking exactly shift-invariant.
  std::stable_sort(prediction.ranking.begin(), prediction.ranking.end(),
                   [&](const auto& a, const auto& b) {
                     return scores[Index(a.first)] > scores[Index(b.first)];
                   });
  prediction.top = prediction.ranking.front().first;
  prediction.confidence = prediction.ranking.front().second;
  return prediction;
}

IntentPrediction ClassifyIntent(const IntentModel& model,
                                std::string_view text) {
  return PredictFromScores(
      model.DecisionScores(text::BuildMessageVector(text, model.vocabulary)));
}

}  // namespace odbot::intent
