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

#include "odbot/dialogue/policy.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace odbot::dialogue {
namespace {

constexpr std::size_t kIn = kStateSize;
constexpr std::size_t kHid = PolicyModel::kHiddenUnits;
constexpr std::size_t kOut = kNumActions;

double Uniform(std::mt19937_64& rng, double bound) {
  double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return (2.0 * u - 1.0) * bound;
}

struct Activations {
  std::array<double, kHid> hidden;
  std::array<double, kOut> probs;
};

Activations Forward(const PolicyModel& m, const StateVector& x) {
  Activations a{};
  for (std::size_t h = 0; h < kHid; ++h) {
    double z = m.hidden_bias[h];
    for (std::size_t i = 0; i < kIn; ++i) z += m.hidden_weights[h * kIn + i] * x[i];
    a.hidden[h] = std::tanh(z);
  }
  double max = -INFINITY;
  std::array<double, kOut> logits{};
  for (std::size_t o = 0; o < kOut; ++o) {
    double z = m.output_bias[o];
    for (std::size_t h = 0; h < kHid; ++h) z += m.output_weights[o * kHid + h] * a.hidden[h];
    logits[o] = z;
    max = std::max(max, z);
  }
  double sum = 0.0;
  for (std::size_t o = 0; o < kOut; ++o) {
    a.probs[o] = std::exp(logits[o] - max);
    sum += a.probs[o];
  }
  for (double& p : a.probs) p /= sum;
  return a;
}

struct Sample {
  StateVector state;
  Action action;
};

// Deduplicates unrolled pairs and rejects contradictory ones.
std::vector<Sample> ConsistentSamples(const std::vector<TrainingPair>& pairs) {
  std::map<StateVector, const TrainingPair*> seen;
  std::vector<Sample> samples;
  for (const auto& pair : pairs) {
    auto [it, inserted] = seen.emplace(pair.state, &pair);
    if (inserted) {
      samples.push_back({pair.state, pair.action});
      continue;
    }
    const TrainingPair& first = *it->second;
    if (first.action != pair.action) {
      throw PolicyTrainingError(
          "conflicting stories: '" + first.story + "' expects " +
          std::string(ActionName(first.action)) + " but '" + pair.story +
          "' expects " + std::string(ActionName(pair.action)) +
          " in the same dialogue state");
    }
  }
  return samples;
}

}  // namespace

std::array<double, kNumActions> PolicyModel::Probabilities(
    const StateVector& state) const {
  return Forward(*this, state).probs;
}

Action PolicyModel::BestAction(const StateVector& state) const {
  auto probs = Probabilities(state);
  std::size_t best = 0;
  for (std::size_t o = 1; o < kOut; ++o) {
    if (probs[o] > probs[best]) best = o;
  }
  return static_cast<Action>(best);
}

std::size_t CheckStoryConsistency(std::span<const Story> stories) {
  return ConsistentSamples(UnrollStories(stories)).size();
}

PolicyModel TrainPolicy(std::span<const Story> stories,
                        const PolicyTrainingOptions& options) {
  if (stories.empty()) throw PolicyTrainingError("no stories to train on");
  const auto samples = ConsistentSamples(UnrollStories(stories));

  PolicyModel m;
  m.seed = options.seed;
  std::mt19937_64 rng(options.seed);
  const double hidden_bound = std::sqrt(6.0 / (kIn + kHid));
  const double output_bound = std::sqrt(6.0 / (kHid + kOut));
  m.hidden_weights.resize(kHid * kIn);
  for (double& w : m.hidden_weights) w = Uniform(rng, hidden_bound);
  m.hidden_bias.assign(kHid, 0.0);
  m.output_weights.resize(kOut * kHid);
  for (double& w : m.output_weights) w = Uniform(rng, output_bound);
  m.output_bias.assign(kOut, 0.0);

  const double scale = options.learning_rate / static_cast<double>(samples.size());
  std::vector<double> g_hw(m.hidden_weights.size());
  std::vector<double> g_hb(kHid);
  std::vector<double> g_ow(m.output_weights.size());
  std::vector<double> g_ob(kOut);
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    std::fill(g_hw.begin(), g_hw.end(), 0.0);
    std::fill(g_hb.begin(), g_hb.end(), 0.0);
    std::fill(g_ow.begin(), g_ow.end(), 0.0);
    std::fill(g_ob.begin(), g_ob.end(), 0.0);
    for (const auto& sample : samples) {
      auto a = Forward(m, sample.state);
      std::array<double, kOut> d_out{};
      for (std::size_t o = 0; o < kOut; ++o) {
        d_out[o] = a.probs[o] - (o == Index(sample.action) ? 1.0 : 0.0);
      }
      std::array<double, kHid> d_hid{};
      for (std::size_t o = 0; o < kOut; ++o) {
        g_ob[o] += d_out[o];
        for (std::size_t h = 0; h < kHid; ++h) {
          g_ow[o * kHid + h] += d_out[o] * a.hidden[h];
          d_hid[h] += d_out[o] * m.output_weights[o * kHid + h];
        }
      }
      for (std::size_t h = 0; h < kHid; ++h) {
        double d = d_hid[h] * (1.0 - a.hidden[h] * a.hidden[h]);
        g_hb[h] += d;
        for (std::size_t i = 0; i < kIn; ++i) {
          if (sample.state[i] != 0.0) g_hw[h * kIn + i] += d * sample.state[i];
        }
      }
    }
    for (std::size_t k = 0; k < g_hw.size(); ++k) m.hidden_weights[k] -= scale * g_hw[k];
    for (std::size_t k = 0; k < kHid; ++k) m.hidden_bias[k] -= scale * g_hb[k];
    for (std::size_t k = 0; k < g_ow.size(); ++k) m.output_weights[k] -= scale * g_ow[k];
    for (std::size_t k = 0; k < kOut; ++k) m.output_bias[k] -= scale * g_ob[k];
  }

  for (const auto& sample : samples) {
    Action predicted = m.BestAction(sample.state);
    if (predicted != sample.action) {
      throw PolicyTrainingError(
          "policy failed to fit its stories: predicted " +
          std::string(ActionName(predicted)) + " where a story expects " +
          std::string(ActionName(sample.action)));
    }
  }
  return m;
}

double StoryReplayAccuracy(const PolicyModel& policy,
                           std::span<const Story> stories) {
  auto pairs = UnrollStories(stories);
  if (pairs.empty()) return 1.0;
  std::size_t correct = 0;
  for (const auto& pair : pairs) {
    if (policy.BestAction(pair.state) == pair.action) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(pairs.size());
}

}  // namespace odbot::dialogue
