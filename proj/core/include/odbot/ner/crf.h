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

#ifndef ODBOT_NER_CRF_H_
#define ODBOT_NER_CRF_H_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "odbot/ner/bio.h"
#include "odbot/text/tokenizer.h"

namespace odbot::ner {

using LabelScores = std::array<double, kNumLabels>;
// Indexed [from][to].
using TransitionMatrix = std::array<LabelScores, kNumLabels>;

// Linear-chain CRF over the five BIO labels. A label sequence y for tokens x
// scores
//   sum_t sum_{f active at t} state[f][y_t] + sum_{t>0} trans[y_{t-1}][y_t]
// and transitions into I-X from anything but B-X/I-X are pinned to -inf.
class CrfModel {
 public:
  CrfModel();

  std::size_t AddFeature(const std::string& name);
  std::optional<std::size_t> FindFeature(std::string_view name) const;

  LabelScores& state_weights(std::size_t feature) { return state_[feature]; }
  const LabelScores& state_weights(std::size_t feature) const {
    return state_[feature];
  }
  const std::vector<std::string>& feature_names() const { return names_; }
  std::size_t num_features() const { return names_.size(); }

  double transition(BioLabel from, BioLabel to) const {
    return transitions_[Index(from)][Index(to)];
  }
  // Throws std::invalid_argument when asked to unblock a forbidden pair.
  void set_transition(BioLabel from, BioLabel to, double weight);
  const TransitionMatrix& transitions() const { return transitions_; }

  double regularization() const { return regularization_; }
  void set_regularization(double value) { regularization_ = value; }

  // Per-position label scores; unknown features contribute nothing.
  std::vector<LabelScores> Emissions(std::span<const text::Token> tokens) const;

 private:
  std::unordered_map<std::string, std::size_t> ids_;
  std::vector<std::string> names_;
  std::vector<LabelScores> state_;
  TransitionMatrix transitions_{};
  double regularization_ = 0.0;
};

// Unnormalized score of `labels` for `tokens` (-inf if BIO-invalid).
double PathScore(const CrfModel& model, std::span<const text::Token> tokens,
                 std::span<const BioLabel> labels);

// log Z via the forward algorithm. Throws std::invalid_argument on an empty
// sequence.
double LogPartition(const CrfModel& model, std::span<const text::Token> tokens);

// Highest-scoring BIO-valid labelling; ties go to the earlier label in
// declaration order at each step. Throws std::invalid_argument on empty input.
std::vector<BioLabel> ViterbiDecode(const CrfModel& model,
                                    std::span<const text::Token> tokens);

struct CrfExample {
  std::vector<text::Token> tokens;
  std::vector<BioLabel> labels;
};

class CrfTrainingError : public std::invalid_argument {
 public:
  CrfTrainingError(const std::string& what, std::optional<std::size_t> example)
      : std::invalid_argument(what), example_index_(example) {}
  std::optional<std::size_t> example_index() const { return example_index_; }

 private:
  std::optional<std::size_t> example_index_;
};

struct CrfTrainingOptions {
  double regularization = 1.0;
  int iterations = 200;
  double step_size = 0.1;
};

// Penalized conditional log-likelihood of a fixed corpus, divided by the
// corpus size:
//   J(w) = (sum_i log p(y_i | x_i) - regularization / 2 * |w|^2) / N
// The parameter vector holds every (feature, label) state weight followed by
// the unblocked transition weights.
class CrfObjective {
 public:
  CrfObjective(std::span<const CrfExample> corpus, double regularization);

  std::size_t dimension() const;
  double Evaluate(std::span<const double> params,
                  std::vector<double>* gradient) const;
  CrfModel ToModel(std::span<const double> params) const;

 private:
  struct Sequence {
    std::vector<std::vector<std::size_t>> features;  // per position
    std::vector<BioLabel> labels;
  };
  double regularization_;
  std::vector<std::string> feature_names_;
  std::vector<Sequence> sequences_;
};

// Full-batch gradient ascent on CrfObjective. Each iteration starts at
// `step_size` and halves it until the objective does not decrease, so the
// trace of objective values is non-decreasing. Throws CrfTrainingError for an
// empty corpus or a token/label length mismatch.
CrfModel TrainCrf(std::span<const CrfExample> corpus,
                  const CrfTrainingOptions& options = {},
                  std::vector<double>* objective_trace = nullptr);

}  // namespace odbot::ner

#endif  // ODBOT_NER_CRF_H_
