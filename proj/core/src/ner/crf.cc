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

#include "odbot/ner/crf.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "odbot/text/features.h"

namespace odbot::ner {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double LogSumExp(std::span<const double> values) {
  double max = kNegInf;
  for (double v : values) max = std::max(max, v);
  if (max == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - max);
  return max + std::log(sum);
}

std::vector<std::pair<BioLabel, BioLabel>> AllowedTransitions() {
  std::vector<std::pair<BioLabel, BioLabel>> pairs;
  for (BioLabel from : kAllLabels) {
    for (BioLabel to : kAllLabels) {
      if (IsAllowedTransition(from, to)) pairs.emplace_back(from, to);
    }
  }
  return pairs;
}

const std::vector<std::pair<BioLabel, BioLabel>>& TransitionParams() {
  static const auto* pairs =
      new std::vector<std::pair<BioLabel, BioLabel>>(AllowedTransitions());
  return *pairs;
}

// Forward (alpha) and backward (beta) tables in log space.
struct Lattice {
  std::vector<LabelScores> alpha;
  std::vector<LabelScores> beta;
  double log_z = kNegInf;
};

Lattice ForwardBackward(const std::vector<LabelScores>& emissions,
                        const TransitionMatrix& trans) {
  const std::size_t n = emissions.size();
  Lattice lattice;
  lattice.alpha.resize(n);
  lattice.beta.resize(n);
  std::array<double, kNumLabels> scratch{};

  lattice.alpha[0] = emissions[0];
  for (std::size_t t = 1; t < n; ++t) {
    for (std::size_t y = 0; y < kNumLabels; ++y) {
      for (std::size_t i = 0; i < kNumLabels; ++i) {
        scratch[i] = lattice.alpha[t - 1][i] + trans[i][y];
      }
      lattice.alpha[t][y] = emissions[t][y] + LogSumExp(scratch);
    }
  }
  lattice.beta[n - 1].fill(0.0);
  for (std::size_t t = n - 1; t-- > 0;) {
    for (std::size_t y = 0; y < kNumLabels; ++y) {
      for (std::size_t j = 0; j < kNumLabels; ++j) {
        scratch[j] = trans[y][j] + emissions[t + 1][j] + lattice.beta[t + 1][j];
      }
      lattice.beta[t][y] = LogSumExp(scratch);
    }
  }
  lattice.log_z = LogSumExp(lattice.alpha[n - 1]);
  return lattice;
}

void RequireTokens(std::span<const text::Token> tokens, const char* who) {
  if (tokens.empty()) {
    throw std::invalid_argument(std::string(who) + ": empty token sequence");
  }
}

}  // namespace

CrfModel::CrfModel() {
  for (BioLabel from : kAllLabels) {
    for (BioLabel to : kAllLabels) {
      transitions_[Index(from)][Index(to)] =
          IsAllowedTransition(from, to) ? 0.0 : kNegInf;
    }
  }
}

std::size_t CrfModel::AddFeature(const std::string& name) {
  auto [it, inserted] = ids_.emplace(name, names_.size());
  if (inserted) {
    names_.push_back(name);
    state_.push_back(LabelScores{});
  }
  return it->second;
}

std::optional<std::size_t> CrfModel::FindFeature(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

void CrfModel::set_transition(BioLabel from, BioLabel to, double weight) {
  if (!IsAllowedTransition(from, to)) {
    if (weight == kNegInf) return;
    throw std::invalid_argument("transition " + std::string(LabelName(from)) +
                                " -> " + std::string(LabelName(to)) +
                                " is hard-blocked");
  }
  transitions_[Index(from)][Index(to)] = weight;
}

std::vector<LabelScores> CrfModel::Emissions(
    std::span<const text::Token> tokens) const {
  std::vector<LabelScores> emissions(tokens.size(), LabelScores{});
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    for (const auto& name : text::CrfFeatures(tokens, t).names) {
      auto id = FindFeature(name);
      if (!id) continue;
      for (std::size_t y = 0; y < kNumLabels; ++y) {
        emissions[t][y] += state_[*id][y];
      }
    }
  }
  return emissions;
}

double PathScore(const CrfModel& model, std::span<const text::Token> tokens,
                 std::span<const BioLabel> labels) {
  if (tokens.size() != labels.size()) {
    throw std::invalid_argument("PathScore: token/label length mismatch");
  }
  auto emissions = model.Emissions(tokens);
  double score = 0.0;
  for (std::size_t t = 0; t < labels.size(); ++t) {
    score += emissions[t][Index(labels[t])];
    if (t > 0) score += model.transition(labels[t - 1], labels[t]);
  }
  return score;
}

double LogPartition(const CrfModel& model,
                    std::span<const text::Token> tokens) {
  RequireTokens(tokens, "LogPartition");
  return ForwardBackward(model.Emissions(tokens), model.transitions()).log_z;
}

std::vector<BioLabel> ViterbiDecode(const CrfModel& model,
                                    std::span<const text::Token> tokens) {
  RequireTokens(tokens, "ViterbiDecode");
  const auto emissions = model.Emissions(tokens);
  const auto& trans = model.transitions();
  const std::size_t n = tokens.size();

  LabelScores best = emissions[0];
  std::vector<std::array<std::size_t, kNumLabels>> backpointers(n);
  for (std::size_t t = 1; t < n; ++t) {
    LabelScores next{};
    for (std::size_t y = 0; y < kNumLabels; ++y) {
      double top = kNegInf;
      std::size_t arg = 0;
      for (std::size_t i = 0; i < kNumLabels; ++i) {
        double s = best[i] + trans[i][y];
        if (s > top) {
          top = s;
          arg = i;
        }
      }
      next[y] = top + emissions[t][y];
      backpointers[t][y] = arg;
    }
    best = next;
  }

  std::size_t last = 0;
  for (std::size_t y = 1; y < kNumLabels; ++y) {
    if (best[y] > best[last]) last = y;
  }
  std::vector<BioLabel> path(n);
  path[n - 1] = static_cast<BioLabel>(last);
  for (std::size_t t = n - 1; t > 0; --t) {
    last = backpointers[t][last];
    path[t - 1] = static_cast<BioLabel>(last);
  }
  return path;
}

CrfObjective::CrfObjective(std::span<const CrfExample> corpus,
                           double regularization)
    : regularization_(regularization) {
  if (corpus.empty()) {
    throw CrfTrainingError("CRF training corpus is empty", std::nullopt);
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& example = corpus[i];
    if (example.tokens.size() != example.labels.size()) {
      throw CrfTrainingError(
          "example " + std::to_string(i) + " has " +
              std::to_string(example.tokens.size()) + " tokens but " +
              std::to_string(example.labels.size()) + " labels",
          i);
    }
    if (example.tokens.empty()) {
      throw CrfTrainingError("example " + std::to_string(i) + " is empty", i);
    }
    if (!IsValidSequence(example.labels)) {
      throw CrfTrainingError(
          "example " + std::to_string(i) + " has an invalid BIO sequence", i);
    }
    Sequence seq;
    seq.labels = example.labels;
    for (std::size_t t = 0; t < example.tokens.size(); ++t) {
      std::vector<std::size_t> ids;
      for (auto& name : text::CrfFeatures(example.tokens, t).names) {
        auto [it, inserted] = index.emplace(name, feature_names_.size());
        if (inserted) feature_names_.push_back(name);
        ids.push_back(it->second);
      }
      seq.features.push_back(std::move(ids));
    }
    sequences_.push_back(std::move(seq));
  }
}

std::size_t CrfObjective::dimension() const {
  return feature_names_.size() * kNumLabels + TransitionParams().size();
}

double CrfObjective::Evaluate(std::span<const double> params,
                              std::vector<double>* gradient) const {
  if (params.size() != dimension()) {
    throw std::invalid_argument("CrfObjective: parameter size mismatch");
  }
  const std::size_t state_dim = feature_names_.size() * kNumLabels;
  const auto& trans_params = TransitionParams();

  TransitionMatrix trans;
  for (auto& row : trans) row.fill(kNegInf);
  for (std::size_t k = 0; k < trans_params.size(); ++k) {
    auto [from, to] = trans_params[k];
    trans[Index(from)][Index(to)] = params[state_dim + k];
  }

  if (gradient != nullptr) gradient->assign(params.size(), 0.0);
  TransitionMatrix trans_grad{};

  double log_likelihood = 0.0;
  for (const auto& seq : sequences_) {
    const std::size_t n = seq.labels.size();
    std::vector<LabelScores> emissions(n, LabelScores{});
    for (std::size_t t = 0; t < n; ++t) {
      for (std::size_t f : seq.features[t]) {
        for (std::size_t y = 0; y < kNumLabels; ++y) {
          emissions[t][y] += params[f * kNumLabels + y];
        }
      }
    }
    Lattice lattice = ForwardBackward(emissions, trans);

    double gold = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      gold += emissions[t][Index(seq.labels[t])];
      if (t > 0) gold += trans[Index(seq.labels[t - 1])][Index(seq.labels[t])];
    }
    log_likelihood += gold - lattice.log_z;

    if (gradient == nullptr) continue;
    auto& g = *gradient;
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t gold_y = Index(seq.labels[t]);
      for (std::size_t y = 0; y < kNumLabels; ++y) {
        double marginal =
            std::exp(lattice.alpha[t][y] + lattice.beta[t][y] - lattice.log_z);
        double delta = (y == gold_y ? 1.0 : 0.0) - marginal;
        for (std::size_t f : seq.features[t]) g[f * kNumLabels + y] += delta;
      }
      if (t == 0) continue;
      trans_grad[Index(seq.labels[t - 1])][gold_y] += 1.0;
      for (std::size_t a = 0; a < kNumLabels; ++a) {
        for (std::size_t b = 0; b < kNumLabels; ++b) {
          if (trans[a][b] == kNegInf) continue;
          trans_grad[a][b] -=
              std::exp(lattice.alpha[t - 1][a] + trans[a][b] +
                       emissions[t][b] + lattice.beta[t][b] - lattice.log_z);
        }
      }
    }
  }

  double norm_sq = 0.0;
  for (double w : params) norm_sq += w * w;
  const double count = static_cast<double>(sequences_.size());
  const double objective =
      (log_likelihood - 0.5 * regularization_ * norm_sq) / count;

  if (gradient != nullptr) {
    auto& g = *gradient;
    for (std::size_t k = 0; k < trans_params.size(); ++k) {
      auto [from, to] = trans_params[k];
      g[state_dim + k] = trans_grad[Index(from)][Index(to)];
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
      g[i] = (g[i] - regularization_ * params[i]) / count;
    }
  }
  return objective;
}

CrfModel CrfObjective::ToModel(std::span<const double> params) const {
  if (params.size() != dimension()) {
    throw std::invalid_argument("CrfObjective: parameter size mismatch");
  }
  CrfModel model;
  model.set_regularization(regularization_);
  for (std::size_t f = 0; f < feature_names_.size(); ++f) {
    auto& row = model.state_weights(model.AddFeature(feature_names_[f]));
    for (std::size_t y = 0; y < kNumLabels; ++y) {
      row[y] = params[f * kNumLabels + y];
    }
  }
  const std::size_t state_dim = feature_names_.size() * kNumLabels;
  const auto& trans_params = TransitionParams();
  for (std::size_t k = 0; k < trans_params.size(); ++k) {
    model.set_transition(trans_params[k].first, trans_params[k].second,
                         params[state_dim + k]);
  }
  return model;
}

CrfModel TrainCrf(std::span<const CrfExample> corpus,
                  const CrfTrainingOptions& options,
                  std::vector<double>* objective_trace) {
  CrfObjective objective(corpus, options.regularization);
  std::vector<double> params(objective.dimension(), 0.0);
  std::vector<double> gradient;
  double value = objective.Evaluate(params, &gradient);
  if (objective_trace != nullptr) {
    objective_trace->assign(1, value);
  }

  std::vector<double> candidate(params.size());
  std::vector<double> candidate_gradient;
  for (int iter = 0; iter < options.iterations; ++iter) {
    double step = options.step_size;
    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving, step *= 0.5) {
      for (std::size_t i = 0; i < params.size(); ++i) {
        candidate[i] = params[i] + step * gradient[i];
      }
      double next = objective.Evaluate(candidate, &candidate_gradient);
      if (next >= value) {
        params.swap(candidate);
        gradient.swap(candidate_gradient);
        value = next;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;  // at a stationary point up to rounding
    if (objective_trace != nullptr) objective_trace->push_back(value);
  }
  return objective.ToModel(params);
}

}  // namespace odbot::ner
