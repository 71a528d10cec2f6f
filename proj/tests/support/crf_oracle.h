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

#ifndef ODBOT_TESTS_CRF_ORACLE_H_
#define ODBOT_TESTS_CRF_ORACLE_H_

// Brute-force reference computations for the linear-chain CRF. Everything
// here is written from the model definition, not from the decoder.

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "odbot/ner/crf.h"
#include "odbot/text/features.h"
#include "odbot/text/tokenizer.h"

namespace odbot::testing {

using ner::BioLabel;

inline bool OracleValid(const std::vector<BioLabel>& labels) {
  for (std::size_t t = 1; t < labels.size(); ++t) {
    BioLabel prev = labels[t - 1];
    BioLabel cur = labels[t];
    if (cur == BioLabel::kInsideTopic && prev != BioLabel::kBeginTopic &&
        prev != BioLabel::kInsideTopic) {
      return false;
    }
    if (cur == BioLabel::kInsideLocation && prev != BioLabel::kBeginLocation &&
        prev != BioLabel::kInsideLocation) {
      return false;
    }
  }
  return true;
}

// All 5^n label sequences in lexicographic order of label index.
inline std::vector<std::vector<BioLabel>> AllSequences(std::size_t n) {
  std::vector<std::vector<BioLabel>> out;
  std::vector<std::size_t> digits(n, 0);
  while (true) {
    std::vector<BioLabel> seq;
    for (auto d : digits) seq.push_back(static_cast<BioLabel>(d));
    out.push_back(seq);
    std::size_t i = n;
    while (i > 0 && digits[i - 1] == ner::kNumLabels - 1) digits[--i] = 0;
    if (i == 0) break;
    ++digits[i - 1];
  }
  return out;
}

inline std::vector<std::vector<BioLabel>> AllValidSequences(std::size_t n) {
  std::vector<std::vector<BioLabel>> out;
  for (auto& seq : AllSequences(n)) {
    if (OracleValid(seq)) out.push_back(std::move(seq));
  }
  return out;
}

// Score from the feature templates and raw weights.
inline double OracleScore(const ner::CrfModel& model, const std::vector<text::Token>& tokens,
                          const std::vector<BioLabel>& labels) {
  double score = 0.0;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    for (const auto& name : text::CrfFeatures(tokens, t).names) {
      if (auto f = model.FindFeature(name)) {
        score += model.state_weights(*f)[ner::Index(labels[t])];
      }
    }
    if (t > 0) score += model.transition(labels[t - 1], labels[t]);
  }
  return score;
}

// Exhaustive argmax; the first maximum in lexicographic order wins, which is
// the per-position tie order for strictly distinct scores.
inline std::vector<BioLabel> OracleDecode(const ner::CrfModel& model,
                                          const std::vector<text::Token>& tokens) {
  std::vector<BioLabel> best;
  double best_score = -std::numeric_limits<double>::infinity();
  for (const auto& seq : AllValidSequences(tokens.size())) {
    double s = OracleScore(model, tokens, seq);
    if (s > best_score) {
      best_score = s;
      best = seq;
    }
  }
  return best;
}

inline std::vector<text::Token> RandomTokens(std::mt19937_64& rng, std::size_t length) {
  static const std::vector<std::string> kWords = {"find", "Schools", "in", "Graz", "data",
                                                  "health", "care", "Linz", "2020", "?"};
  std::uniform_int_distribution<std::size_t> pick(0, kWords.size() - 1);
  std::string text;
  for (std::size_t i = 0; i < length; ++i) {
    if (i) text += ' ';
    text += kWords[pick(rng)];
  }
  return text::Tokenize(text);
}

// Registers every feature of `tokens` with N(0, scale) weights and draws
// every unblocked transition from the same distribution.
inline ner::CrfModel RandomModel(std::mt19937_64& rng, const std::vector<text::Token>& tokens,
                                 double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  ner::CrfModel model;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    for (const auto& name : text::CrfFeatures(tokens, t).names) {
      auto id = model.AddFeature(name);
      for (double& w : model.state_weights(id)) w = normal(rng);
    }
  }
  for (auto from : ner::kAllLabels) {
    for (auto to : ner::kAllLabels) {
      if (ner::IsAllowedTransition(from, to)) model.set_transition(from, to, normal(rng));
    }
  }
  return model;
}

}  // namespace odbot::testing

#endif  // ODBOT_TESTS_CRF_ORACLE_H_
