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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "crf_oracle.h"
#include "odbot/ner/bio.h"
#include "odbot/ner/crf.h"
#include "odbot/ner/extractor.h"
#include "odbot/ner/gazetteer.h"
#include "odbot/service/corpus.h"
#include "test_support.h"

namespace odbot::ner {
namespace {

using testing::AllSequences;
using testing::AllValidSequences;
using testing::OracleDecode;
using testing::OracleScore;
using testing::OracleValid;
using testing::RandomModel;
using testing::RandomTokens;

constexpr BioLabel O = BioLabel::kOutside;
constexpr BioLabel BT = BioLabel::kBeginTopic;
constexpr BioLabel IT = BioLabel::kInsideTopic;
constexpr BioLabel BL = BioLabel::kBeginLocation;
constexpr BioLabel IL = BioLabel::kInsideLocation;

double LogSumExp(const std::vector<double>& xs) {
  double m = *std::max_element(xs.begin(), xs.end());
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

CrfExample Example(const std::string& text, std::vector<BioLabel> labels) {
  return {text::Tokenize(text), std::move(labels)};
}

TEST(Bio, LabelNamesRoundTrip) {
  for (auto label : kAllLabels) EXPECT_EQ(ParseLabel(LabelName(label)), label);
  EXPECT_EQ(LabelName(BT), "B-topic");
  EXPECT_EQ(LabelName(IL), "I-location");
  EXPECT_FALSE(ParseLabel("B-person"));
}

TEST(Bio, TransitionRuleMatchesOracleOnAllPairs) {
  for (auto from : kAllLabels) {
    for (auto to : kAllLabels) {
      EXPECT_EQ(IsAllowedTransition(from, to), OracleValid({from, to}))
          << LabelName(from) << "->" << LabelName(to);
    }
  }
}

TEST(Bio, SequenceValidityMatchesOracle) {
  for (std::size_t n = 0; n <= 4; ++n) {
    for (const auto& seq : n == 0 ? std::vector<std::vector<BioLabel>>{{}} : AllSequences(n)) {
      EXPECT_EQ(IsValidSequence(seq), OracleValid(seq));
    }
  }
}

TEST(Bio, CollapseSpans) {
  std::vector<BioLabel> labels = {O, BT, IT, O, BL, BL, IL};
  auto spans = CollapseSpans(labels);
  ASSERT_EQ(spans.size(), 3u);
  EXPECT_EQ(spans[0].type, EntityType::kTopic);
  EXPECT_EQ(spans[0].first_token, 1u);
  EXPECT_EQ(spans[0].last_token, 2u);
  EXPECT_EQ(spans[1].first_token, 4u);
  EXPECT_EQ(spans[1].last_token, 4u);
  EXPECT_EQ(spans[2].first_token, 5u);
  EXPECT_EQ(spans[2].last_token, 6u);
}

TEST(Bio, StrayInsideOpensSpan) {
  std::vector<BioLabel> labels = {IT, BL, IT};
  auto spans = CollapseSpans(labels);
  ASSERT_EQ(spans.size(), 3u);
  EXPECT_EQ(spans[0].type, EntityType::kTopic);
  EXPECT_EQ(spans[2].type, EntityType::kTopic);
}

TEST(CrfModel, ForbiddenTransitionsArePinned) {
  CrfModel model;
  for (auto from : kAllLabels) {
    for (auto to : kAllLabels) {
      if (IsAllowedTransition(from, to)) {
        EXPECT_EQ(model.transition(from, to), 0.0);
      } else {
        EXPECT_EQ(model.transition(from, to), -INFINITY);
        EXPECT_THROW(model.set_transition(from, to, 1.0), std::invalid_argument);
      }
    }
  }
}

TEST(LogPartition, ZeroModelSingleToken) {
  CrfModel model;
  EXPECT_NEAR(LogPartition(model, text::Tokenize("graz")), std::log(5.0), 1e-12);
}

TEST(LogPartition, ZeroModelTwoTokensCountsValidPairs) {
  // 25 pairs minus the 6 that put I-X after a label other than B-X/I-X.
  const auto valid = AllValidSequences(2).size();
  ASSERT_EQ(valid, 19u);
  CrfModel model;
  EXPECT_NEAR(LogPartition(model, text::Tokenize("find schools")),
              std::log(static_cast<double>(valid)), 1e-12);
}

TEST(LogPartition, EmptyInputRejected) {
  CrfModel model;
  EXPECT_THROW(LogPartition(model, {}), std::invalid_argument);
  EXPECT_THROW(ViterbiDecode(model, {}), std::invalid_argument);
}

TEST(LogPartition, MatchesEnumerationAndBoundsViterbi) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    auto tokens = RandomTokens(rng, 1 + trial % 4);
    auto model = RandomModel(rng, tokens, 1.5);
    std::vector<double> scores;
    for (const auto& seq : AllValidSequences(tokens.size())) {
      scores.push_back(OracleScore(model, tokens, seq));
    }
    double log_z = LogPartition(model, tokens);
    EXPECT_NEAR(log_z, LogSumExp(scores), 1e-9);
    EXPECT_GE(log_z + 1e-12, PathScore(model, tokens, ViterbiDecode(model, tokens)));
  }
}

TEST(PathScore, MatchesOracleAndRejectsInvalid) {
  std::mt19937_64 rng(22);
  auto tokens = RandomTokens(rng, 3);
  auto model = RandomModel(rng, tokens);
  for (const auto& seq : AllSequences(3)) {
    double score = PathScore(model, tokens, seq);
    if (OracleValid(seq)) {
      EXPECT_NEAR(score, OracleScore(model, tokens, seq), 1e-12);
    } else {
      EXPECT_EQ(score, -INFINITY);
    }
  }
}

TEST(PathProbability, SumsToOne) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    auto tokens = RandomTokens(rng, 1 + trial % 4);
    auto model = RandomModel(rng, tokens, 2.0);
    double log_z = LogPartition(model, tokens);
    double total = 0.0;
    for (const auto& seq : AllValidSequences(tokens.size())) {
      total += std::exp(PathScore(model, tokens, seq) - log_z);
    }
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
}

TEST(Viterbi, ZeroModelPrefersOutside) {
  CrfModel model;
  EXPECT_EQ(ViterbiDecode(model, text::Tokenize("a b c")), (std::vector<BioLabel>{O, O, O}));
}

TEST(Viterbi, TieBreakUsesDeclarationOrder) {
  CrfModel model;
  auto id = model.AddFeature("w0=graz");
  model.state_weights(id)[Index(BT)] = 2.0;
  model.state_weights(id)[Index(BL)] = 2.0;
  EXPECT_EQ(ViterbiDecode(model, text::Tokenize("graz")), (std::vector<BioLabel>{BT}));
}

TEST(Viterbi, MatchesExhaustiveArgmax) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 200; ++trial) {
    auto tokens = RandomTokens(rng, 1 + trial % 6);
    auto model = RandomModel(rng, tokens);
    auto decoded = ViterbiDecode(model, tokens);
    ASSERT_TRUE(IsValidSequence(decoded));
    ASSERT_EQ(decoded, OracleDecode(model, tokens)) << "trial " << trial;
  }
}

TEST(Viterbi, NeverEmitsInvalidSequenceEvenWithStrongInsideWeights) {
  CrfModel model;
  auto id = model.AddFeature("w0=x");
  model.state_weights(id)[Index(IT)] = 50.0;
  model.state_weights(id)[Index(IL)] = 49.0;
  auto labels = ViterbiDecode(model, text::Tokenize("x x x"));
  EXPECT_TRUE(IsValidSequence(labels));
  EXPECT_EQ(labels.front(), IT);
}

TEST(CrfObjective, ValueMatchesEnumeration) {
  std::vector<CrfExample> corpus = {Example("find schools in Graz", {O, BT, O, BL}),
                                    Example("health care data", {BT, IT, O})};
  const double reg = 0.7;
  CrfObjective objective(corpus, reg);
  std::mt19937_64 rng(25);
  std::normal_distribution<double> normal(0.0, 0.5);
  std::vector<double> params(objective.dimension());
  for (double& p : params) p = normal(rng);

  auto model = objective.ToModel(params);
  double total = 0.0;
  for (const auto& ex : corpus) {
    std::vector<double> scores;
    for (const auto& seq : AllValidSequences(ex.tokens.size())) {
      scores.push_back(OracleScore(model, ex.tokens, seq));
    }
    total += OracleScore(model, ex.tokens, ex.labels) - LogSumExp(scores);
  }
  double norm = 0.0;
  for (double p : params) norm += p * p;
  double expected = (total - reg / 2 * norm) / static_cast<double>(corpus.size());
  EXPECT_NEAR(objective.Evaluate(params, nullptr), expected, 1e-9);
}

TEST(CrfObjective, GradientMatchesCentralDifferences) {
  std::vector<CrfExample> corpus = {Example("find schools Graz", {O, BT, BL}),
                                    Example("health care Linz", {BT, IT, BL}),
                                    Example("data in Vienna", {O, O, BL})};
  CrfObjective objective(corpus, 1.0);
  std::mt19937_64 rng(26);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double h = 1e-5;
  for (int point = 0; point < 10; ++point) {
    std::vector<double> params(objective.dimension());
    for (double& p : params) p = normal(rng);
    std::vector<double> gradient;
    objective.Evaluate(params, &gradient);
    ASSERT_EQ(gradient.size(), params.size());
    for (std::size_t k = 0; k < params.size(); ++k) {
      auto plus = params;
      auto minus = params;
      plus[k] += h;
      minus[k] -= h;
      double numeric =
          (objective.Evaluate(plus, nullptr) - objective.Evaluate(minus, nullptr)) / (2 * h);
      double scale = std::max({1.0, std::abs(numeric), std::abs(gradient[k])});
      ASSERT_LE(std::abs(numeric - gradient[k]) / scale, 1e-4)
          << "point " << point << " component " << k;
    }
  }
}

TEST(CrfObjective, RejectsBadCorpora) {
  std::vector<CrfExample> empty;
  EXPECT_THROW(CrfObjective(empty, 1.0), CrfTrainingError);
  std::vector<CrfExample> mismatch = {Example("a b", {O, O}), Example("a b c", {O, O})};
  try {
    CrfObjective objective(mismatch, 1.0);
    FAIL() << "length mismatch accepted";
  } catch (const CrfTrainingError& e) {
    EXPECT_EQ(e.example_index(), 1u);
  }
  std::vector<CrfExample> invalid = {Example("a b", {O, IT})};
  EXPECT_THROW(CrfObjective(invalid, 1.0), CrfTrainingError);
}

TEST(TrainCrf, ObjectiveTraceIsNonDecreasing) {
  auto corpus = service::ToCrfExamples(service::LoadNluCorpus(testing::DataDir() / "nlu.yml"));
  std::vector<double> trace;
  CrfTrainingOptions options;
  options.iterations = 40;
  TrainCrf(corpus, options, &trace);
  ASSERT_GE(trace.size(), 2u);
  ASSERT_LE(trace.size(), 41u);
  for (std::size_t i = 1; i < trace.size(); ++i) EXPECT_GE(trace[i], trace[i - 1]);
  EXPECT_GT(trace.back(), trace.front());
}

TEST(TrainCrf, AllOutsideCorpusDecodesAllOutside) {
  std::vector<CrfExample> corpus = {Example("hello there", {O, O}), Example("bye", {O}),
                                    Example("thanks a lot", {O, O, O})};
  auto model = TrainCrf(corpus);
  for (const char* text : {"hello", "find schools in Graz", "completely new words here"}) {
    auto labels = ViterbiDecode(model, text::Tokenize(text));
    EXPECT_TRUE(std::all_of(labels.begin(), labels.end(), [](auto l) { return l == O; }))
        << text;
  }
}

TEST(TrainCrf, LearnsLocationWord) {
  std::vector<CrfExample> corpus = {Example("graz", {BL}), Example("data for graz", {O, O, BL}),
                                    Example("schools", {BT}), Example("find schools", {O, BT})};
  auto model = TrainCrf(corpus);
  EXPECT_EQ(ViterbiDecode(model, text::Tokenize("graz")), (std::vector<BioLabel>{BL}));
}

TEST(TrainCrf, ForbiddenTransitionsStayBlocked) {
  std::vector<CrfExample> corpus = {Example("health care", {BT, IT})};
  auto model = TrainCrf(corpus);
  for (auto from : kAllLabels) {
    for (auto to : kAllLabels) {
      if (!IsAllowedTransition(from, to)) EXPECT_EQ(model.transition(from, to), -INFINITY);
    }
  }
}

TEST(TrainCrf, BundledModelTagsSchoolsAndGraz) {
  const auto& crf = testing::BundledModels().crf;
  auto labels = ViterbiDecode(crf, text::Tokenize("Find schools in Graz"));
  EXPECT_EQ(labels, (std::vector<BioLabel>{O, BT, O, BL}));
}

// Reference longest-match scan written directly from the rule.
std::vector<std::pair<std::size_t, std::size_t>> OracleLongestMatch(
    const std::set<std::vector<std::string>>& entries, const std::vector<std::string>& words) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t i = 0;
  while (i < words.size()) {
    std::size_t best = 0;
    for (std::size_t len = 1; i + len <= words.size(); ++len) {
      std::vector<std::string> candidate(words.begin() + i, words.begin() + i + len);
      if (entries.contains(candidate)) best = len;
    }
    if (best > 0) {
      out.emplace_back(i, i + best);
      i += best;
    } else {
      ++i;
    }
  }
  return out;
}

TEST(Gazetteer, EmptyMatchesNothing) {
  Gazetteer gazetteer;
  auto tokens = text::Tokenize("datasets about Linz");
  EXPECT_TRUE(gazetteer.Lookup("datasets about Linz", tokens).empty());
}

TEST(Gazetteer, SingleWordMatch) {
  std::vector<std::string> names = {"linz"};
  auto gazetteer = Gazetteer::FromNames(names);
  const std::string text = "datasets about Linz";
  auto mentions = gazetteer.Lookup(text, text::Tokenize(text));
  ASSERT_EQ(mentions.size(), 1u);
  EXPECT_EQ(mentions[0].surface, "Linz");
  EXPECT_EQ(mentions[0].start, 15u);
  EXPECT_EQ(mentions[0].end, 19u);
  EXPECT_EQ(mentions[0].type, EntityType::kLocation);
  EXPECT_EQ(mentions[0].extractor, Extractor::kGazetteer);
  EXPECT_EQ(mentions[0].confidence, 1.0);
}

TEST(Gazetteer, LongestMatchWins) {
  std::vector<std::string> names = {"bad", "Bad Ischl"};
  auto gazetteer = Gazetteer::FromNames(names);
  EXPECT_EQ(gazetteer.max_entry_length(), 2u);
  const std::string text = "near Bad Ischl";
  auto mentions = gazetteer.Lookup(text, text::Tokenize(text));
  ASSERT_EQ(mentions.size(), 1u);
  EXPECT_EQ(mentions[0].surface, "Bad Ischl");
}

TEST(Gazetteer, MatchesBruteForceScanner) {
  std::mt19937_64 rng(27);
  const std::vector<std::string> alphabet = {"a", "b", "c", "d"};
  std::uniform_int_distribution<std::size_t> letter(0, alphabet.size() - 1);
  std::uniform_int_distribution<std::size_t> entry_len(1, 3);
  std::uniform_int_distribution<std::size_t> text_len(0, 10);
  for (int trial = 0; trial < 500; ++trial) {
    std::set<std::vector<std::string>> entries;
    std::vector<std::string> names;
    for (int e = 0; e < 4; ++e) {
      std::vector<std::string> entry;
      std::string name;
      for (std::size_t k = 0, n = entry_len(rng); k < n; ++k) {
        entry.push_back(alphabet[letter(rng)]);
        name += (k ? " " : "") + entry.back();
      }
      entries.insert(entry);
      names.push_back(name);
    }
    std::vector<std::string> words;
    std::string text;
    for (std::size_t k = 0, n = text_len(rng); k < n; ++k) {
      words.push_back(alphabet[letter(rng)]);
      text += (k ? " " : "") + words.back();
    }
    auto tokens = text::Tokenize(text);
    auto mentions = Gazetteer::FromNames(names).Lookup(text, tokens);
    auto expected = OracleLongestMatch(entries, words);
    ASSERT_EQ(mentions.size(), expected.size()) << text;
    for (std::size_t m = 0; m < mentions.size(); ++m) {
      EXPECT_EQ(mentions[m].start, tokens[expected[m].first].start);
      EXPECT_EQ(mentions[m].end, tokens[expected[m].second - 1].end);
    }
  }
}

TEST(Gazetteer, FileSkipsCommentsAndBlankLines) {
  auto dir = testing::ScratchDir("gazetteer");
  {
    std::ofstream out(dir / "places.txt");
    out << "# header\n\nGraz\n  \nSt. P\xC3\xB6lten\n# Linz\n";
  }
  auto gazetteer = Gazetteer::FromFile(dir / "places.txt");
  EXPECT_EQ(gazetteer.size(), 2u);
  std::vector<std::string> linz = {"linz"};
  EXPECT_FALSE(gazetteer.Contains(linz));
  std::vector<std::string> stp = {"st", ".", "p\xC3\xB6lten"};
  EXPECT_TRUE(gazetteer.Contains(stp));
  EXPECT_THROW(Gazetteer::FromFile(dir / "missing.txt"), std::runtime_error);
}

TEST(Extract, GazetteerWinsOverlap) {
  CrfModel model;
  auto id = model.AddFeature("w0=linz");
  model.state_weights(id)[Index(BT)] = 10.0;
  std::vector<std::string> names = {"Linz"};
  auto gazetteer = Gazetteer::FromNames(names);
  auto crf_only = ExtractEntities(model, Gazetteer{}, "data for Linz");
  ASSERT_EQ(crf_only.size(), 1u);
  EXPECT_EQ(crf_only[0].type, EntityType::kTopic);
  auto merged = ExtractEntities(model, gazetteer, "data for Linz");
  ASSERT_EQ(merged.size(), 1u);
  EXPECT_EQ(merged[0].type, EntityType::kLocation);
  EXPECT_EQ(merged[0].extractor, Extractor::kGazetteer);
}

TEST(Extract, CrfConfidenceIsPathPosterior) {
  std::mt19937_64 rng(28);
  auto tokens = RandomTokens(rng, 4);
  auto model = RandomModel(rng, tokens, 3.0);
  std::string text;
  for (const auto& t : tokens) text += (text.empty() ? "" : " ") + t.text;
  auto mentions = CrfMentions(model, text, text::Tokenize(text));
  auto labels = ViterbiDecode(model, tokens);
  double expected = std::exp(PathScore(model, tokens, labels) - LogPartition(model, tokens));
  for (const auto& m : mentions) EXPECT_NEAR(m.confidence, expected, 1e-12);
}

TEST(Extract, BundledFindSchoolsInGraz) {
  auto pipeline = testing::BundledPipeline();
  auto mentions = ExtractEntities(pipeline->crf, pipeline->gazetteer, "Find schools in Graz");
  ASSERT_EQ(mentions.size(), 2u);
  EXPECT_EQ(mentions[0].type, EntityType::kTopic);
  EXPECT_EQ(mentions[0].surface, "schools");
  EXPECT_EQ(mentions[0].extractor, Extractor::kCrf);
  EXPECT_EQ(mentions[1].type, EntityType::kLocation);
  EXPECT_EQ(mentions[1].surface, "Graz");
}

TEST(Extract, BundledGreetingHasNoEntities) {
  auto pipeline = testing::BundledPipeline();
  EXPECT_TRUE(ExtractEntities(pipeline->crf, pipeline->gazetteer, "hello").empty());
}

TEST(Extract, GazetteerOnlyCity) {
  auto pipeline = testing::BundledPipeline();
  auto corpus = service::LoadNluCorpus(testing::DataDir() / "nlu.yml");
  for (const auto& ex : corpus.examples) {
    ASSERT_EQ(text::Lowercase(ex.text).find("eisenstadt"), std::string::npos);
  }
  auto mentions = ExtractEntities(pipeline->crf, pipeline->gazetteer, "data for Eisenstadt");
  ASSERT_EQ(mentions.size(), 1u);
  EXPECT_EQ(mentions[0].type, EntityType::kLocation);
  EXPECT_EQ(mentions[0].extractor, Extractor::kGazetteer);
  EXPECT_EQ(mentions[0].surface, "Eisenstadt");
}

TEST(ExtractProperty, SortedDisjointAndFaithful) {
  auto pipeline = testing::BundledPipeline();
  std::mt19937_64 rng(29);
  const std::vector<std::string> words = {"find", "schools", "in", "Graz", "health", "care",
                                          "Bad", "Eisenstadt", "St", ".", "Pölten", "data",
                                          "about", "Vienna", "?", "tourism"};
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  for (int trial = 0; trial < 300; ++trial) {
    std::string text;
    for (int k = 0; k < 1 + trial % 8; ++k) text += (k ? " " : "") + words[pick(rng)];
    auto mentions = ExtractEntities(pipeline->crf, pipeline->gazetteer, text);
    for (std::size_t m = 0; m < mentions.size(); ++m) {
      const auto& x = mentions[m];
      ASSERT_LT(x.start, x.end);
      ASSERT_EQ(text.substr(x.start, x.end - x.start), x.surface);
      ASSERT_GE(x.confidence, 0.0);
      ASSERT_LE(x.confidence, 1.0);
      if (m > 0) ASSERT_LE(mentions[m - 1].end, x.start) << text;
    }
  }
}

}  // namespace
}  // namespace odbot::ner
