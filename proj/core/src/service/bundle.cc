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

#include "odbot/service/bundle.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "odbot/ner/extractor.h"

namespace odbot::service {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void WriteJson(const fs::path& path, const json& value) {
  std::ofstream out(path);
  if (!out) throw BundleError("cannot write " + path.string());
  out << value.dump(1) << '\n';
}

json ReadJson(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw BundleError("missing bundle file " + path.string());
  auto value = json::parse(in, nullptr, false);
  if (value.is_discarded()) throw BundleError("malformed bundle file " + path.string());
  return value;
}

json CrfToJson(const ner::CrfModel& model) {
  json features = json::array();
  json weights = json::array();
  for (std::size_t f = 0; f < model.num_features(); ++f) {
    features.push_back(model.feature_names()[f]);
    weights.push_back(model.state_weights(f));
  }
  json transitions = json::array();
  for (const auto& row : model.transitions()) {
    json out_row = json::array();
    for (double w : row) {
      if (std::isinf(w)) {
        out_row.push_back(nullptr);
      } else {
        out_row.push_back(w);
      }
    }
    transitions.push_back(out_row);
  }
  return {{"regularization", model.regularization()},
          {"features", features},
          {"state_weights", weights},
          {"transitions", transitions}};
}

ner::CrfModel CrfFromJson(const json& j) {
  ner::CrfModel model;
  model.set_regularization(j.at("regularization").get<double>());
  const auto& features = j.at("features");
  const auto& weights = j.at("state_weights");
  if (features.size() != weights.size()) throw BundleError("crf.json: size mismatch");
  for (std::size_t f = 0; f < features.size(); ++f) {
    auto& row = model.state_weights(model.AddFeature(features[f].get<std::string>()));
    row = weights[f].get<ner::LabelScores>();
  }
  const auto& transitions = j.at("transitions");
  for (ner::BioLabel from : ner::kAllLabels) {
    for (ner::BioLabel to : ner::kAllLabels) {
      const auto& w = transitions.at(ner::Index(from)).at(ner::Index(to));
      model.set_transition(from, to, w.is_null() ? kNegInf : w.get<double>());
    }
  }
  return model;
}

json IntentToJson(const intent::IntentModel& model) {
  json weights = json::object();
  for (intent::Intent i : intent::kAllIntents) {
    weights[std::string(intent::IntentName(i))] = {
        {"bias", model.bias[intent::Index(i)]},
        {"weights", model.weights[intent::Index(i)]}};
  }
  return {{"regularization", model.regularization},
          {"vocabulary", model.vocabulary.names()},
          {"classes", weights}};
}

intent::IntentModel IntentFromJson(const json& j) {
  intent::IntentModel model;
  model.regularization = j.at("regularization").get<double>();
  for (const auto& name : j.at("vocabulary")) model.vocabulary.Intern(name.get<std::string>());
  const auto& classes = j.at("classes");
  for (intent::Intent i : intent::kAllIntents) {
    const auto& c = classes.at(std::string(intent::IntentName(i)));
    model.bias[intent::Index(i)] = c.at("bias").get<double>();
    model.weights[intent::Index(i)] = c.at("weights").get<std::vector<double>>();
    if (model.weights[intent::Index(i)].size() != model.vocabulary.size()) {
      throw BundleError("intent.json: weight vector size mismatch");
    }
  }
  return model;
}

json PolicyToJson(const dialogue::PolicyModel& p) {
  return {{"seed", p.seed},
          {"layout_version", p.layout_version},
          {"hidden_units", dialogue::PolicyModel::kHiddenUnits},
          {"hidden_weights", p.hidden_weights},
          {"hidden_bias", p.hidden_bias},
          {"output_weights", p.output_weights},
          {"output_bias", p.output_bias}};
}

dialogue::PolicyModel PolicyFromJson(const json& j) {
  using dialogue::PolicyModel;
  PolicyModel p;
  p.seed = j.at("seed").get<std::uint64_t>();
  p.layout_version = j.at("layout_version").get<int>();
  p.hidden_weights = j.at("hidden_weights").get<std::vector<double>>();
  p.hidden_bias = j.at("hidden_bias").get<std::vector<double>>();
  p.output_weights = j.at("output_weights").get<std::vector<double>>();
  p.output_bias = j.at("output_bias").get<std::vector<double>>();
  if (p.layout_version != dialogue::kStateLayoutVersion ||
      j.at("hidden_units").get<std::size_t>() != PolicyModel::kHiddenUnits ||
      p.hidden_weights.size() != PolicyModel::kHiddenUnits * dialogue::kStateSize ||
      p.hidden_bias.size() != PolicyModel::kHiddenUnits ||
      p.output_weights.size() != dialogue::kNumActions * PolicyModel::kHiddenUnits ||
      p.output_bias.size() != dialogue::kNumActions) {
    throw BundleError("policy.json does not match this build's network shape");
  }
  return p;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

std::string Sha256File(const fs::path& path) { return Sha256Hex(ReadFile(path)); }

void SaveBundle(const ModelBundle& bundle, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw BundleError("cannot create " + dir.string() + ": " + ec.message());
  const auto& m = bundle.manifest;
  WriteJson(dir / "manifest.json", {{"format_version", m.format_version},
                                    {"state_layout_version", m.state_layout_version},
                                    {"seed", m.seed},
                                    {"nlu_sha256", m.nlu_sha256},
                                    {"stories_sha256", m.stories_sha256},
                                    {"templates_sha256", m.templates_sha256},
                                    {"model_version", m.model_version}});
  WriteJson(dir / "crf.json", CrfToJson(bundle.crf));
  WriteJson(dir / "intent.json", IntentToJson(bundle.intent_model));
  WriteJson(dir / "policy.json", PolicyToJson(bundle.policy));
}

ModelBundle LoadBundle(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw BundleError("model bundle not found: " + dir.string());
  ModelBundle bundle;
  try {
    auto manifest = ReadJson(dir / "manifest.json");
    auto& m = bundle.manifest;
    m.format_version = manifest.at("format_version").get<int>();
    if (m.format_version != kBundleFormatVersion) {
      throw BundleError("bundle format version " + std::to_string(m.format_version) +
                        " is not supported (expected " +
                        std::to_string(kBundleFormatVersion) + ")");
    }
    m.state_layout_version = manifest.at("state_layout_version").get<int>();
    if (m.state_layout_version != dialogue::kStateLayoutVersion) {
      throw BundleError("bundle was trained with state layout " +
                        std::to_string(m.state_layout_version));
    }
    m.seed = manifest.at("seed").get<std::uint64_t>();
    m.nlu_sha256 = manifest.at("nlu_sha256").get<std::string>();
    m.stories_sha256 = manifest.at("stories_sha256").get<std::string>();
    m.templates_sha256 = manifest.at("templates_sha256").get<std::string>();
    m.model_version = manifest.at("model_version").get<std::string>();
    bundle.crf = CrfFromJson(ReadJson(dir / "crf.json"));
    bundle.intent_model = IntentFromJson(ReadJson(dir / "intent.json"));
    bundle.policy = PolicyFromJson(ReadJson(dir / "policy.json"));
  } catch (const json::exception& e) {
    throw BundleError(std::string("malformed model bundle: ") + e.what());
  }
  return bundle;
}

ModelBundle TrainBundle(const NluCorpus& corpus,
                        std::span<const dialogue::Story> stories,
                        const TrainingConfig& config) {
  ModelBundle bundle;
  bundle.crf = ner::TrainCrf(ToCrfExamples(corpus), config.crf);
  auto intent_options = config.intent;
  intent_options.seed = config.seed;
  bundle.intent_model = intent::TrainIntentModel(ToIntentExamples(corpus), intent_options);
  auto policy_options = config.policy;
  policy_options.seed = config.seed;
  bundle.policy = dialogue::TrainPolicy(stories, policy_options);
  bundle.manifest.seed = config.seed;
  return bundle;
}

ModelBundle TrainFromFiles(const TrainingFiles& files, const TrainingConfig& config,
                           const CorpusFloors& floors) {
  auto corpus = LoadNluCorpus(files.nlu);
  auto report = ValidateCorpus(corpus, floors);
  if (!report.ok()) {
    std::string message = "NLU corpus failed validation:";
    for (const auto& v : report.violations) message += "\n  " + v;
    throw std::runtime_error(message);
  }
  auto stories = dialogue::LoadStories(files.stories);
  auto bundle = TrainBundle(corpus, stories, config);
  auto& m = bundle.manifest;
  m.nlu_sha256 = Sha256File(files.nlu);
  m.stories_sha256 = Sha256File(files.stories);
  m.templates_sha256 = Sha256File(files.templates);
  m.model_version = "v" + std::to_string(kBundleFormatVersion) + "-" +
                    Sha256Hex(m.nlu_sha256 + m.stories_sha256 + std::to_string(m.seed))
                        .substr(0, 12);
  return bundle;
}

EvalReport EvaluateBundle(const ModelBundle& bundle, const ner::Gazetteer& gazetteer,
                          const NluCorpus& corpus,
                          std::span<const dialogue::Story> stories) {
  EvalReport report;
  std::size_t correct = 0;
  std::size_t true_positive = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;
  using Triple = std::tuple<ner::EntityType, std::size_t, std::size_t>;
  for (const auto& example : corpus.examples) {
    if (intent::ClassifyIntent(bundle.intent_model, example.text).top == example.intent) {
      ++correct;
    }
    std::set<Triple> expected;
    for (const auto& a : example.entities) expected.emplace(a.type, a.start, a.end);
    auto mentions = ner::ExtractEntities(bundle.crf, gazetteer, example.text);
    for (const auto& m : mentions) {
      if (expected.contains({m.type, m.start, m.end})) ++true_positive;
    }
    predicted += mentions.size();
    gold += expected.size();
  }
  if (!corpus.examples.empty()) {
    report.intent_accuracy =
        static_cast<double>(correct) / static_cast<double>(corpus.examples.size());
  }
  report.entity_precision = predicted ? static_cast<double>(true_positive) / predicted : 1.0;
  report.entity_recall = gold ? static_cast<double>(true_positive) / gold : 1.0;
  double sum = report.entity_precision + report.entity_recall;
  report.entity_f1 = sum > 0 ? 2 * report.entity_precision * report.entity_recall / sum : 0.0;
  report.story_replay = dialogue::StoryReplayAccuracy(bundle.policy, stories);
  return report;
}

Pipeline LoadPipeline(const RuntimeFiles& files, std::vector<std::string>* warnings) {
  auto bundle = LoadBundle(files.model_dir);
  auto catalog = catalog::LoadCatalog(files.catalog);
  if (warnings != nullptr) {
    warnings->insert(warnings->end(), catalog.warnings.begin(), catalog.warnings.end());
    if (Sha256File(files.templates) != bundle.manifest.templates_sha256) {
      warnings->push_back("templates file " + files.templates.string() +
                          " differs from the one used for training");
    }
  }
  Pipeline pipeline{std::move(bundle.crf),
                    ner::Gazetteer::FromFile(files.gazetteer),
                    std::move(bundle.intent_model),
                    std::move(bundle.policy),
                    dialogue::Templates::Load(files.templates),
                    std::move(catalog.index),
                    kDefaultConfidenceThreshold,
                    bundle.manifest.model_version};
  return pipeline;
}

}  // namespace odbot::service
