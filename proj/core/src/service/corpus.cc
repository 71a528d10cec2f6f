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

#include "odbot/service/corpus.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <yaml-cpp/yaml.h>

#include "odbot/text/tokenizer.h"

namespace odbot::service {
namespace {

std::string Describe(std::size_t index, const NluExample& example) {
  return "example " + std::to_string(index) + " (\"" + example.text + "\")";
}

}  // namespace

NluExample ParseAnnotatedExample(std::string_view line, intent::Intent intent) {
  NluExample example{"", intent, {}};
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] != '[') {
      example.text.push_back(line[i++]);
      continue;
    }
    auto close = line.find("](", i);
    auto paren = close == std::string_view::npos ? close : line.find(')', close);
    if (paren == std::string_view::npos) {
      throw std::runtime_error("unterminated entity markup in: " + std::string(line));
    }
    auto surface = line.substr(i + 1, close - i - 1);
    auto type_name = line.substr(close + 2, paren - close - 2);
    auto type = ner::ParseEntityType(type_name);
    if (!type) {
      throw std::runtime_error("unknown entity type '" + std::string(type_name) +
                               "' in: " + std::string(line));
    }
    EntityAnnotation annotation{*type, example.text.size(), 0};
    example.text.append(surface);
    annotation.end = example.text.size();
    example.entities.push_back(annotation);
    i = paren + 1;
  }
  return example;
}

NluCorpus ParseNluCorpus(std::string_view yaml) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::Exception& e) {
    throw std::runtime_error(std::string("nlu corpus: ") + e.what());
  }
  NluCorpus corpus;
  try {
    for (const auto& block : root["nlu"]) {
      auto intent = intent::RequireIntent(block["intent"].as<std::string>());
      for (const auto& line : block["examples"]) {
        corpus.examples.push_back(ParseAnnotatedExample(line.as<std::string>(), intent));
      }
    }
  } catch (const YAML::Exception& e) {
    throw std::runtime_error(std::string("nlu corpus: ") + e.what());
  }
  return corpus;
}

NluCorpus LoadNluCorpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read NLU corpus: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseNluCorpus(buffer.str());
}

ValidationReport ValidateCorpus(const NluCorpus& corpus,
                                const CorpusFloors& floors) {
  ValidationReport report;
  auto& out = report.violations;
  std::array<std::size_t, intent::kNumIntents> per_intent{};
  std::size_t with_topic = 0;
  std::size_t with_location = 0;

  for (std::size_t i = 0; i < corpus.examples.size(); ++i) {
    const auto& example = corpus.examples[i];
    ++per_intent[intent::Index(example.intent)];
    bool has_topic = false;
    bool has_location = false;
    auto tokens = text::Tokenize(example.text);
    auto starts_token = [&](std::size_t offset) {
      return std::any_of(tokens.begin(), tokens.end(),
                         [&](const auto& t) { return t.start == offset; });
    };
    auto ends_token = [&](std::size_t offset) {
      return std::any_of(tokens.begin(), tokens.end(),
                         [&](const auto& t) { return t.end == offset; });
    };
    for (std::size_t a = 0; a < example.entities.size(); ++a) {
      const auto& span = example.entities[a];
      if (span.start >= span.end || span.end > example.text.size()) {
        out.push_back(Describe(i, example) + ": span " + std::to_string(a) +
                      " is out of bounds");
        continue;
      }
      if (!starts_token(span.start) || !ends_token(span.end)) {
        out.push_back(Describe(i, example) + ": span " + std::to_string(a) +
                      " does not align with token boundaries");
      }
      for (std::size_t b = 0; b < a; ++b) {
        const auto& other = example.entities[b];
        if (span.start < other.end && other.start < span.end) {
          out.push_back(Describe(i, example) + ": spans " + std::to_string(b) +
                        " and " + std::to_string(a) + " overlap");
        }
      }
      (span.type == ner::EntityType::kTopic ? has_topic : has_location) = true;
    }
    with_topic += has_topic ? 1 : 0;
    with_location += has_location ? 1 : 0;
  }

  const std::size_t total = corpus.examples.size();
  if (total < floors.total_examples) {
    out.push_back("corpus has " + std::to_string(total) + " < " +
                  std::to_string(floors.total_examples) + " examples");
  }
  if (with_topic < floors.with_topic) {
    out.push_back("topic entity appears in " + std::to_string(with_topic) + " < " +
                  std::to_string(floors.with_topic) + " examples");
  }
  if (with_location < floors.with_location) {
    out.push_back("location entity appears in " + std::to_string(with_location) +
                  " < " + std::to_string(floors.with_location) + " examples");
  }
  for (intent::Intent intent : intent::kAllIntents) {
    std::size_t n = per_intent[intent::Index(intent)];
    if (n < floors.per_intent) {
      out.push_back(std::string(intent::IntentName(intent)) + " has " +
                    std::to_string(n) + " < " + std::to_string(floors.per_intent));
    }
  }
  return report;
}

std::vector<ner::CrfExample> ToCrfExamples(const NluCorpus& corpus) {
  std::vector<ner::CrfExample> out;
  for (const auto& example : corpus.examples) {
    ner::CrfExample crf;
    crf.tokens = text::Tokenize(example.text);
    if (crf.tokens.empty()) continue;
    crf.labels.assign(crf.tokens.size(), ner::BioLabel::kOutside);
    for (const auto& span : example.entities) {
      bool first = true;
      for (std::size_t t = 0; t < crf.tokens.size(); ++t) {
        if (crf.tokens[t].start >= span.start && crf.tokens[t].end <= span.end) {
          crf.labels[t] = first ? ner::BeginLabel(span.type) : ner::InsideLabel(span.type);
          first = false;
        }
      }
    }
    out.push_back(std::move(crf));
  }
  return out;
}

std::vector<intent::IntentExample> ToIntentExamples(const NluCorpus& corpus) {
  std::vector<intent::IntentExample> out;
  out.reserve(corpus.examples.size());
  for (const auto& example : corpus.examples) {
    out.push_back({example.text, example.intent});
  }
  return out;
}

}  // namespace odbot::service
