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

#include <atomic>
#include <cstdio>
#include <fstream>
#include <regex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "odbot/dialogue/story.h"
#include "odbot/ner/extractor.h"
#include "odbot/service/bundle.h"
#include "odbot/service/corpus.h"
#include "odbot/service/pipeline.h"
#include "odbot/service/session_store.h"
#include "odbot/service/wire.h"
#include "test_support.h"

namespace odbot::service {
namespace {

using intent::Intent;
using namespace std::chrono_literals;

std::string ShellSha256(const std::filesystem::path& path) {
  std::string cmd = "sha256sum '" + path.string() + "'";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {};
  char buf[65] = {};
  const std::size_t n = std::fread(buf, 1, 64, pipe);
  pclose(pipe);
  return std::string(buf, n);
}

struct FakeClock {
  dialogue::TimePoint t = dialogue::TimePoint(std::chrono::hours(500'000));
  SessionStore::NowFn fn() {
    return [this] { return t; };
  }
};

std::string Chat(SessionStore& store, const std::string& id, const std::string& text) {
  return testing::Render(HandleMessage(store, id, text, *testing::BundledPipeline()));
}

TEST(ParseNluCorpus, StripsMarkupAndRecordsSpans) {
  auto corpus = ParseNluCorpus(R"(
nlu:
  - intent: search
    examples:
      - Find [schools](topic) in [Graz](location)
      - search please
)");
  ASSERT_EQ(corpus.examples.size(), 2u);
  const auto& ex = corpus.examples[0];
  EXPECT_EQ(ex.text, "Find schools in Graz");
  EXPECT_EQ(ex.intent, Intent::kSearch);
  ASSERT_EQ(ex.entities.size(), 2u);
  EXPECT_EQ(ex.text.substr(ex.entities[0].start, ex.entities[0].end - ex.entities[0].start),
            "schools");
  EXPECT_EQ(ex.entities[0].type, ner::EntityType::kTopic);
  EXPECT_EQ(ex.text.substr(ex.entities[1].start, ex.entities[1].end - ex.entities[1].start),
            "Graz");
  EXPECT_EQ(ex.entities[1].type, ner::EntityType::kLocation);
  EXPECT_TRUE(corpus.examples[1].entities.empty());
}

TEST(ParseNluCorpus, Errors) {
  EXPECT_THROW(ParseNluCorpus("nlu:\n  - intent: order_pizza\n    examples: [a]\n"),
               intent::UnknownIntentError);
  EXPECT_THROW(ParseAnnotatedExample("find [schools(topic)", Intent::kSearch),
               std::runtime_error);
  EXPECT_THROW(ParseAnnotatedExample("find [schools](colour)", Intent::kSearch),
               std::runtime_error);
  EXPECT_THROW(ParseNluCorpus("nlu: [unclosed"), std::runtime_error);
}

TEST(ValidateCorpus, CountFloorsNameTheShortfall) {
  NluCorpus corpus;
  for (int i = 0; i < 5; ++i) corpus.examples.push_back({"hi", Intent::kGreeting, {}});
  auto report = ValidateCorpus(corpus);
  EXPECT_FALSE(report.ok());
  auto has = [&](const std::string& s) {
    return std::find(report.violations.begin(), report.violations.end(), s) !=
           report.violations.end();
  };
  EXPECT_TRUE(has("greeting has 5 < 6"));
  EXPECT_TRUE(has("goodbye has 0 < 6"));
  EXPECT_TRUE(has("corpus has 5 < 250 examples"));
}

TEST(ValidateCorpus, SpanProblemsNameTheExample) {
  NluCorpus corpus;
  corpus.examples.push_back({"find schools", Intent::kSearch, {}});
  corpus.examples.push_back({"find schools in graz",
                             Intent::kSearch,
                             {{ner::EntityType::kTopic, 5, 12}, {ner::EntityType::kLocation, 5, 20}}});
  corpus.examples.push_back({"find schools", Intent::kSearch, {{ner::EntityType::kTopic, 6, 12}}});
  corpus.examples.push_back({"find", Intent::kSearch, {{ner::EntityType::kTopic, 0, 9}}});
  CorpusFloors none{0, 0, 0, 0};
  auto report = ValidateCorpus(corpus, none);
  ASSERT_EQ(report.violations.size(), 3u);
  EXPECT_EQ(report.violations[0].rfind("example 1 ", 0), 0u) << report.violations[0];
  EXPECT_NE(report.violations[0].find("overlap"), std::string::npos);
  EXPECT_EQ(report.violations[1].rfind("example 2 ", 0), 0u) << report.violations[1];
  EXPECT_NE(report.violations[1].find("token boundaries"), std::string::npos);
  EXPECT_EQ(report.violations[2].rfind("example 3 ", 0), 0u) << report.violations[2];
  EXPECT_NE(report.violations[2].find("out of bounds"), std::string::npos);
}

TEST(ValidateCorpus, BundledCorpusMeetsFloors) {
  auto corpus = LoadNluCorpus(testing::DataDir() / "nlu.yml");
  auto report = ValidateCorpus(corpus);
  EXPECT_TRUE(report.ok()) << (report.ok() ? "" : report.violations.front());
  std::size_t topic = 0, location = 0;
  std::map<Intent, std::size_t> per_intent;
  for (const auto& ex : corpus.examples) {
    bool t = false, l = false;
    for (const auto& e : ex.entities) (e.type == ner::EntityType::kTopic ? t : l) = true;
    topic += t;
    location += l;
    ++per_intent[ex.intent];
  }
  EXPECT_GE(corpus.examples.size(), 250u);
  EXPECT_GE(topic, 121u);
  EXPECT_GE(location, 18u);
  for (Intent i : intent::kAllIntents) EXPECT_GE(per_intent[i], 6u) << intent::IntentName(i);
  // The gazetteer fallback is only meaningful for a place the CRF never saw.
  for (const auto& ex : corpus.examples) {
    EXPECT_EQ(ex.text.find("Eisenstadt"), std::string::npos) << ex.text;
  }
}

TEST(Corpus, ConversionsKeepEveryExample) {
  auto corpus = LoadNluCorpus(testing::DataDir() / "nlu.yml");
  EXPECT_EQ(ToIntentExamples(corpus).size(), corpus.examples.size());
  auto crf = ToCrfExamples(corpus);
  ASSERT_EQ(crf.size(), corpus.examples.size());
}

TEST(SessionStore, CreateAndDuplicates) {
  SessionStore store;
  auto a = store.Create();
  auto b = store.Create();
  EXPECT_NE(a, b);
  EXPECT_TRUE(std::regex_match(a, std::regex("[0-9a-f]{32}"))) << a;
  EXPECT_EQ(store.Create("fixed"), "fixed");
  EXPECT_THROW(store.Create("fixed"), std::invalid_argument);
  EXPECT_THROW(store.Create(""), std::invalid_argument);
  EXPECT_EQ(store.size(), 3u);
}

TEST(SessionStore, IdleSessionsExpire) {
  FakeClock clock;
  SessionStore store(30min, clock.fn());
  auto id = store.Create();
  clock.t += 29min;
  EXPECT_TRUE(store.Contains(id));
  store.WithSession(id, [](dialogue::Tracker&) {});
  clock.t += 29min;  // 58 minutes old but touched 29 minutes ago
  EXPECT_TRUE(store.Snapshot(id).has_value());
  clock.t += 31min;
  EXPECT_FALSE(store.Contains(id));
  EXPECT_FALSE(store.Snapshot(id));
  EXPECT_THROW(store.WithSession(id, [](dialogue::Tracker&) {}), SessionNotFound);
  EXPECT_EQ(store.size(), 0u);
}

TEST(SessionStore, WaitersRunInArrivalOrder) {
  SessionStore store;
  auto id = store.Create();
  std::vector<int> order;
  std::atomic<bool> release{false};
  std::thread holder([&] {
    store.WithSession(id, [&](dialogue::Tracker&) {
      while (!release) std::this_thread::sleep_for(1ms);
      order.push_back(0);
    });
  });
  std::this_thread::sleep_for(50ms);
  std::vector<std::thread> waiters;
  for (int i = 1; i <= 5; ++i) {
    waiters.emplace_back([&, i] {
      store.WithSession(id, [&](dialogue::Tracker&) { order.push_back(i); });
    });
    std::this_thread::sleep_for(50ms);
  }
  release = true;
  holder.join();
  for (auto& w : waiters) w.join();
  EXPECT_EQ(order, (std::vector<int>{0, 1, 2, 3, 4, 5}));
}

TEST(SessionStore, ConcurrentWritersAreSerialized) {
  SessionStore store;
  auto id = store.Create();
  std::vector<std::thread> threads;
  for (int k = 0; k < 8; ++k) {
    threads.emplace_back([&] {
      for (int i = 0; i < 200; ++i) {
        store.WithSession(id, [](dialogue::Tracker& t) {
          t.Apply(dialogue::ActionEvent{dialogue::Action::kActionListen, {}});
        });
      }
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(store.Snapshot(id)->events().size(), 1600u);
}

TEST(SessionStore, SessionsDoNotBlockEachOther) {
  SessionStore store;
  auto a = store.Create();
  auto b = store.Create();
  std::atomic<bool> b_done{false};
  std::thread holder([&] {
    store.WithSession(a, [&](dialogue::Tracker&) {
      for (int i = 0; i < 2000 && !b_done; ++i) std::this_thread::sleep_for(1ms);
    });
  });
  std::thread other([&] {
    store.WithSession(b, [](dialogue::Tracker&) {});
    b_done = true;
  });
  other.join();
  holder.join();
  EXPECT_TRUE(b_done);
}

TEST(HandleMessage, GreetingThenExplore) {
  SessionStore store;
  auto id = store.Create();
  EXPECT_EQ(Chat(store, id, "hi"),
            "Hello! I can help you find Open Data datasets.\n"
            "Would you like to search for a specific topic or explore the catalog?\n"
            "  [Search] /search\n  [Explore] /explore\n");
  auto reply = HandleMessage(store, id, "/explore", *testing::BundledPipeline());
  ASSERT_EQ(reply.size(), 1u);
  EXPECT_EQ(reply[0].text, "Which topic are you interested in?");
  EXPECT_EQ(reply[0].buttons.size(), dialogue::kMaxButtons);
  EXPECT_EQ(reply[0].buttons[0].payload, R"(/add_keyword{"topic":"education"})");
  EXPECT_EQ(store.Snapshot(id)->slots().mode, dialogue::Mode::kExplore);
}

TEST(HandleMessage, BadPayloadAsksAgainWithoutStateChange) {
  SessionStore store;
  auto id = store.Create();
  Chat(store, id, "hi");
  const auto before = *store.Snapshot(id);
  for (const char* bad : {"/order_pizza", R"(/search{"colour":"red"})", "/search{"}) {
    auto reply = HandleMessage(store, id, bad, *testing::BundledPipeline());
    ASSERT_EQ(reply.size(), 1u);
    EXPECT_EQ(reply[0].text, "Sorry, that button or command was not understood.");
    auto after = *store.Snapshot(id);
    EXPECT_EQ(after.slots(), before.slots());
    EXPECT_TRUE(std::holds_alternative<dialogue::ErrorEvent>(after.events().back()));
  }
}

TEST(HandleMessage, UnknownSessionThrows) {
  SessionStore store;
  EXPECT_THROW(HandleMessage(store, "nope", "hi", *testing::BundledPipeline()),
               SessionNotFound);
}

TEST(HandleMessage, SameScriptSameTranscript) {
  const std::vector<std::string> script = {"hello", "I want to search", "schools",
                                           "in Graz please", "thanks", "bye"};
  SessionStore store;
  std::string first, second;
  for (std::string* out : {&first, &second}) {
    auto id = store.Create();
    for (const auto& line : script) *out += "> " + line + "\n" + Chat(store, id, line) + "\n";
  }
  EXPECT_EQ(first, second);
}

TEST(Interpret, GazetteerCoversUnseenPlace) {
  auto nlu = Interpret(*testing::BundledPipeline(), "Find schools in Eisenstadt");
  EXPECT_EQ(nlu.intent, Intent::kSearch);
  bool found = false;
  for (const auto& m : nlu.entities) {
    found |= m.type == ner::EntityType::kLocation && m.surface == "Eisenstadt" &&
             m.extractor == ner::Extractor::kGazetteer;
  }
  EXPECT_TRUE(found);
}

TEST(Interpret, GibberishIsLowConfidence) {
  const auto& p = *testing::BundledPipeline();
  auto nlu = Interpret(p, "qwzx vbnm plkj");
  EXPECT_EQ(nlu.intent.has_value(), nlu.prediction.confidence >= p.confidence_threshold);
}

TEST(Wire, ResponsesRoundTrip) {
  std::vector<dialogue::BotResponse> responses = {
      {"a \"quoted\" text", {{"Search", "/search"}}, {}},
      {"links", {}, {{"T\xC3\xB6", "https://example.org/x"}}},
      {"", {}, {}}};
  EXPECT_EQ(ResponsesFromJson(ResponsesToJson(responses)), responses);
  EXPECT_THROW(ResponsesFromJson("{"), std::runtime_error);
}

TEST(Sha256, KnownVectorsAndFiles) {
  EXPECT_EQ(Sha256Hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(Sha256Hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  auto nlu = testing::DataDir() / "nlu.yml";
  const auto shell = ShellSha256(nlu);
  if (shell.size() == 64) EXPECT_EQ(Sha256File(nlu), shell);
  EXPECT_THROW(Sha256File(testing::ScratchDir("sha") / "missing"), std::runtime_error);
}

TEST(Bundle, ManifestDescribesInputs) {
  const auto& m = testing::BundledModels().manifest;
  auto files = testing::BundledTrainingFiles();
  EXPECT_EQ(m.format_version, kBundleFormatVersion);
  EXPECT_EQ(m.state_layout_version, dialogue::kStateLayoutVersion);
  EXPECT_EQ(m.nlu_sha256, Sha256File(files.nlu));
  EXPECT_EQ(m.stories_sha256, Sha256File(files.stories));
  EXPECT_EQ(m.templates_sha256, Sha256File(files.templates));
  EXPECT_TRUE(std::regex_match(m.model_version, std::regex("v1-[0-9a-f]{12}"))) << m.model_version;
  EXPECT_EQ(m.model_version,
            "v1-" + Sha256Hex(m.nlu_sha256 + m.stories_sha256 + std::to_string(m.seed))
                        .substr(0, 12));
}

TEST(Bundle, SaveLoadReproducesPredictions) {
  const auto& bundle = testing::BundledModels();
  auto dir = testing::ScratchDir("bundle");
  SaveBundle(bundle, dir);
  auto loaded = LoadBundle(dir);
  auto m = loaded.manifest;
  EXPECT_EQ(m.model_version, bundle.manifest.model_version);
  EXPECT_EQ(m.seed, bundle.manifest.seed);

  auto corpus = LoadNluCorpus(testing::DataDir() / "nlu.yml");
  ner::Gazetteer none;
  for (const auto& ex : corpus.examples) {
    auto a = intent::ClassifyIntent(bundle.intent_model, ex.text);
    auto b = intent::ClassifyIntent(loaded.intent_model, ex.text);
    ASSERT_EQ(a.top, b.top) << ex.text;
    ASSERT_NEAR(a.confidence, b.confidence, 1e-12) << ex.text;
    ASSERT_EQ(ner::ExtractEntities(bundle.crf, none, ex.text),
              ner::ExtractEntities(loaded.crf, none, ex.text))
        << ex.text;
  }
  auto stories = dialogue::LoadStories(testing::DataDir() / "stories.yml");
  for (const auto& pair : dialogue::UnrollStories(stories)) {
    auto pa = bundle.policy.Probabilities(pair.state);
    auto pb = loaded.policy.Probabilities(pair.state);
    for (std::size_t i = 0; i < pa.size(); ++i) ASSERT_NEAR(pa[i], pb[i], 1e-12);
  }
}

TEST(Bundle, LoadRejectsMismatchedOrMissingFiles) {
  auto dir = testing::ScratchDir("bundle_bad");
  SaveBundle(testing::BundledModels(), dir);
  auto manifest = nlohmann::json::parse(std::ifstream(dir / "manifest.json"));
  manifest["format_version"] = kBundleFormatVersion + 1;
  std::ofstream(dir / "manifest.json") << manifest.dump();
  EXPECT_THROW(LoadBundle(dir), BundleError);

  manifest["format_version"] = kBundleFormatVersion;
  manifest["state_layout_version"] = dialogue::kStateLayoutVersion + 1;
  std::ofstream(dir / "manifest.json") << manifest.dump();
  EXPECT_THROW(LoadBundle(dir), BundleError);

  manifest["state_layout_version"] = dialogue::kStateLayoutVersion;
  std::ofstream(dir / "manifest.json") << manifest.dump();
  EXPECT_NO_THROW(LoadBundle(dir));
  std::filesystem::remove(dir / "policy.json");
  EXPECT_THROW(LoadBundle(dir), BundleError);
  std::ofstream(dir / "policy.json") << "{not json";
  EXPECT_THROW(LoadBundle(dir), BundleError);
  EXPECT_THROW(LoadBundle(testing::ScratchDir("empty")), BundleError);
}

TEST(Bundle, EditedTemplatesLoadWithWarning) {
  auto dir = testing::ScratchDir("bundle_tmpl");
  SaveBundle(testing::BundledModels(), dir / "model");
  auto files = testing::BundledRuntimeFiles(dir / "model");
  std::vector<std::string> warnings;
  auto pipeline = LoadPipeline(files, &warnings);
  EXPECT_TRUE(warnings.empty()) << warnings.front();
  EXPECT_EQ(pipeline.model_version, testing::BundledModels().manifest.model_version);

  std::filesystem::copy_file(files.templates, dir / "templates.yml");
  std::ofstream(dir / "templates.yml", std::ios::app) << "# edited\n";
  files.templates = dir / "templates.yml";
  warnings.clear();
  LoadPipeline(files, &warnings);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("templates"), std::string::npos);
}

TEST(Bundle, SeedChangesModelVersion) {
  TrainingConfig config;
  config.seed = 7;
  config.crf.iterations = 5;
  auto bundle = TrainFromFiles(testing::BundledTrainingFiles(), config);
  EXPECT_EQ(bundle.manifest.seed, 7u);
  EXPECT_NE(bundle.manifest.model_version, testing::BundledModels().manifest.model_version);
}

}  // namespace
}  // namespace odbot::service
