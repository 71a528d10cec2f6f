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

// odbot: train, serve, and inspect the Open Data chatbot.

#include <pthread.h>
#include <signal.h>
#include <unistd.h>

#include <csignal>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <thread>

#include <CLI/CLI.hpp>

#include "odbot/dialogue/policy.h"
#include "odbot/dialogue/story.h"
#include "odbot/dialogue/templates.h"
#include "odbot/service/bundle.h"
#include "odbot/service/corpus.h"
#include "odbot/service/http_api.h"
#include "odbot/service/pipeline.h"
#include "odbot/service/session_store.h"

namespace {

namespace fs = std::filesystem;
using namespace odbot;

struct Paths {
  std::string nlu = "data/nlu.yml";
  std::string stories = "data/stories.yml";
  std::string templates = "data/templates.yml";
  std::string gazetteer = "data/gazetteer.txt";
  std::string catalog = "data/catalog.jsonl";
  std::string model_dir = "models/current";
};

void RequireFile(const std::string& path, const char* what) {
  if (!fs::exists(path)) throw std::runtime_error(std::string(what) + " not found: " + path);
}

service::RuntimeFiles Runtime(const Paths& p) {
  RequireFile(p.model_dir, "model bundle");
  RequireFile(p.templates, "templates file");
  RequireFile(p.gazetteer, "gazetteer");
  RequireFile(p.catalog, "catalog");
  return {p.model_dir, p.templates, p.gazetteer, p.catalog};
}

void PrintWarnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

int Train(const Paths& p, std::uint64_t seed) {
  RequireFile(p.nlu, "NLU corpus");
  RequireFile(p.stories, "stories file");
  RequireFile(p.templates, "templates file");
  dialogue::Templates::Load(p.templates);
  service::TrainingConfig config;
  config.seed = seed;
  auto bundle = service::TrainFromFiles({p.nlu, p.stories, p.templates}, config);
  service::SaveBundle(bundle, p.model_dir);
  std::cout << "wrote " << p.model_dir << " (" << bundle.manifest.model_version << ")\n";
  return EXIT_SUCCESS;
}

int ValidateData(const Paths& p) {
  RequireFile(p.nlu, "NLU corpus");
  RequireFile(p.stories, "stories file");
  RequireFile(p.templates, "templates file");
  int failures = 0;
  auto corpus = service::LoadNluCorpus(p.nlu);
  auto report = service::ValidateCorpus(corpus);
  for (const auto& v : report.violations) std::cout << "corpus: " << v << '\n';
  failures += static_cast<int>(report.violations.size());
  std::cout << "corpus: " << corpus.examples.size() << " examples\n";
  try {
    auto stories = dialogue::LoadStories(p.stories);
    auto states = dialogue::CheckStoryConsistency(stories);
    std::cout << "stories: " << stories.size() << " stories, " << states
              << " distinct states\n";
  } catch (const std::exception& e) {
    std::cout << "stories: " << e.what() << '\n';
    ++failures;
  }
  try {
    dialogue::Templates::Load(p.templates);
    std::cout << "templates: ok\n";
  } catch (const std::exception& e) {
    std::cout << "templates: " << e.what() << '\n';
    ++failures;
  }
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}

int Eval(const Paths& p) {
  RequireFile(p.model_dir, "model bundle");
  RequireFile(p.nlu, "NLU corpus");
  RequireFile(p.stories, "stories file");
  RequireFile(p.gazetteer, "gazetteer");
  auto bundle = service::LoadBundle(p.model_dir);
  auto report = service::EvaluateBundle(bundle, ner::Gazetteer::FromFile(p.gazetteer),
                                        service::LoadNluCorpus(p.nlu),
                                        dialogue::LoadStories(p.stories));
  std::cout << "model_version     " << bundle.manifest.model_version << '\n'
            << "intent_accuracy   " << report.intent_accuracy << '\n'
            << "entity_precision  " << report.entity_precision << '\n'
            << "entity_recall     " << report.entity_recall << '\n'
            << "entity_f1         " << report.entity_f1 << '\n'
            << "story_replay      " << report.story_replay << '\n';
  return report.story_replay == 1.0 ? EXIT_SUCCESS : EXIT_FAILURE;
}

void PrintResponse(const dialogue::BotResponse& r) {
  std::cout << "bot> " << r.text << '\n';
  for (const auto& b : r.buttons) std::cout << "     [" << b.title << "] " << b.payload << '\n';
  for (const auto& l : r.links) std::cout << "     - " << l.title << " <" << l.url << ">\n";
}

void PrintInterpretation(const service::Pipeline& pipeline, const std::string& text) {
  auto nlu = service::Interpret(pipeline, text);
  std::cout << "     nlu:";
  for (std::size_t i = 0; i < 3 && i < nlu.prediction.ranking.size(); ++i) {
    const auto& [intent, confidence] = nlu.prediction.ranking[i];
    std::cout << ' ' << intent::IntentName(intent) << '=' << confidence;
  }
  for (const auto& m : nlu.entities) {
    std::cout << " [" << m.surface << "](" << ner::EntityTypeName(m.type) << ','
              << ner::ExtractorName(m.extractor) << ')';
  }
  std::cout << '\n';
}

int Chat(const Paths& p, bool show_nlu) {
  std::vector<std::string> warnings;
  auto pipeline = service::LoadPipeline(Runtime(p), &warnings);
  PrintWarnings(warnings);
  dialogue::Tracker tracker("terminal");
  std::string line;
  std::cout << "odbot " << pipeline.model_version << " (Ctrl-D to quit)\n";
  while (std::cout << "you> " << std::flush, std::getline(std::cin, line)) {
    if (line.empty()) continue;
    if (show_nlu && line.front() != '/') PrintInterpretation(pipeline, line);
    for (const auto& r : service::RunTurn(pipeline, tracker, line, dialogue::Clock::now())) {
      PrintResponse(r);
    }
  }
  std::cout << '\n';
  return EXIT_SUCCESS;
}

int Serve(const Paths& p, service::ServerOptions options, int ttl_minutes) {
  auto files = Runtime(p);
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  service::SessionStore store{std::chrono::minutes(ttl_minutes)};
  service::ChatServer server(store, options);
  int port = server.Bind();
  if (port < 0) {
    std::cerr << "error: cannot bind " << options.host << ':' << options.port << '\n';
    return EXIT_FAILURE;
  }
  std::clog << "listening on " << options.host << ':' << port << '\n';

  std::thread stopper([&] {
    int signal = 0;
    sigwait(&signals, &signal);
    server.Stop();
  });
  std::thread listener([&] { server.ListenAfterBind(); });

  int status = EXIT_SUCCESS;
  try {
    std::vector<std::string> warnings;
    auto pipeline = std::make_shared<const service::Pipeline>(
        service::LoadPipeline(files, &warnings));
    PrintWarnings(warnings);
    server.SetPipeline(pipeline);
    std::clog << "models loaded (" << pipeline->model_version << ")\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    status = EXIT_FAILURE;
    kill(getpid(), SIGTERM);
  }
  listener.join();
  stopper.join();
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Open Data chatbot"};
  app.require_subcommand(1);
  Paths paths;
  std::uint64_t seed = 42;
  service::ServerOptions server;
  int ttl_minutes = 30;

  auto add_data = [&](CLI::App* cmd, bool nlu, bool stories, bool templates,
                      bool gazetteer, bool catalog, bool model) {
    if (nlu) cmd->add_option("--nlu", paths.nlu, "NLU training corpus")->envname("ODBOT_NLU");
    if (stories) {
      cmd->add_option("--stories", paths.stories, "dialogue stories")->envname("ODBOT_STORIES");
    }
    if (templates) {
      cmd->add_option("--templates", paths.templates, "response templates")
          ->envname("ODBOT_TEMPLATES");
    }
    if (gazetteer) {
      cmd->add_option("--gazetteer", paths.gazetteer, "location lookup table")
          ->envname("ODBOT_GAZETTEER");
    }
    if (catalog) {
      cmd->add_option("--catalog", paths.catalog, "dataset catalog (JSON lines)")
          ->envname("ODBOT_CATALOG");
    }
    if (model) {
      cmd->add_option("--model-dir", paths.model_dir, "model bundle directory")
          ->envname("ODBOT_MODEL_DIR");
    }
  };

  auto* train = app.add_subcommand("train", "train all models and write a bundle");
  add_data(train, true, true, true, false, false, true);
  train->add_option("--seed", seed, "training seed")->envname("ODBOT_SEED");

  auto* serve = app.add_subcommand("serve", "serve the HTTP API");
  add_data(serve, false, false, true, true, true, true);
  serve->add_option("--host", server.host, "listen address")->envname("ODBOT_HOST");
  serve->add_option("--port", server.port, "listen port, 0 for any")
      ->envname("ODBOT_PORT")
      ->check(CLI::Range(0, 65535));
  serve->add_option("--ttl-minutes", ttl_minutes, "idle session lifetime")
      ->envname("ODBOT_TTL_MINUTES")
      ->check(CLI::PositiveNumber);
  serve->add_option("--allowed-origin", server.allowed_origin,
                    "origin allowed to call the API from a browser")
      ->envname("ODBOT_ALLOWED_ORIGIN");
  serve->add_option("--threads", server.worker_threads, "HTTP worker threads")
      ->envname("ODBOT_THREADS")
      ->check(CLI::PositiveNumber);

  auto* chat = app.add_subcommand("chat", "interactive terminal conversation");
  add_data(chat, false, false, true, true, true, true);
  bool show_nlu = false;
  chat->add_flag("--show-nlu", show_nlu, "print intent ranking and entities per message");

  auto* validate = app.add_subcommand("validate-data", "check corpus, stories and templates");
  add_data(validate, true, true, true, false, false, false);

  auto* eval = app.add_subcommand("eval", "training-fit metrics for a bundle");
  add_data(eval, true, true, false, true, false, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train) return Train(paths, seed);
    if (*serve) return Serve(paths, server, ttl_minutes);
    if (*chat) return Chat(paths, show_nlu);
    if (*validate) return ValidateData(paths);
    if (*eval) return Eval(paths);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return EXIT_FAILURE;
  }
  return EXIT_FAILURE;
}
