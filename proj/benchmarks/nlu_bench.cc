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

#include <random>
#include <string>

#include <benchmark/benchmark.h>

#include "bench_data.h"
#include "odbot/intent/classifier.h"
#include "odbot/ner/crf.h"
#include "odbot/ner/extractor.h"
#include "odbot/text/tokenizer.h"

namespace odbot {
namespace {

std::string Sentence(std::size_t words) {
  static const char* kWords[] = {"find", "schools", "in", "Graz", "and", "health", "care",
                                 "data", "for", "St.", "P\xC3\xB6lten", "please"};
  std::string out;
  for (std::size_t i = 0; i < words; ++i) {
    if (i) out += ' ';
    out += kWords[i % std::size(kWords)];
  }
  return out;
}

void BM_Tokenize(benchmark::State& state) {
  const auto text = Sentence(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(text::Tokenize(text));
  state.SetBytesProcessed(state.iterations() * text.size());
}
BENCHMARK(BM_Tokenize)->Arg(4)->Arg(16)->Arg(64);

void BM_Viterbi(benchmark::State& state) {
  const auto& crf = bench::BundledPipeline().crf;
  const auto tokens = text::Tokenize(Sentence(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ner::ViterbiDecode(crf, tokens));
}
BENCHMARK(BM_Viterbi)->Arg(4)->Arg(16)->Arg(64);

void BM_LogPartition(benchmark::State& state) {
  const auto& crf = bench::BundledPipeline().crf;
  const auto tokens = text::Tokenize(Sentence(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ner::LogPartition(crf, tokens));
}
BENCHMARK(BM_LogPartition)->Arg(4)->Arg(16)->Arg(64);

void BM_ExtractEntities(benchmark::State& state) {
  const auto& p = bench::BundledPipeline();
  const auto text = Sentence(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ner::ExtractEntities(p.crf, p.gazetteer, text));
}
BENCHMARK(BM_ExtractEntities)->Arg(4)->Arg(16);

void BM_ClassifyIntent(benchmark::State& state) {
  const auto& model = bench::BundledPipeline().intent_model;
  const std::string text = "Could I go back to explore?";
  for (auto _ : state) benchmark::DoNotOptimize(intent::ClassifyIntent(model, text));
}
BENCHMARK(BM_ClassifyIntent);

}  // namespace
}  // namespace odbot
