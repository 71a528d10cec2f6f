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

#ifndef ODBOT_BENCHMARKS_BENCH_DATA_H_
#define ODBOT_BENCHMARKS_BENCH_DATA_H_

#include <filesystem>
#include <memory>

#include "odbot/service/bundle.h"
#include "odbot/service/pipeline.h"

namespace odbot::bench {

inline std::filesystem::path DataDir() { return ODBOT_DATA_DIR; }

// Trained once per process from the bundled data.
inline const service::Pipeline& BundledPipeline() {
  static const auto pipeline = [] {
    const auto dir = std::filesystem::temp_directory_path() / "odbot_bench_model";
    service::SaveBundle(service::TrainFromFiles({DataDir() / "nlu.yml", DataDir() / "stories.yml",
                                                 DataDir() / "templates.yml"}),
                        dir);
    return std::make_unique<const service::Pipeline>(service::LoadPipeline(
        {dir, DataDir() / "templates.yml", DataDir() / "gazetteer.txt",
         DataDir() / "catalog.jsonl"}));
  }();
  return *pipeline;
}

}  // namespace odbot::bench

#endif  // ODBOT_BENCHMARKS_BENCH_DATA_H_
