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

#ifndef ODBOT_CATALOG_DATASET_H_
#define ODBOT_CATALOG_DATASET_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace odbot::catalog {

// One entry of the Open Data catalog. `locations` are the pre-computed
// geo-entity annotations; `url` points back to the publishing portal.
struct DatasetRecord {
  std::string id;
  std::string title;
  std::string description;
  std::vector<std::string> tags;
  std::vector<std::string> locations;
  std::string url;
  std::string portal;

  bool operator==(const DatasetRecord&) const = default;
};

struct SearchQuery {
  std::vector<std::string> keywords;  // lowercased word tokens
  std::optional<std::string> location;  // lowercased

  // Tokenizes the topic into lowercase keywords (punctuation dropped) and
  // lowercases the location. Empty strings count as unset.
  static SearchQuery FromSlots(const std::optional<std::string>& topic,
                               const std::optional<std::string>& location);
};

}  // namespace odbot::catalog

#endif  // ODBOT_CATALOG_DATASET_H_
