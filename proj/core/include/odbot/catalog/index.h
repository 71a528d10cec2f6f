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

#ifndef ODBOT_CATALOG_INDEX_H_
#define ODBOT_CATALOG_INDEX_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "odbot/catalog/dataset.h"

namespace odbot::catalog {

inline constexpr std::size_t kMaxResults = 5;

inline constexpr double kTitleWeight = 3.0;
inline constexpr double kTagWeight = 2.0;
inline constexpr double kDescriptionWeight = 1.0;

// Field-weighted keyword match: per keyword +3 for a title token, +2 for a
// tag token, +1 for a description token. A set location that no record
// location matches (case-insensitively) forces the score to 0.
double Score(const DatasetRecord& record, const SearchQuery& query);

class DuplicateIdError : public std::runtime_error {
 public:
  explicit DuplicateIdError(std::string id)
      : std::runtime_error("duplicate dataset id '" + id + "'"),
        id_(std::move(id)) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

// Immutable in-memory catalog with inverted maps over title, tag and
// description tokens and over lowercased locations.
class Index {
 public:
  Index() = default;
  // Throws DuplicateIdError.
  explicit Index(std::vector<DatasetRecord> records);

  const std::vector<DatasetRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }

  // Records with score > 0, ordered by (score desc, id asc), at most five.
  std::vector<DatasetRecord> Search(const SearchQuery& query) const;

  // Most frequent tags (per record), frequency desc then alphabetical.
  std::vector<std::string> ListTopics(std::size_t limit) const;
  std::vector<std::string> ListLocations(std::size_t limit) const;

  using Postings = std::map<std::string, std::set<std::size_t>>;
  const Postings& title_postings() const { return title_; }
  const Postings& tag_postings() const { return tags_; }
  const Postings& description_postings() const { return description_; }
  const Postings& location_postings() const { return locations_; }

 private:
  std::vector<DatasetRecord> records_;
  Postings title_;
  Postings tags_;
  Postings description_;
  Postings locations_;
  std::map<std::string, std::size_t> tag_counts_;
  std::map<std::string, std::size_t> location_counts_;
};

struct CatalogLoad {
  Index index;
  std::vector<std::string> warnings;
};

// Newline-delimited JSON records. Malformed lines and records without a
// title or url are skipped with a warning naming the line. Throws
// std::runtime_error if the file is unreadable and DuplicateIdError on a
// repeated id.
CatalogLoad LoadCatalog(const std::filesystem::path& path);

}  // namespace odbot::catalog

#endif  // ODBOT_CATALOG_INDEX_H_
