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

#include "odbot/catalog/index.h"

#include <algorithm>
#include <fstream>
#include <unordered_set>
#include <utility>

#include <nlohmann/json.hpp>

#include "odbot/text/tokenizer.h"

namespace odbot::catalog {
namespace {

std::set<std::string> WordSet(std::string_view s) {
  std::set<std::string> words;
  for (auto& token : text::Tokenize(s)) {
    if (text::IsWordToken(token)) words.insert(std::move(token.lower));
  }
  return words;
}

std::set<std::string> TagWords(const std::vector<std::string>& tags) {
  std::set<std::string> words;
  for (const auto& tag : tags) words.merge(WordSet(tag));
  return words;
}

bool MatchesLocation(const DatasetRecord& record, const std::string& location) {
  return std::any_of(record.locations.begin(), record.locations.end(),
                     [&](const std::string& l) {
                       return text::Lowercase(l) == location;
                     });
}

std::vector<std::string> TopByCount(
    const std::map<std::string, std::size_t>& counts, std::size_t limit) {
  std::vector<std::pair<std::string, std::size_t>> items(counts.begin(),
                                                         counts.end());
  // std::map iteration is alphabetical, so a stable sort keeps ties in order.
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;
  });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < items.size() && i < limit; ++i) {
    out.push_back(items[i].first);
  }
  return out;
}

std::vector<std::string> StringList(const nlohmann::json& value) {
  std::vector<std::string> out;
  if (value.is_array()) {
    for (const auto& item : value) {
      if (item.is_string()) out.push_back(item.get<std::string>());
    }
  }
  return out;
}

std::string StringField(const nlohmann::json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end() || !it->is_string()) return {};
  return it->get<std::string>();
}

}  // namespace

SearchQuery SearchQuery::FromSlots(const std::optional<std::string>& topic,
                                   const std::optional<std::string>& location) {
  SearchQuery query;
  if (topic) {
    for (auto& token : text::Tokenize(*topic)) {
      if (text::IsWordToken(token)) query.keywords.push_back(std::move(token.lower));
    }
  }
  if (location && !location->empty()) query.location = text::Lowercase(*location);
  return query;
}

double Score(const DatasetRecord& record, const SearchQuery& query) {
  if (query.location && !MatchesLocation(record, *query.location)) return 0.0;
  auto title = WordSet(record.title);
  auto tags = TagWords(record.tags);
  auto description = WordSet(record.description);
  double score = 0.0;
  for (const auto& keyword : query.keywords) {
    if (title.contains(keyword)) score += kTitleWeight;
    if (tags.contains(keyword)) score += kTagWeight;
    if (description.contains(keyword)) score += kDescriptionWeight;
  }
  return score;
}

Index::Index(std::vector<DatasetRecord> records) : records_(std::move(records)) {
  std::unordered_set<std::string> ids;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& record = records_[i];
    if (!ids.insert(record.id).second) throw DuplicateIdError(record.id);
    for (const auto& word : WordSet(record.title)) title_[word].insert(i);
    for (const auto& word : TagWords(record.tags)) tags_[word].insert(i);
    for (const auto& word : WordSet(record.description)) {
      description_[word].insert(i);
    }
    std::set<std::string> seen_tags(record.tags.begin(), record.tags.end());
    for (const auto& tag : seen_tags) ++tag_counts_[tag];
    std::set<std::string> seen_locations(record.locations.begin(),
                                         record.locations.end());
    for (const auto& location : seen_locations) {
      ++location_counts_[location];
      locations_[text::Lowercase(location)].insert(i);
    }
  }
}

std::vector<DatasetRecord> Index::Search(const SearchQuery& query) const {
  std::set<std::size_t> candidates;
  for (const auto& keyword : query.keywords) {
    for (const Postings* postings : {&title_, &tags_, &description_}) {
      auto it = postings->find(keyword);
      if (it != postings->end()) candidates.insert(it->second.begin(), it->second.end());
    }
  }
  if (query.location) {
    auto it = locations_.find(*query.location);
    if (it == locations_.end()) return {};
    std::set<std::size_t> filtered;
    std::set_intersection(candidates.begin(), candidates.end(),
                          it->second.begin(), it->second.end(),
                          std::inserter(filtered, filtered.end()));
    candidates = std::move(filtered);
  }

  std::vector<std::pair<double, std::size_t>> scored;
  for (std::size_t i : candidates) {
    double s = Score(records_[i], query);
    if (s > 0.0) scored.emplace_back(s, i);
  }
  std::sort(scored.begin(), scored.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return records_[a.second].id < records_[b.second].id;
  });
  std::vector<DatasetRecord> results;
  for (std::size_t k = 0; k < scored.size() && k < kMaxResults; ++k) {
    results.push_back(records_[scored[k].second]);
  }
  return results;
}

std::vector<std::string> Index::ListTopics(std::size_t limit) const {
  return TopByCount(tag_counts_, limit);
}

std::vector<std::string> Index::ListLocations(std::size_t limit) const {
  return TopByCount(location_counts_, limit);
}

CatalogLoad LoadCatalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read catalog file: " + path.string());

  std::vector<DatasetRecord> records;
  std::vector<std::string> warnings;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto where = "line " + std::to_string(line_number) + ": ";
    auto object = nlohmann::json::parse(line, nullptr, false);
    if (object.is_discarded() || !object.is_object()) {
      warnings.push_back(where + "malformed record");
      continue;
    }
    DatasetRecord record;
    record.id = StringField(object, "id");
    record.title = StringField(object, "title");
    record.description = StringField(object, "description");
    record.tags = StringList(object.value("tags", nlohmann::json()));
    record.locations = StringList(object.value("locations", nlohmann::json()));
    record.url = StringField(object, "url");
    record.portal = StringField(object, "portal");
    if (record.id.empty()) {
      warnings.push_back(where + "missing id");
      continue;
    }
    if (record.title.empty() || record.url.empty()) {
      warnings.push_back(where + "record '" + record.id + "' missing " +
                         (record.title.empty() ? "title" : "url"));
      continue;
    }
    records.push_back(std::move(record));
  }
  return CatalogLoad{Index(std::move(records)), std::move(warnings)};
}

}  // namespace odbot::catalog
