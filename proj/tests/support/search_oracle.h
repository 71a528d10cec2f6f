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

#ifndef ODBOT_TESTS_SEARCH_ORACLE_H_
#define ODBOT_TESTS_SEARCH_ORACLE_H_

// Reference ranking for ASCII catalogs, written from the scoring rule:
// per keyword +3 title word, +2 tag word, +1 description word; a set
// location must equal one record location ignoring case.

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "odbot/catalog/dataset.h"

namespace odbot::testing {

inline std::string AsciiLower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline std::set<std::string> AsciiWords(const std::string& s) {
  std::set<std::string> out;
  std::string word;
  for (char c : s + " ") {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (!word.empty()) {
      out.insert(word);
      word.clear();
    }
  }
  return out;
}

inline double OracleScore(const catalog::DatasetRecord& r,
                          const std::vector<std::string>& keywords,
                          const std::optional<std::string>& location) {
  if (location) {
    bool found = false;
    for (const auto& l : r.locations) found |= AsciiLower(l) == AsciiLower(*location);
    if (!found) return 0.0;
  }
  std::set<std::string> tags;
  for (const auto& t : r.tags) tags.merge(AsciiWords(t));
  auto title = AsciiWords(r.title);
  auto description = AsciiWords(r.description);
  double score = 0.0;
  for (const auto& k : keywords) {
    score += 3.0 * title.count(k) + 2.0 * tags.count(k) + 1.0 * description.count(k);
  }
  return score;
}

// Ids of the top five records by (score desc, id asc) with score > 0.
inline std::vector<std::string> OracleSearch(const std::vector<catalog::DatasetRecord>& records,
                                             const std::vector<std::string>& keywords,
                                             const std::optional<std::string>& location) {
  std::vector<std::pair<double, std::string>> scored;
  for (const auto& r : records) {
    double s = OracleScore(r, keywords, location);
    if (s > 0) scored.emplace_back(-s, r.id);
  }
  std::sort(scored.begin(), scored.end());
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < scored.size() && i < 5; ++i) ids.push_back(scored[i].second);
  return ids;
}

}  // namespace odbot::testing

#endif  // ODBOT_TESTS_SEARCH_ORACLE_H_
