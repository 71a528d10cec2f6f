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

#ifndef ODBOT_NER_EXTRACTOR_H_
#define ODBOT_NER_EXTRACTOR_H_

#include <span>
#include <string_view>
#include <vector>

#include "odbot/ner/crf.h"
#include "odbot/ner/entity.h"
#include "odbot/ner/gazetteer.h"

namespace odbot::ner {

// CRF mentions for already tokenized text. Every mention carries the
// posterior probability of the decoded path as its confidence.
std::vector<EntityMention> CrfMentions(const CrfModel& model,
                                       std::string_view text,
                                       std::span<const text::Token> tokens);

// Tokenize, decode, collapse BIO spans and merge with gazetteer matches.
// A CRF mention overlapping a gazetteer match is dropped. The result is
// sorted by start offset and non-overlapping.
std::vector<EntityMention> ExtractEntities(const CrfModel& model,
                                           const Gazetteer& gazetteer,
                                           std::string_view text);

}  // namespace odbot::ner

#endif  // ODBOT_NER_EXTRACTOR_H_
