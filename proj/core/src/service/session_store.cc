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

#include "odbot/service/session_store.h"

#include <random>

namespace odbot::service {

SessionStore::SessionStore(std::chrono::minutes ttl, NowFn now)
    : ttl_(ttl), now_(std::move(now)) {}

std::string SessionStore::Create() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  static constexpr char kHex[] = "0123456789abcdef";
  for (;;) {
    std::string id;
    for (int half = 0; half < 2; ++half) {
      auto bits = rng();
      for (int i = 0; i < 16; ++i, bits >>= 4) id.push_back(kHex[bits & 0xF]);
    }
    std::lock_guard lock(mu_);
    if (sessions_.contains(id)) continue;
    auto entry = std::make_shared<Entry>(id);
    entry->created = entry->last_touched = now_();
    sessions_.emplace(id, std::move(entry));
    return id;
  }
}

std::string SessionStore::Create(std::string id) {
  if (id.empty()) throw std::invalid_argument("session id must not be empty");
  std::lock_guard lock(mu_);
  EvictExpiredLocked(now_());
  if (sessions_.contains(id)) {
    throw std::invalid_argument("session '" + id + "' already exists");
  }
  auto entry = std::make_shared<Entry>(id);
  entry->created = entry->last_touched = now_();
  sessions_.emplace(id, std::move(entry));
  return id;
}

bool SessionStore::Contains(const std::string& id) {
  std::lock_guard lock(mu_);
  EvictExpiredLocked(now_());
  return sessions_.contains(id);
}

std::size_t SessionStore::size() {
  std::lock_guard lock(mu_);
  EvictExpiredLocked(now_());
  return sessions_.size();
}

std::optional<dialogue::Tracker> SessionStore::Snapshot(const std::string& id) {
  try {
    return WithSession(id, [](const dialogue::Tracker& t) { return t; });
  } catch (const SessionNotFound&) {
    return std::nullopt;
  }
}

std::shared_ptr<SessionStore::Entry> SessionStore::Acquire(
    const std::string& id, std::uint64_t* ticket) {
  std::lock_guard lock(mu_);
  EvictExpiredLocked(now_());
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw SessionNotFound(id);
  auto entry = it->second;
  std::lock_guard entry_lock(entry->mu);
  *ticket = entry->next_ticket++;
  return entry;
}

void SessionStore::EvictExpiredLocked(dialogue::TimePoint now) {
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    auto& entry = *it->second;
    bool expired = false;
    {
      std::lock_guard entry_lock(entry.mu);
      // A session with queued or running work is in use, never idle.
      expired = entry.serving == entry.next_ticket &&
                now - entry.last_touched > ttl_;
    }
    if (expired) {
      it = sessions_.erase(it);
    } else {
      ++it;
    }
  }
}

}  // namespace odbot::service
