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

#ifndef ODBOT_SERVICE_SESSION_STORE_H_
#define ODBOT_SERVICE_SESSION_STORE_H_

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "odbot/dialogue/tracker.h"

namespace odbot::service {

class SessionNotFound : public std::runtime_error {
 public:
  explicit SessionNotFound(const std::string& id)
      : std::runtime_error("unknown or expired session '" + id + "'") {}
};

// In-memory trackers keyed by session id with idle-time eviction. Work on one
// session is serialized in arrival order; different sessions run
// independently.
class SessionStore {
 public:
  using NowFn = std::function<dialogue::TimePoint()>;

  explicit SessionStore(std::chrono::minutes ttl = std::chrono::minutes(30),
                        NowFn now = [] { return dialogue::Clock::now(); });

  // Random 128-bit hex id.
  std::string Create();
  // Throws std::invalid_argument if the id is empty or already live.
  std::string Create(std::string id);

  bool Contains(const std::string& id);
  std::size_t size();
  std::chrono::minutes ttl() const { return ttl_; }
  dialogue::TimePoint now() const { return now_(); }

  // Copy of the tracker; nullopt if unknown or expired.
  std::optional<dialogue::Tracker> Snapshot(const std::string& id);

  // Runs fn(Tracker&) with exclusive access to the session. Callers queue
  // FIFO. Throws SessionNotFound.
  template <typename Fn>
  std::invoke_result_t<Fn, dialogue::Tracker&> WithSession(const std::string& id,
                                                           Fn&& fn);

 private:
  struct Entry {
    explicit Entry(std::string id) : tracker(std::move(id)) {}
    dialogue::Tracker tracker;
    dialogue::TimePoint created;
    dialogue::TimePoint last_touched;
    std::mutex mu;
    std::condition_variable turn;
    std::uint64_t next_ticket = 0;
    std::uint64_t serving = 0;
  };

  // Finds a live entry and takes a ticket, evicting it if idle past the TTL.
  std::shared_ptr<Entry> Acquire(const std::string& id, std::uint64_t* ticket);
  void EvictExpiredLocked(dialogue::TimePoint now);

  std::chrono::minutes ttl_;
  NowFn now_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
};

template <typename Fn>
std::invoke_result_t<Fn, dialogue::Tracker&> SessionStore::WithSession(
    const std::string& id, Fn&& fn) {
  std::uint64_t ticket = 0;
  auto entry = Acquire(id, &ticket);
  {
    std::unique_lock lock(entry->mu);
    entry->turn.wait(lock, [&] { return entry->serving == ticket; });
  }
  // The ticket holder owns the tracker; `mu` only guards the counters.
  struct Release {
    Entry& e;
    SessionStore& store;
    ~Release() {
      std::lock_guard lock(e.mu);
      e.last_touched = store.now_();
      ++e.serving;
      e.turn.notify_all();
    }
  } release{*entry, *this};
  return std::invoke(std::forward<Fn>(fn), entry->tracker);
}

}  // namespace odbot::service

#endif  // ODBOT_SERVICE_SESSION_STORE_H_
