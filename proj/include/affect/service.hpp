// Copyright 2026 The Affect Engine Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Session service over HTTP with JSON bodies.
//
//   POST /sessions                      {"persona": "alice"}   -> {"id": ...}
//   POST /sessions/{id}/events          case frame (+ "context",
//                                       "dry_run")             -> turn record
//   POST /sessions/{id}/feedback        {"ev": 0.6, "sign": "+"} -> report
//   GET  /sessions/{id}                                        -> state
//   GET  /sessions/{id}/trace                                  -> JSON lines
//   POST /sessions/{id}/snapshot                               -> file paths
//
// 404 unknown session, 422 invalid case frame or feedback, 409 feedback
// without a pending event, 400 unreadable body.

#ifndef AFFECT_SERVICE_HPP
#define AFFECT_SERVICE_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "affect/session.hpp"

namespace httplib {
class Server;
}

namespace affect {

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

class Service {
 public:
  Service(FavoriteValueDB db, EngineConfig config,
          std::optional<std::string> snapshot_dir = std::nullopt);

  // Transport-independent entry point; safe to call from many threads.
  HttpResponse handle(std::string_view method, std::string_view path,
                      std::string_view body,
                      const std::map<std::string, std::string>& query = {});

  // Routes every endpoint of the server to handle().
  void bind(httplib::Server& server);

 private:
  struct Slot {
    explicit Slot(Session s) : session(std::move(s)) {}
    std::mutex mutex;
    Session session;
  };

  HttpResponse create_session(std::string_view body);
  std::shared_ptr<Slot> find(const std::string& id);

  HttpResponse post_event(Slot& slot, std::string_view body, bool dry_run);
  HttpResponse post_feedback(Slot& slot, std::string_view body);
  HttpResponse get_state(Slot& slot);
  HttpResponse get_trace(Slot& slot);
  HttpResponse post_snapshot(Slot& slot);

  const FavoriteValueDB db_;
  const EngineConfig config_;
  const std::optional<std::string> snapshot_dir_;

  std::mutex registry_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::mt19937_64 id_source_;
};

}  // namespace affect

#endif  // AFFECT_SERVICE_HPP
