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

#include "affect/service.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <httplib.h>

#include "affect/serialization.hpp"

namespace affect {

namespace {

HttpResponse json_response(int status, const Json& body) {
  return {status, body.dump(), "application/json"};
}

HttpResponse error_response(int status, std::string_view code,
                            const std::string& message) {
  return json_response(status, {{"error", code}, {"message", message}});
}

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : path) {
    if (c == '/') {
      if (!cur.empty()) parts.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) parts.push_back(std::move(cur));
  return parts;
}

std::optional<Json> parse_body(std::string_view body) {
  if (body.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    return Json::object();
  }
  try {
    return Json::parse(body);
  } catch (const Json::parse_error&) {
    return std::nullopt;
  }
}

}  // namespace

Service::Service(FavoriteValueDB db, EngineConfig config,
                 std::optional<std::string> snapshot_dir)
    : db_(std::move(db)),
      config_(std::move(config)),
      snapshot_dir_(std::move(snapshot_dir)),
      id_source_(std::random_device{}()) {
  config_.learning.validate();
  // Fails early on a bad transition table.
  (void)TransitionModel::from_probabilities(config_.transition_table,
                                            config_.pseudo_count);
}

HttpResponse Service::handle(std::string_view method, std::string_view path,
                             std::string_view body,
                             const std::map<std::string, std::string>& query) {
  const auto parts = split_path(path);
  if (parts.empty() || parts[0] != "sessions" || parts.size() > 3) {
    return error_response(404, "NotFound", "no such endpoint");
  }
  if (parts.size() == 1) {
    if (method != "POST") return error_response(405, "MethodNotAllowed", "use POST");
    return create_session(body);
  }
  auto slot = find(parts[1]);
  if (!slot) return error_response(404, "UnknownSession", "unknown session");
  std::lock_guard lock(slot->mutex);
  if (parts.size() == 2) {
    if (method != "GET") return error_response(405, "MethodNotAllowed", "use GET");
    return get_state(*slot);
  }
  const std::string& leaf = parts[2];
  if (leaf == "events" && method == "POST") {
    auto it = query.find("dry_run");
    const bool dry = it != query.end() && (it->second == "true" || it->second == "1");
    return post_event(*slot, body, dry);
  }
  if (leaf == "feedback" && method == "POST") return post_feedback(*slot, body);
  if (leaf == "trace" && method == "GET") return get_trace(*slot);
  if (leaf == "snapshot" && method == "POST") return post_snapshot(*slot);
  return error_response(404, "NotFound", "no such endpoint");
}

HttpResponse Service::create_session(std::string_view body) {
  auto json = parse_body(body);
  if (!json || !json->is_object()) {
    return error_response(400, "BadRequest", "body must be a JSON object");
  }
  std::string persona(kDefaultPersona);
  for (const auto& [key, v] : json->items()) {
    if (key != "persona") {
      return error_response(422, "ParseError", "unknown field '" + key + "'");
    }
    if (!v.is_string() || v.get<std::string>().empty()) {
      return error_response(422, "ParseError", "'persona' must be a string");
    }
    persona = v.get<std::string>();
  }
  std::lock_guard lock(registry_mutex_);
  std::string id;
  do {
    std::ostringstream os;
    os << std::hex << id_source_();
    id = os.str();
  } while (sessions_.contains(id));
  auto slot = std::make_shared<Slot>(Session(id, persona, db_, config_));
  sessions_.emplace(id, std::move(slot));
  return json_response(201, {{"id", id}, {"persona", persona}});
}

std::shared_ptr<Service::Slot> Service::find(const std::string& id) {
  std::lock_guard lock(registry_mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

HttpResponse Service::post_event(Slot& slot, std::string_view body,
                                 bool dry_run) {
  auto json = parse_body(body);
  if (!json || !json->is_object()) {
    return error_response(400, "BadRequest", "body must be a JSON object");
  }
  try {
    Json frame = *json;
    ElicitingContext ctx;
    if (frame.contains("context")) {
      ctx = context_from_json(frame["context"]);
      frame.erase("context");
    }
    if (frame.contains("dry_run")) {
      if (!frame["dry_run"].is_boolean()) {
        return error_response(422, "ParseError", "'dry_run' must be a boolean");
      }
      dry_run = dry_run || frame["dry_run"].get<bool>();
      frame.erase("dry_run");
    }
    const CaseFrame cf = case_frame_from_json(frame);
    if (auto issue = validate_case_frame(cf)) {
      return error_response(422, error_code_name(issue->code), issue->message());
    }
    if (dry_run) return json_response(200, to_json(slot.session.preview_event(cf, ctx)));
    return json_response(200, to_json(slot.session.submit_event(cf, ctx)));
  } catch (const Error& e) {
    return error_response(422, error_code_name(e.code()), e.what());
  }
}

HttpResponse Service::post_feedback(Slot& slot, std::string_view body) {
  auto json = parse_body(body);
  if (!json || !json->is_object()) {
    return error_response(400, "BadRequest", "body must be a JSON object");
  }
  Feedback fb;
  try {
    fb = feedback_from_json(*json);
  } catch (const Error& e) {
    return error_response(422, error_code_name(e.code()), e.what());
  }
  try {
    return json_response(200, to_json(slot.session.submit_feedback(fb)));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kFeedbackWithoutEvent) {
      return error_response(409, error_code_name(e.code()), e.what());
    }
    return error_response(422, error_code_name(e.code()), e.what());
  }
}

HttpResponse Service::get_state(Slot& slot) {
  const Session& s = slot.session;
  const MentalState mood = s.mstn().current();
  Json cost_row = Json::object();
  const auto costs = s.mstn().cost_row(mood);
  for (int j = 0; j < kMentalStateCount; ++j) {
    cost_row[std::string(mental_state_name(state_at(j)))] = costs(j);
  }
  Json deltas = Json::array();
  for (const auto& [key, fv] : s.db().personal()) {
    if (key.first != s.persona()) continue;
    const FavoriteValue before = s.initial_db().lookup(key.first, key.second);
    const FavoriteValue after = s.db().lookup(key.first, key.second);
    if (before == after) continue;
    deltas.push_back({{"word", key.second},
                      {"before", to_json(before)},
                      {"after", to_json(after)}});
  }
  Json state = {{"id", s.id()},
                {"persona", s.persona()},
                {"mood", mental_state_name(mood)},
                {"turns", s.turns().size()},
                {"cost_row", cost_row},
                {"fv_deltas", deltas},
                {"last_turn", s.turns().empty() ? Json() : to_json(s.turns().back())}};
  return json_response(200, state);
}

HttpResponse Service::get_trace(Slot& slot) {
  std::ostringstream os;
  write_trace(os, slot.session.turns());
  return {200, os.str(), "application/x-ndjson"};
}

HttpResponse Service::post_snapshot(Slot& slot) {
  if (!snapshot_dir_) {
    return error_response(409, "SnapshotDisabled", "no snapshot directory configured");
  }
  namespace fs = std::filesystem;
  const fs::path dir(*snapshot_dir_);
  std::error_code ec;
  fs::create_directories(dir, ec);
  const auto db_path = (dir / (slot.session.id() + ".fv.jsonl")).string();
  const auto trace_path = (dir / (slot.session.id() + ".trace.jsonl")).string();
  try {
    save_fv_db(db_path, slot.session.db());
    std::ofstream out(trace_path, std::ios::trunc);
    if (!out) throw Error(ErrorCode::kParse, "cannot write " + trace_path);
    write_trace(out, slot.session.turns());
  } catch (const Error& e) {
    return error_response(500, error_code_name(e.code()), e.what());
  }
  return json_response(200, {{"fv_db", db_path}, {"trace", trace_path}});
}

void Service::bind(httplib::Server& server) {
  auto adapt = [this](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query[k] = v;
    const HttpResponse r = handle(req.method, req.path, req.body, query);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  server.Post(R"(/sessions(/.*)?)", adapt);
  server.Get(R"(/sessions(/.*)?)", adapt);
}

}  // namespace affect
