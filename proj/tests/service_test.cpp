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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include <doctest.h>

#include "affect/serialization.hpp"
#include "affect/service.hpp"
#include "script_gen.hpp"
#include "test_util.hpp"

// After Eigen: <resolv.h> defines _res.
#include <httplib.h>

using namespace affect;
using testing::known;

namespace fs = std::filesystem;

namespace {

FavoriteValueDB service_db() {
  FavoriteValueDB db;
  db.set_initial("i", known(0.5));
  db.set_initial("cake", known(0.9));
  db.set_initial("eat", known(0.7));
  return db;
}

Json body_of(const HttpResponse& r) { return Json::parse(r.body); }

std::string new_session(Service& svc, const std::string& body = "") {
  const HttpResponse r = svc.handle("POST", "/sessions", body);
  REQUIRE(r.status == 201);
  return body_of(r)["id"].get<std::string>();
}

const char* kEatCake =
    R"x({"type": "V(S,O)", "slots": {"S": "i", "O": "cake", "P": "eat"}})x";
const char* kEatPie =
    R"x({"type": "V(S,O)", "slots": {"S": "i", "O": "pie", "P": "eat"}})x";

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("affect-test-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& cmd) {
  Run r{0, ""};
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

}  // namespace

TEST_CASE("create, event, state") {
  Service svc(service_db(), EngineConfig{});
  const std::string id = new_session(svc, R"x({"persona": "alice"})x");

  const HttpResponse ev = svc.handle("POST", "/sessions/" + id + "/events", kEatCake);
  REQUIRE(ev.status == 200);
  const Json turn = body_of(ev);
  CHECK(turn["turn"] == 0);
  CHECK(turn["mstn"]["to"] == "happy");

  const Json state = body_of(svc.handle("GET", "/sessions/" + id, ""));
  CHECK(state["mood"] == "happy");
  CHECK(state["persona"] == "alice");
  CHECK(state["turns"] == 1);
  CHECK(state["cost_row"].size() == 7);
  CHECK(state["cost_row"]["happy"].get<double>() > 0.0);
  CHECK(state["last_turn"] == turn);
}

TEST_CASE("feedback shows up as a favorite-value change") {
  Service svc(service_db(), EngineConfig{});
  const std::string id = new_session(svc);
  REQUIRE(svc.handle("POST", "/sessions/" + id + "/events", kEatPie).status == 200);
  const HttpResponse fb =
      svc.handle("POST", "/sessions/" + id + "/feedback", R"x({"ev": 0.2, "sign": "+"})x");
  REQUIRE(fb.status == 200);
  const Json report = body_of(fb);
  CHECK(report["branch"] == "Eq.10");
  REQUIRE(report["changes"].size() == 1);

  const Json state = body_of(svc.handle("GET", "/sessions/" + id, ""));
  REQUIRE(state["fv_deltas"].size() == 1);
  CHECK(state["fv_deltas"][0]["word"] == "pie");
  CHECK(state["fv_deltas"][0]["after"] == report["changes"][0]["after"]);
  CHECK(state["fv_deltas"][0]["before"]["known"] == false);
}

TEST_CASE("error statuses") {
  Service svc(service_db(), EngineConfig{});
  const std::string id = new_session(svc);
  CHECK(svc.handle("GET", "/sessions/nope", "").status == 404);
  CHECK(svc.handle("POST", "/sessions/nope/events", kEatCake).status == 404);
  CHECK(svc.handle("GET", "/elsewhere", "").status == 404);

  const HttpResponse fb =
      svc.handle("POST", "/sessions/" + id + "/feedback", R"x({"ev": 0.5})x");
  CHECK(fb.status == 409);
  CHECK(body_of(fb)["error"] == "FeedbackWithoutEvent");

  const HttpResponse missing = svc.handle(
      "POST", "/sessions/" + id + "/events",
      R"x({"type": "V(S,O)", "slots": {"S": "i", "P": "eat"}})x");
  CHECK(missing.status == 422);
  CHECK(body_of(missing)["error"] == "MissingSlot");

  CHECK(svc.handle("POST", "/sessions/" + id + "/events",
                   R"x({"type": "V(X)", "slots": {"S": "i", "P": "eat"}})x")
            .status == 422);
  CHECK(svc.handle("POST", "/sessions/" + id + "/events", "{not json").status == 400);
  CHECK(svc.handle("POST", "/sessions/" + id + "/events", R"x({"type": "V(S)", "slots": {"S": "i", "P": "eat"}, "extra": 1})x").status == 422);

  REQUIRE(svc.handle("POST", "/sessions/" + id + "/events", kEatCake).status == 200);
  CHECK(svc.handle("POST", "/sessions/" + id + "/feedback", R"x({"ev": 3})x").status == 422);
  CHECK(svc.handle("POST", "/sessions/" + id + "/feedback", R"x({"ev": 0.3})x").status == 200);
  CHECK(svc.handle("POST", "/sessions/" + id + "/feedback", R"x({"ev": 0.3})x").status == 409);
  CHECK(svc.handle("POST", "/sessions", R"x({"who": "x"})x").status == 422);
}

TEST_CASE("dry run leaves the session untouched") {
  Service svc(service_db(), EngineConfig{});
  const std::string id = new_session(svc);
  const Json before = body_of(svc.handle("GET", "/sessions/" + id, ""));

  const std::string body =
      R"x({"type": "V(S,O)", "slots": {"S": "i", "O": "cake", "P": "eat"}, "dry_run": true})x";
  const HttpResponse preview = svc.handle("POST", "/sessions/" + id + "/events", body);
  REQUIRE(preview.status == 200);
  CHECK(body_of(preview)["dry_run"] == true);
  CHECK(body_of(preview)["mstn"]["to"] == "happy");

  const HttpResponse by_query =
      svc.handle("POST", "/sessions/" + id + "/events", kEatCake, {{"dry_run", "true"}});
  CHECK(body_of(by_query)["dry_run"] == true);

  CHECK(body_of(svc.handle("GET", "/sessions/" + id, "")) == before);
  CHECK(svc.handle("GET", "/sessions/" + id + "/trace", "").body.empty());
  CHECK(svc.handle("POST", "/sessions/" + id + "/feedback", R"x({"ev": 0.5})x").status == 409);

  // Committing the same event gives the previewed record.
  Json committed = body_of(svc.handle("POST", "/sessions/" + id + "/events", kEatCake));
  Json previewed = body_of(preview);
  committed.erase("dry_run");
  previewed.erase("dry_run");
  CHECK(committed == previewed);
}

TEST_CASE("sessions are independent") {
  Service svc(service_db(), EngineConfig{});
  const std::string a = new_session(svc);
  const std::string b = new_session(svc);
  CHECK(a != b);
  svc.handle("POST", "/sessions/" + a + "/events", kEatPie);
  svc.handle("POST", "/sessions/" + a + "/feedback", R"x({"ev": 0.9})x");
  CHECK(body_of(svc.handle("GET", "/sessions/" + b, ""))["fv_deltas"].empty());
  CHECK(body_of(svc.handle("GET", "/sessions/" + b, ""))["mood"] == "quiet");
}

TEST_CASE("concurrent sessions") {
  Service svc(script_gen::vocabulary_db(), EngineConfig{});
  std::vector<std::string> ids;
  for (int i = 0; i < 4; ++i) ids.push_back(new_session(svc));
  std::vector<std::string> traces(4);
  std::vector<std::thread> workers;
  for (int i = 0; i < 4; ++i) {
    workers.emplace_back([&, i] {
      std::mt19937_64 rng(100);
      for (const auto& t : script_gen::random_script(rng, 40)) {
        Json ev = to_json(t.event);
        ev["context"] = to_json(t.context);
        svc.handle("POST", "/sessions/" + ids[i] + "/events", ev.dump());
        if (t.feedback) {
          svc.handle("POST", "/sessions/" + ids[i] + "/feedback", to_json(*t.feedback).dump());
        }
      }
      traces[i] = svc.handle("GET", "/sessions/" + ids[i] + "/trace", "").body;
    });
  }
  for (auto& w : workers) w.join();
  for (int i = 1; i < 4; ++i) CHECK(traces[i] == traces[0]);
  CHECK_FALSE(traces[0].empty());
}

TEST_CASE("snapshots") {
  TempDir dir;
  Service svc(service_db(), EngineConfig{}, dir.path.string());
  const std::string id = new_session(svc);
  svc.handle("POST", "/sessions/" + id + "/events", kEatPie);
  svc.handle("POST", "/sessions/" + id + "/feedback", R"x({"ev": 0.2})x");
  const HttpResponse r = svc.handle("POST", "/sessions/" + id + "/snapshot", "");
  REQUIRE(r.status == 200);
  const FavoriteValueDB db = load_fv_db(body_of(r)["fv_db"].get<std::string>());
  CHECK(db.lookup(kDefaultPersona, "pie").known);
  CHECK(slurp(body_of(r)["trace"].get<std::string>()) ==
        svc.handle("GET", "/sessions/" + id + "/trace", "").body);

  Service no_dir(service_db(), EngineConfig{});
  const std::string other = new_session(no_dir);
  CHECK(no_dir.handle("POST", "/sessions/" + other + "/snapshot", "").status == 409);
}

TEST_CASE("http round trip") {
  Service svc(service_db(), EngineConfig{});
  httplib::Server server;
  svc.bind(server);
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto created = client.Post("/sessions", "{}", "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  const std::string id = Json::parse(created->body)["id"].get<std::string>();

  auto dry = client.Post("/sessions/" + id + "/events?dry_run=true", kEatCake, "application/json");
  REQUIRE(dry);
  CHECK(Json::parse(dry->body)["dry_run"] == true);

  auto ev = client.Post("/sessions/" + id + "/events", kEatCake, "application/json");
  REQUIRE(ev);
  CHECK(ev->status == 200);
  auto fb = client.Post("/sessions/" + id + "/feedback", R"x({"ev": 0.4})x", "application/json");
  REQUIRE(fb);
  CHECK(fb->status == 200);
  auto state = client.Get("/sessions/" + id);
  REQUIRE(state);
  CHECK(Json::parse(state->body)["turns"] == 1);
  auto trace = client.Get("/sessions/" + id + "/trace");
  REQUIRE(trace);
  CHECK(trace->get_header_value("Content-Type") == "application/x-ndjson");
  auto missing = client.Get("/sessions/none");
  REQUIRE(missing);
  CHECK(missing->status == 404);

  server.stop();
  t.join();
}

TEST_CASE("command line and service produce the same trace") {
  TempDir dir;
  std::mt19937_64 rng(71);
  const auto script = script_gen::random_script(rng, 50);
  const FavoriteValueDB db = script_gen::vocabulary_db();
  save_fv_db((dir.path / "fv.jsonl").string(), db);
  {
    std::ofstream out(dir.path / "script.jsonl");
    for (const auto& t : script) out << to_json(t).dump() << '\n';
  }

  const Run r = run(std::string(AFFECTCTL_PATH) + " replay --fv-db " +
                    (dir.path / "fv.jsonl").string() + " --trace-out " +
                    (dir.path / "trace.jsonl").string() + " --db-out " +
                    (dir.path / "out.jsonl").string() + " " +
                    (dir.path / "script.jsonl").string());
  REQUIRE_MESSAGE(r.status == 0, r.out);

  Service svc(db, EngineConfig{});
  const std::string id = new_session(svc);
  for (const auto& t : script) {
    Json ev = to_json(t.event);
    ev["context"] = to_json(t.context);
    REQUIRE(svc.handle("POST", "/sessions/" + id + "/events", ev.dump()).status == 200);
    if (t.feedback) {
      REQUIRE(svc.handle("POST", "/sessions/" + id + "/feedback", to_json(*t.feedback).dump())
                  .status == 200);
    }
  }
  const std::string service_trace = svc.handle("GET", "/sessions/" + id + "/trace", "").body;
  CHECK(slurp(dir.path / "trace.jsonl") == service_trace);
  CHECK(script.size() == 50);

  const Session direct = replay("x", std::string(kDefaultPersona), db, EngineConfig{}, script);
  CHECK(load_fv_db((dir.path / "out.jsonl").string()) == direct.db());
}

TEST_CASE("command line behavior") {
  const std::string ctl = AFFECTCTL_PATH;
  const std::string data = AFFECT_TEST_DATA;

  const Run ok = run(ctl + " eval --fv-db " + data + "/fv.jsonl " + data + "/events.jsonl");
  CHECK(ok.status == 0);
  std::istringstream lines(ok.out);
  std::vector<std::string> got;
  for (std::string l; std::getline(lines, l);) got.push_back(l);
  REQUIRE(got.size() == 3);
  CHECK(got[0] == "V(S,OM)\t(0.500000,-0.400000,0.800000) IV\t-0.591608");
  CHECK(got[2].find("OnAxis") != std::string::npos);
  CHECK(got[2].substr(got[2].rfind('\t') + 1) == "0.000000");

  const Run bad =
      run(ctl + " eval --fv-db " + data + "/fv.jsonl " + data + "/events_malformed.jsonl");
  CHECK(bad.status == 2);
  CHECK(bad.out.find("line 2") != std::string::npos);

  const Run env = run("AFFECT_FV_DB=" + data + "/fv.jsonl " + ctl + " eval " + data +
                      "/events.jsonl");
  CHECK(env.out == ok.out);

  const Run persona = run(ctl + " eval --persona alice --fv-db " + data + "/fv.jsonl " +
                          data + "/events.jsonl");
  CHECK(persona.status == 0);
  CHECK(persona.out != ok.out);  // alice's dog differs

  TempDir dir;
  { std::ofstream(dir.path / "empty.jsonl"); }
  const Run empty = run(ctl + " replay --fv-db " + data + "/fv.jsonl --db-out " +
                        (dir.path / "out.jsonl").string() + " " +
                        (dir.path / "empty.jsonl").string());
  CHECK(empty.status == 0);
  CHECK(empty.out.empty());
  CHECK(load_fv_db((dir.path / "out.jsonl").string()) == load_fv_db(data + "/fv.jsonl"));

  const Run bad_eta = run(ctl + " replay --eta 0 " + (dir.path / "empty.jsonl").string());
  CHECK(bad_eta.status == 2);
  const Run bad_mu = run(ctl + " replay --mu-source guess " + (dir.path / "empty.jsonl").string());
  CHECK(bad_mu.status == 2);
}
