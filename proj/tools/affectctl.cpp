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

// affectctl: batch evaluation, script replay and the HTTP session service.
//
// Exit codes: 0 success, 1 engine or I/O failure, 2 malformed input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "affect/serialization.hpp"
#include "affect/service.hpp"
#include "affect/session.hpp"

// After Eigen: <resolv.h> defines _res, which Eigen uses as an identifier.
#include <httplib.h>

namespace {

constexpr int kExitEngine = 1;
constexpr int kExitInput = 2;

struct EngineOptions {
  std::string fv_db;
  std::string rules;
  std::string transition_table;
  std::string decision_table;
  std::string persona = std::string(affect::kDefaultPersona);
  std::optional<double> eta;
  std::optional<double> lambda;
  std::string mu_source;
};

void add_engine_options(CLI::App& cmd, EngineOptions& o) {
  cmd.add_option("--fv-db", o.fv_db, "Favorite-value database (JSON lines)")
      ->envname("AFFECT_FV_DB");
  cmd.add_option("--rules", o.rules, "Fuzzy rule file")->envname("AFFECT_RULES");
  cmd.add_option("--transition-table", o.transition_table,
                 "Mental-state transition table (JSON)")
      ->envname("AFFECT_TRANSITION_TABLE");
  cmd.add_option("--decision-table", o.decision_table,
                 "Emotion decision table (JSON)")
      ->envname("AFFECT_DECISION_TABLE");
  cmd.add_option("--persona", o.persona, "Person whose favorite values apply")
      ->envname("AFFECT_PERSONA");
  cmd.add_option("--eta", o.eta, "Learning rate in (0, 1]")->envname("AFFECT_ETA");
  cmd.add_option("--lambda", o.lambda, "Base firing threshold in [0, 1]")
      ->envname("AFFECT_LAMBDA");
  cmd.add_option("--mu-source", o.mu_source, "Rule certainty source: fixed or mstn")
      ->envname("AFFECT_MU_SOURCE");
}

affect::FavoriteValueDB load_db(const EngineOptions& o) {
  if (o.fv_db.empty()) return {};
  return affect::load_fv_db(o.fv_db);
}

affect::EngineConfig load_config(const EngineOptions& o) {
  affect::EngineConfig config;
  if (!o.rules.empty()) config.rules = affect::RuleBase(affect::load_rules(o.rules));
  if (!o.transition_table.empty()) {
    auto table = affect::load_transition_table(o.transition_table);
    config.transition_table = table.probabilities;
    config.pseudo_count = table.pseudo_count;
  }
  if (!o.decision_table.empty()) {
    config.decisions = affect::DecisionTable::load(o.decision_table);
  }
  if (o.eta) config.learning.eta = *o.eta;
  if (o.lambda) config.learning.base_lambda = *o.lambda;
  if (!o.mu_source.empty()) {
    auto src = affect::parse_mu_source(o.mu_source);
    if (!src) {
      throw affect::Error(affect::ErrorCode::kInvalidConfig,
                          "unknown mu source '" + o.mu_source + "'");
    }
    config.learning.mu_source = *src;
  }
  config.learning.validate();
  return config;
}

std::string format_result(const affect::CaseFrame& cf,
                          const affect::EmotionResult& r) {
  std::ostringstream os;
  os << cf.event_type << '\t';
  char buf[128];
  for (std::size_t i = 0; i < r.vectors.size(); ++i) {
    const auto& v = r.vectors[i];
    std::snprintf(buf, sizeof buf, "(%.6f,%.6f,%.6f) %s", v.f(0), v.f(1),
                  v.f(2), std::string(affect::octant_name(v.octant)).c_str());
    if (i) os << "; ";
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "\t%.6f", r.signed_value);
  os << buf;
  return os.str();
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw affect::Error(affect::ErrorCode::kParse, "cannot open " + path);
  return in;
}

int run_eval(const EngineOptions& o, const std::string& events_path) {
  affect::FavoriteValueDB db;
  affect::EngineConfig config;
  std::vector<affect::CaseFrame> frames;
  try {
    db = load_db(o);
    config = load_config(o);
    auto in = open_input(events_path);
    frames = affect::read_case_frames(in);
  } catch (const affect::Error& e) {
    std::cerr << "affectctl eval: " << e.what() << '\n';
    return kExitInput;
  }
  try {
    for (const auto& cf : frames) {
      std::cout << format_result(cf, affect::egc_eval(cf, db, o.persona, config.egc))
                << '\n';
    }
  } catch (const affect::Error& e) {
    std::cerr << "affectctl eval: " << e.what() << '\n';
    return kExitEngine;
  }
  return 0;
}

int run_replay(const EngineOptions& o, const std::string& script_path,
               const std::string& trace_out, const std::string& db_out) {
  affect::FavoriteValueDB db;
  affect::EngineConfig config;
  std::vector<affect::ScriptTurn> script;
  try {
    db = load_db(o);
    config = load_config(o);
    auto in = open_input(script_path);
    script = affect::read_script(in);
  } catch (const affect::Error& e) {
    std::cerr << "affectctl replay: " << e.what() << '\n';
    return kExitInput;
  }
  try {
    const affect::Session session = affect::replay("replay", o.persona, db, config, script);
    if (trace_out.empty() || trace_out == "-") {
      affect::write_trace(std::cout, session.turns());
    } else {
      std::ofstream out(trace_out, std::ios::trunc);
      if (!out) throw affect::Error(affect::ErrorCode::kParse, "cannot write " + trace_out);
      affect::write_trace(out, session.turns());
    }
    if (!db_out.empty()) affect::save_fv_db(db_out, session.db());
  } catch (const affect::Error& e) {
    std::cerr << "affectctl replay: " << e.what() << '\n';
    return kExitEngine;
  }
  return 0;
}

int run_serve(const EngineOptions& o, const std::string& host, int port,
              const std::string& snapshot_dir) {
  std::optional<affect::Service> service;
  try {
    std::optional<std::string> dir;
    if (!snapshot_dir.empty()) dir = snapshot_dir;
    service.emplace(load_db(o), load_config(o), dir);
  } catch (const affect::Error& e) {
    std::cerr << "affectctl serve: " << e.what() << '\n';
    return kExitInput;
  }
  httplib::Server server;
  service->bind(server);
  std::cerr << "listening on " << host << ':' << port << '\n';
  if (!server.listen(host, port)) {
    std::cerr << "affectctl serve: cannot bind " << host << ':' << port << '\n';
    return kExitEngine;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affective engine command line"};
  app.require_subcommand(1);

  EngineOptions eval_opts;
  std::string events_path;
  auto* eval = app.add_subcommand("eval", "Evaluate case frames, one result line each");
  add_engine_options(*eval, eval_opts);
  eval->add_option("events", events_path, "Case-frame file (JSON lines)")->required();

  EngineOptions replay_opts;
  std::string script_path, trace_out, db_out;
  auto* replay = app.add_subcommand("replay", "Run a session script with feedback");
  add_engine_options(*replay, replay_opts);
  replay->add_option("script", script_path, "Session script (JSON lines)")->required();
  replay->add_option("--trace-out", trace_out, "Trace destination, '-' for stdout")
      ->envname("AFFECT_TRACE_OUT");
  replay->add_option("--db-out", db_out, "Write the final favorite-value database")
      ->envname("AFFECT_DB_OUT");

  EngineOptions serve_opts;
  std::string host = "127.0.0.1", snapshot_dir;
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Run the HTTP session service");
  add_engine_options(*serve, serve_opts);
  serve->add_option("--host", host, "Bind address")->envname("AFFECT_HOST");
  serve->add_option("--port", port, "Bind port")->envname("AFFECT_PORT");
  serve->add_option("--snapshot-dir", snapshot_dir, "Directory for snapshots")
      ->envname("AFFECT_SNAPSHOT_DIR");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  if (*eval) return run_eval(eval_opts, events_path);
  if (*replay) return run_replay(replay_opts, script_path, trace_out, db_out);
  return run_serve(serve_opts, host, port, snapshot_dir);
}
