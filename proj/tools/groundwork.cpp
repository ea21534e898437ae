/*
 * Copyright 2026 The Groundwork Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line entry point: run an episode, verify a trace, or serve the
// HTTP API.

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include "groundwork/agent/config.hpp"
#include "groundwork/agent/engine.hpp"
#include "groundwork/agent/trace.hpp"
#include "groundwork/checklist/critics.hpp"
#include "groundwork/core/error.hpp"
#include "groundwork/service/providers.hpp"
#include "groundwork/service/run_manager.hpp"
#include "groundwork/service/server.hpp"

namespace fs = std::filesystem;
using namespace groundwork;

namespace {

std::atomic<bool> g_abort{false};
std::atomic<bool> g_stop{false};

void on_signal(int) {
  g_abort = true;
  g_stop = true;
}

struct RunArgs {
  std::string config = "fixtures/tiktok/config.json";
  bool mock = false;
  std::string critic;
  int max_steps = -1;
  bool no_vcm = false;
  bool no_eam = false;
  std::string query;
  std::string out;
  std::string resume;
};

int cmd_run(const RunArgs& args) {
  const bool resume = !args.resume.empty();
  RunConfig config;
  if (resume) {
    // The run directory carries its own config; flags cannot change it.
    config = load_config(RunPaths{args.resume}.config());
  } else {
    config = load_config(args.config);
    if (args.mock) config.mock = true;
    if (!args.critic.empty()) config.critic_mode = critic_mode_from_string(args.critic);
    if (args.max_steps >= 0) config.max_steps = args.max_steps;
    if (args.no_vcm) config.vcm_enabled = false;
    if (args.no_eam) config.eam_enabled = false;
    if (!args.query.empty()) config.query = args.query;
    config.validate();
  }
  const std::string dir =
      resume ? args.resume : (args.out.empty() ? "runs/" + make_run_id(config) : args.out);

  // A human critic on the command line reads each decision document from
  // stdin after the review document is printed.
  ReviewChannel unused;
  RunConfig wiring = config;
  if (wiring.critic_mode == CriticMode::kHuman) wiring.critic_mode = CriticMode::kNone;
  ProviderBundle bundle(wiring, &unused);
  FunctionCritic console(
      [](const ReviewDocument& review) {
        std::cout << Json(review).dump(2) << "\n"
                  << "# post a decision document (" << kDecisionSchema << ") on stdin\n"
                  << std::flush;
        Json decision;
        if (!(std::cin >> decision)) {
          throw Error(ErrorCode::kCriticTimeout, "no decision on stdin");
        }
        return decision.get<DecisionDocument>();
      },
      "human");
  PolicyCritic fallback(bundle.policy());
  const bool human = config.critic_mode == CriticMode::kHuman;
  Providers base = bundle.providers();
  Providers providers{base.policy, base.environment, human ? console : base.critic,
                      human && config.review_fallback_llm ? &fallback : nullptr};

  RunHooks hooks;
  hooks.abort = &g_abort;
  std::optional<Phase> last_phase;
  hooks.on_phase = [&last_phase](Phase p) {
    if (last_phase == p) return;
    last_phase = p;
    std::cerr << "phase: " << to_string(p) << "\n";
  };
  const RunResult result = run_episode(config, providers, dir, hooks, resume);
  RunPaths paths{result.run_dir};
  std::cout << "run " << result.run_id << "\n"
            << "directory " << result.run_dir << "\n"
            << "stop " << to_string(result.stop.reason) << " after " << result.steps
            << " step(s)\n"
            << "final state " << result.final_state_id << "\n"
            << "report " << paths.report_markdown() << "\n";
  return result.stop.reason == StopReason::kOperatorAbort ? 2 : 0;
}

int cmd_replay(const std::string& trace, const std::string& query) {
  const VerifyResult v = verify_trace(trace, query);
  if (v.ok) {
    std::cout << v.message << "\n" << "final state " << v.final_state_id << "\n";
    return 0;
  }
  std::cerr << v.message << "\n";
  return 1;
}

int cmd_serve(const std::string& config_path, const std::string& host, int port,
              const std::string& runs_dir) {
  RunConfig base = load_config(config_path);
  RunManager runs(base, runs_dir);
  ServerOptions options;
  options.host = host;
  options.port = port;
  if (const char* token = std::getenv("GROUNDWORK_API_TOKEN")) options.token = token;
  ApiServer server(runs, options);
  const int bound = server.start();
  std::cout << "listening on http://" << host << ":" << bound << "\n" << std::flush;
  while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(200));
  server.stop();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"groundwork: checklist-driven research agent"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run (or resume) a research episode");
  run_cmd->add_option("--config", run.config, "Config file")->capture_default_str();
  run_cmd->add_flag("--mock", run.mock, "Use the offline fixture providers");
  run_cmd->add_option("--critic", run.critic, "Checklist critic")
      ->check(CLI::IsMember({"human", "llm", "none"}));
  run_cmd->add_option("--max-steps", run.max_steps, "Step horizon")
      ->check(CLI::NonNegativeNumber);
  run_cmd->add_flag("--no-vcm", run.no_vcm, "Disable the checklist and outline gate");
  run_cmd->add_flag("--no-eam", run.no_eam, "Disable evidence structuring and audit");
  run_cmd->add_option("--query", run.query, "Override the research question");
  run_cmd->add_option("--out", run.out, "Run directory (default runs/<run id>)");
  run_cmd->add_option("--resume", run.resume, "Resume the run in this directory");

  std::string trace;
  std::string replay_query;
  auto* replay_cmd = app.add_subcommand("replay", "Verify a trace and re-derive its states");
  replay_cmd->add_option("trace", trace, "trace.jsonl")->required()->check(CLI::ExistingFile);
  replay_cmd->add_option("--query", replay_query, "Also check the genesis hash");

  std::string serve_config = "fixtures/tiktok/config.json";
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string runs_dir = "runs";
  auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API");
  serve_cmd->add_option("--config", serve_config, "Base config for new runs")
      ->capture_default_str();
  serve_cmd->add_option("--host", host)->capture_default_str();
  serve_cmd->add_option("--port", port)->capture_default_str();
  serve_cmd->add_option("--runs-dir", runs_dir)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  try {
    if (*run_cmd) return cmd_run(run);
    if (*replay_cmd) return cmd_replay(trace, replay_query);
    if (*serve_cmd) return cmd_serve(serve_config, host, port, runs_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
