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

#include "groundwork/service/run_manager.hpp"

#include <condition_variable>
#include <filesystem>

#include "groundwork/agent/trace.hpp"
#include "groundwork/service/providers.hpp"

namespace groundwork {

namespace fs = std::filesystem;

std::string_view to_string(RunEvent e) {
  switch (e) {
    case RunEvent::kReviewOpened: return "review-opened";
    case RunEvent::kDecisionPosted: return "decision-posted";
    case RunEvent::kResearchStarted: return "research-started";
    case RunEvent::kStopFired: return "stop-fired";
    case RunEvent::kWritingStarted: return "writing-started";
    case RunEvent::kFinished: return "finished";
    case RunEvent::kFailed: return "failed";
    case RunEvent::kAbortRequested: return "abort-requested";
    case RunEvent::kAborted: return "aborted";
  }
  return "unknown";
}

bool is_terminal(Phase p) {
  return p == Phase::kDone || p == Phase::kFailed || p == Phase::kAborted;
}

Transition transition(Phase from, RunEvent event) {
  auto to = [](Phase p) { return Transition{true, p, ErrorCode::kWrongPhase}; };
  const Transition reject{false, from, ErrorCode::kWrongPhase};
  if (is_terminal(from)) return reject;
  switch (event) {
    case RunEvent::kFailed: return to(Phase::kFailed);
    case RunEvent::kAborted: return to(Phase::kAborted);
    // The flag is picked up by the engine; the phase moves when it reacts.
    case RunEvent::kAbortRequested: return to(from);
    case RunEvent::kReviewOpened:
      return from == Phase::kChecklisting ? to(Phase::kAwaitingReview) : reject;
    case RunEvent::kDecisionPosted:
      return from == Phase::kAwaitingReview ? to(Phase::kChecklisting) : reject;
    case RunEvent::kResearchStarted:
      return from == Phase::kChecklisting || from == Phase::kAwaitingReview
                 ? to(Phase::kResearching)
                 : reject;
    case RunEvent::kStopFired:
      return from == Phase::kResearching ? to(Phase::kDrafting) : reject;
    case RunEvent::kWritingStarted:
      return from == Phase::kDrafting ? to(Phase::kWriting) : reject;
    case RunEvent::kFinished:
      return from == Phase::kWriting ? to(Phase::kDone) : reject;
  }
  return reject;
}

void to_json(Json& j, const RunStatus& v) {
  j = Json{{"schema", kRunStatusSchema},
           {"run_id", v.run_id},
           {"phase", to_string(v.phase)},
           {"step_index", v.step_index},
           {"stop_reason", v.stop_reason ? Json(to_string(*v.stop_reason)) : Json(nullptr)}};
  if (!v.error.empty()) j["error"] = v.error;
}

struct RunManager::Run {
  std::string id;
  std::string dir;
  RunConfig config;
  ReviewChannel channel;
  std::atomic<bool> abort{false};
  mutable std::mutex mu;
  mutable std::condition_variable cv;
  RunStatus status;
  std::optional<Json> checklist;
  std::thread thread;
};

namespace {

std::optional<RunEvent> event_for(Phase p) {
  switch (p) {
    case Phase::kChecklisting: return RunEvent::kDecisionPosted;
    case Phase::kAwaitingReview: return RunEvent::kReviewOpened;
    case Phase::kResearching: return RunEvent::kResearchStarted;
    case Phase::kDrafting: return RunEvent::kStopFired;
    case Phase::kWriting: return RunEvent::kWritingStarted;
    case Phase::kDone: return RunEvent::kFinished;
    case Phase::kFailed: return RunEvent::kFailed;
    case Phase::kAborted: return RunEvent::kAborted;
  }
  return std::nullopt;
}

}  // namespace

RunManager::RunManager(RunConfig base, std::string root)
    : base_(std::move(base)), root_(std::move(root)) {
  fs::create_directories(root_);
}

RunManager::~RunManager() {
  std::vector<std::shared_ptr<Run>> runs;
  {
    std::lock_guard lock(mu_);
    for (auto& [id, run] : runs_) runs.push_back(run);
  }
  for (auto& run : runs) {
    run->abort = true;
    run->channel.cancel();
  }
  for (auto& run : runs) {
    if (run->thread.joinable()) run->thread.join();
  }
}

void RunManager::apply(Run& run, RunEvent event) {
  // Caller holds run.mu.
  const Transition t = transition(run.status.phase, event);
  if (!t.accepted) {
    throw PhaseError(run.status.phase, std::string(to_string(event)) + " is not valid in phase " +
                                           std::string(to_string(run.status.phase)));
  }
  run.status.phase = t.next;
  run.cv.notify_all();
}

std::string RunManager::create(const Json& request) {
  if (!request.is_object() || !request.contains("query") || !request["query"].is_string()) {
    throw Error(ErrorCode::kConfigInvalid, "request needs a string \"query\"");
  }
  Json merged = base_;
  if (request.contains("config")) {
    if (!request["config"].is_object()) {
      throw Error(ErrorCode::kConfigInvalid, "\"config\" must be an object");
    }
    merged.merge_patch(request["config"]);
  }
  merged["query"] = request["query"];
  RunConfig config;
  try {
    config = merged.get<RunConfig>();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kConfigInvalid, e.what());
  }
  config.validate();

  auto run = std::make_shared<Run>();
  run->config = config;
  {
    std::lock_guard lock(mu_);
    const std::string base_id = make_run_id(config);
    std::string id = base_id;
    for (int n = 2; runs_.count(id) || fs::exists(root_ + "/" + id); ++n) {
      id = base_id + "-" + std::to_string(n);
    }
    run->id = id;
    run->dir = root_ + "/" + id;
    run->status.run_id = id;
    runs_[id] = run;
  }

  Run* r = run.get();
  r->channel.set_on_open([r](const ReviewDocument&) {
    std::lock_guard lock(r->mu);
    if (r->status.phase == Phase::kChecklisting) apply(*r, RunEvent::kReviewOpened);
  });
  r->thread = std::thread([r] {
    RunHooks hooks;
    hooks.abort = &r->abort;
    hooks.on_phase = [r](Phase p) {
      std::lock_guard lock(r->mu);
      if (p == r->status.phase) return;
      if (auto e = event_for(p); e && transition(r->status.phase, *e).accepted) apply(*r, *e);
    };
    hooks.on_step = [r](const StepRecord& record) {
      std::lock_guard lock(r->mu);
      r->status.step_index = record.step_index;
      r->cv.notify_all();
    };
    hooks.on_checklist = [r](const Checklist& c, const Outline& o) {
      std::lock_guard lock(r->mu);
      r->checklist = Json{{"schema", kChecklistSchema}, {"checklist", c}, {"outline", o}};
    };
    try {
      ProviderBundle bundle(r->config, &r->channel);
      RunResult result = run_episode(r->config, bundle.providers(), r->dir, hooks);
      std::lock_guard lock(r->mu);
      r->status.stop_reason = result.stop.reason;
      r->status.step_index = result.steps > 0 ? result.steps - 1 : 0;
      const Phase final =
          result.stop.reason == StopReason::kOperatorAbort ? Phase::kAborted : Phase::kDone;
      if (r->status.phase != final) apply(*r, event_for(final).value());
    } catch (const std::exception& e) {
      std::lock_guard lock(r->mu);
      const auto* err = dynamic_cast<const Error*>(&e);
      const bool aborted = err && err->code() == ErrorCode::kAborted;
      r->status.error = e.what();
      if (!is_terminal(r->status.phase)) {
        apply(*r, aborted ? RunEvent::kAborted : RunEvent::kFailed);
      }
    }
    r->cv.notify_all();
  });
  return run->id;
}

std::shared_ptr<RunManager::Run> RunManager::get(const std::string& run_id) const {
  std::lock_guard lock(mu_);
  auto it = runs_.find(run_id);
  if (it == runs_.end()) throw Error(ErrorCode::kUnknownRun, "unknown run " + run_id);
  return it->second;
}

RunStatus RunManager::status(const std::string& run_id) const {
  auto run = get(run_id);
  std::lock_guard lock(run->mu);
  return run->status;
}

std::vector<RunStatus> RunManager::list() const {
  std::vector<std::shared_ptr<Run>> runs;
  {
    std::lock_guard lock(mu_);
    for (const auto& [id, run] : runs_) runs.push_back(run);
  }
  std::vector<RunStatus> out;
  for (const auto& run : runs) {
    std::lock_guard lock(run->mu);
    out.push_back(run->status);
  }
  return out;
}

ReviewDocument RunManager::pending_review(const std::string& run_id) const {
  auto run = get(run_id);
  std::lock_guard lock(run->mu);
  auto doc = run->channel.pending();
  if (run->status.phase != Phase::kAwaitingReview || !doc) {
    throw PhaseError(run->status.phase, "no checklist is awaiting review");
  }
  return *doc;
}

Json RunManager::checklist(const std::string& run_id) const {
  auto run = get(run_id);
  std::lock_guard lock(run->mu);
  if (!run->checklist) {
    throw PhaseError(run->status.phase, "the checklist has not been compiled yet");
  }
  return *run->checklist;
}

PostResult RunManager::post_decision(const std::string& run_id, const DecisionDocument& decision) {
  auto run = get(run_id);
  std::lock_guard lock(run->mu);
  const auto decided = run->channel.last_decided_version();
  if (decided && *decided == decision.checklist_version) return PostResult::kDuplicate;
  if (run->status.phase != Phase::kAwaitingReview) {
    throw PhaseError(run->status.phase, "decisions are only accepted in awaiting-review");
  }
  const PostResult result = run->channel.post(decision);
  if (result == PostResult::kAccepted) apply(*run, RunEvent::kDecisionPosted);
  return result;
}

Json RunManager::steps(const std::string& run_id, int from) const {
  auto run = get(run_id);
  if (from < 0) throw Error(ErrorCode::kPrecondition, "from must be non-negative");
  Json steps = Json::array();
  const std::string path = RunPaths{run->dir}.trace();
  int total = 0;
  if (fs::exists(path)) {
    const ParsedTrace trace = read_trace(path);
    total = static_cast<int>(trace.raw.size());
    for (int k = from; k < total; ++k) {
      Json step = {{"step", k}};
      for (const auto& line : trace.raw[static_cast<std::size_t>(k)]) {
        const Json parsed = Json::parse(line);
        step[parsed.at("kind").get<std::string>()] = parsed.at("payload");
        step["timestamp"] = parsed.at("timestamp");
        step["prev_hash"] = parsed.at("prev_hash");
      }
      steps.push_back(std::move(step));
    }
  }
  return Json{{"schema", kStepsSchema},
              {"run_id", run_id},
              {"from", from},
              {"next", std::max(from, total)},
              {"steps", std::move(steps)}};
}

std::string RunManager::report(const std::string& run_id, bool markdown) const {
  auto run = get(run_id);
  {
    std::lock_guard lock(run->mu);
    if (run->status.phase != Phase::kDone && run->status.phase != Phase::kAborted) {
      throw PhaseError(run->status.phase, "the report is not written yet");
    }
  }
  RunPaths paths{run->dir};
  const std::string path = markdown ? paths.report_markdown() : paths.report_structured();
  if (!fs::exists(path)) throw Error(ErrorCode::kStorageIo, "no report in " + run->dir);
  return read_file(path);
}

RunStatus RunManager::abort(const std::string& run_id) {
  auto run = get(run_id);
  std::lock_guard lock(run->mu);
  apply(*run, RunEvent::kAbortRequested);
  run->abort = true;
  run->channel.cancel();
  return run->status;
}

bool RunManager::wait(const std::string& run_id, std::chrono::milliseconds timeout) const {
  auto run = get(run_id);
  std::unique_lock lock(run->mu);
  const bool done =
      run->cv.wait_for(lock, timeout, [&] { return is_terminal(run->status.phase); });
  if (done) {
    lock.unlock();
    if (run->thread.joinable() && run->thread.get_id() != std::this_thread::get_id()) {
      std::lock_guard guard(mu_);
      if (run->thread.joinable()) run->thread.join();
    }
  }
  return done;
}

bool RunManager::wait_for_phase(const std::string& run_id, Phase phase,
                                std::chrono::milliseconds timeout) const {
  auto run = get(run_id);
  std::unique_lock lock(run->mu);
  run->cv.wait_for(lock, timeout,
                   [&] { return run->status.phase == phase || is_terminal(run->status.phase); });
  return run->status.phase == phase;
}

std::string RunManager::run_dir(const std::string& run_id) const { return get(run_id)->dir; }

}  // namespace groundwork
