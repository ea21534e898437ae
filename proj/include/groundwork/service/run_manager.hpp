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

#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "groundwork/agent/config.hpp"
#include "groundwork/agent/engine.hpp"
#include "groundwork/checklist/critics.hpp"
#include "groundwork/core/error.hpp"
#include "groundwork/core/json.hpp"

namespace groundwork {

enum class RunEvent {
  kReviewOpened,
  kDecisionPosted,
  kResearchStarted,
  kStopFired,
  kWritingStarted,
  kFinished,
  kFailed,
  kAbortRequested,
  kAborted,
};

inline constexpr RunEvent kAllRunEvents[] = {
    RunEvent::kReviewOpened,  RunEvent::kDecisionPosted, RunEvent::kResearchStarted,
    RunEvent::kStopFired,     RunEvent::kWritingStarted, RunEvent::kFinished,
    RunEvent::kFailed,        RunEvent::kAbortRequested, RunEvent::kAborted,
};

inline constexpr Phase kAllPhases[] = {
    Phase::kChecklisting, Phase::kAwaitingReview, Phase::kResearching, Phase::kDrafting,
    Phase::kWriting,      Phase::kDone,           Phase::kFailed,      Phase::kAborted,
};

std::string_view to_string(RunEvent e);

struct Transition {
  bool accepted = false;
  Phase next = Phase::kChecklisting;  // unchanged phase when rejected
  ErrorCode rejection = ErrorCode::kWrongPhase;
};

/// The run lifecycle. Defined for every (phase, event) pair.
Transition transition(Phase from, RunEvent event);
bool is_terminal(Phase p);

struct RunStatus {
  std::string run_id;
  Phase phase = Phase::kChecklisting;
  int step_index = 0;
  std::optional<StopReason> stop_reason;
  std::string error;
};

inline constexpr std::string_view kRunStatusSchema = "run-status/1";
inline constexpr std::string_view kStepsSchema = "run-steps/1";
inline constexpr std::string_view kChecklistSchema = "checklist/1";

void to_json(Json& j, const RunStatus& v);

/// Raised by RunManager calls that are not valid in the current phase; the
/// phase travels with the error so callers can report it.
class PhaseError : public Error {
 public:
  explicit PhaseError(Phase phase, const std::string& what)
      : Error(ErrorCode::kWrongPhase, what), phase_(phase) {}
  Phase phase() const noexcept { return phase_; }

 private:
  Phase phase_;
};

/// Runs episodes on background threads, one directory per run under `root`.
/// All methods are thread-safe.
class RunManager {
 public:
  RunManager(RunConfig base, std::string root);
  ~RunManager();
  RunManager(const RunManager&) = delete;
  RunManager& operator=(const RunManager&) = delete;

  /// `request` is {"query": string, "config": {overrides}}. Returns the run id.
  std::string create(const Json& request);

  RunStatus status(const std::string& run_id) const;
  std::vector<RunStatus> list() const;

  /// The review document waiting for a decision; PhaseError otherwise.
  ReviewDocument pending_review(const std::string& run_id) const;
  /// Latest checklist and outline (once checklisting has produced one).
  Json checklist(const std::string& run_id) const;

  /// Duplicates of an already accepted version are acknowledged in any
  /// phase; anything else outside awaiting-review raises PhaseError.
  PostResult post_decision(const std::string& run_id, const DecisionDocument& decision);

  /// Committed step records from `from` onward, read from the trace file.
  Json steps(const std::string& run_id, int from) const;

  /// Structured report or markdown text. PhaseError unless done.
  std::string report(const std::string& run_id, bool markdown) const;

  RunStatus abort(const std::string& run_id);

  /// Blocks until the run reaches a terminal phase or `timeout` elapses.
  bool wait(const std::string& run_id, std::chrono::milliseconds timeout) const;
  /// Blocks until the run's phase equals `phase` (or the run is terminal).
  bool wait_for_phase(const std::string& run_id, Phase phase,
                      std::chrono::milliseconds timeout) const;

  std::string run_dir(const std::string& run_id) const;

 private:
  struct Run;
  std::shared_ptr<Run> get(const std::string& run_id) const;
  static void apply(Run& run, RunEvent event);

  RunConfig base_;
  std::string root_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Run>> runs_;
};

}  // namespace groundwork
