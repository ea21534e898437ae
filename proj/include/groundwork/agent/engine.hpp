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
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "groundwork/agent/config.hpp"
#include "groundwork/agent/types.hpp"
#include "groundwork/checklist/types.hpp"
#include "groundwork/providers/ports.hpp"
#include "groundwork/report/types.hpp"

namespace groundwork {

enum class Phase {
  kChecklisting,
  kAwaitingReview,
  kResearching,
  kDrafting,
  kWriting,
  kDone,
  kFailed,
  kAborted,
};

std::string_view to_string(Phase p);
Phase phase_from_string(std::string_view s);

/// Files of one run directory.
struct RunPaths {
  std::string dir;

  std::string config() const { return dir + "/config.json"; }
  std::string trace() const { return dir + "/trace.jsonl"; }
  std::string store() const { return dir + "/store"; }
  std::string checklist_dir() const { return dir + "/checklist"; }
  std::string checklist_version(int v) const {
    return checklist_dir() + "/v" + std::to_string(v) + ".json";
  }
  std::string checklist_final() const { return checklist_dir() + "/final.json"; }
  std::string report_markdown() const { return dir + "/report.md"; }
  std::string report_structured() const { return dir + "/report.json"; }
  std::string audit() const { return dir + "/audit.json"; }
  std::string status() const { return dir + "/status.json"; }
};

/// Observation points for tests and the service. Every callback is optional.
struct RunHooks {
  std::function<void(Phase)> on_phase;
  /// Fired after each durable write: "config", "checklist", "store",
  /// "step", "report".
  std::function<void(std::string_view event, int step)> on_event;
  std::function<void(const StepRecord&)> on_step;
  std::function<void(const Workspace&, int step)> on_workspace;
  std::function<void(const Checklist&, const Outline&)> on_checklist;
  const std::atomic<bool>* abort = nullptr;
};

struct RunResult {
  std::string run_id;
  std::string run_dir;
  Report report;
  StopSignal stop;
  int steps = 0;  // committed step records, including the write step
  std::string final_state_id;
  std::string final_snapshot;
  std::optional<Checklist> checklist;
};

struct Providers {
  PolicyPort& policy;
  EnvironmentPort& environment;
  CriticPort& critic;
  /// Used when a human critic times out and the config allows fallback.
  CriticPort* fallback_critic = nullptr;
};

/// Runs (or, with `resume`, continues) one research episode in `run_dir`.
/// Resuming verifies the trace, drops any incomplete step and uncommitted
/// evidence, and carries on from the last committed state; with the logical
/// clock the result is byte-identical to an uninterrupted run.
RunResult run_episode(const RunConfig& config, Providers providers, const std::string& run_dir,
                      const RunHooks& hooks = {}, bool resume = false);

}  // namespace groundwork
