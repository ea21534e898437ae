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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "groundwork/checklist/types.hpp"
#include "groundwork/core/json.hpp"
#include "groundwork/core/time.hpp"
#include "groundwork/evidence/types.hpp"
#include "groundwork/providers/types.hpp"

namespace groundwork {

struct CompletedEntry {
  std::string item;  // the todo text that was completed
  Timestamp at = 0;

  bool operator==(const CompletedEntry&) const = default;
};

/// Factorized agent state: outline, pending search tasks, memory snapshot and
/// the auxiliary progress lists.
struct AgentState {
  int step_index = 0;
  Outline outline;
  std::vector<SearchTask> search_tasks;
  std::string memory_ref;
  std::vector<CompletedEntry> completed_list;
  std::vector<std::string> todo_list;
  std::vector<std::string> experience;
  std::vector<std::string> information;
  std::string checklist_ref;
  int retention = 5;

  /// Content hash of the serialized state.
  std::string snapshot_id() const;
  /// Half-open step range [first, step_index) kept as history context.
  std::pair<int, int> context_window() const;

  bool operator==(const AgentState&) const = default;
};

struct ResultDigest {
  std::string search_task_id;
  std::string source;
  bool ok = true;
  std::string title;
  std::string excerpt;

  bool operator==(const ResultDigest&) const = default;
};

/// Environment feedback for one step, including the effects the state update
/// operator folds into the next state.
struct Observation {
  std::string status;  // "ok" | "partial" | "failed" | "noop"
  std::string summary;
  std::vector<SearchTask> new_tasks;
  std::vector<std::string> executed_tasks;
  std::optional<Outline> outline;
  std::optional<std::string> memory_ref;
  std::vector<std::string> new_evidence;
  std::vector<ResultDigest> results;
  std::vector<std::string> completed;
  std::vector<std::string> notes;  // appended to experience
  std::vector<std::string> facts;  // appended to information

  bool empty() const;

  bool operator==(const Observation&) const = default;
};

enum class StopReason {
  kNone,
  kAllGoalsSatisfied,
  kHorizonReached,
  kBudgetExhausted,
  kOperatorAbort,
};

std::string_view to_string(StopReason r);
StopReason stop_reason_from_string(std::string_view s);

struct StopSignal {
  bool stop = false;
  StopReason reason = StopReason::kNone;

  bool operator==(const StopSignal&) const = default;
};

struct Subgoal {
  std::string item_id;
  std::string goal;
  std::vector<std::string> node_ids;

  bool operator==(const Subgoal&) const = default;
};

/// Bounded per-step context rebuilt from the previous state.
struct Workspace {
  std::string query;
  std::vector<Subgoal> active_subgoals;
  std::vector<EvidenceSummary> memory_slice;
  std::string last_action_digest;
  std::string last_observation_digest;
  std::size_t char_budget = 0;

  /// Text handed to the policy; its size is what the budget bounds.
  std::string serialize() const;
  std::size_t size() const { return serialize().size(); }
};

/// One committed loop iteration.
struct StepRecord {
  int step_index = 0;
  std::string thought;
  std::string action_thought;
  ActionCode action_code;
  Observation observation;
  AgentState state;
  std::string state_snapshot_id;
  Timestamp wall_time = 0;
  std::string prev_hash;
};

struct History {
  std::string query;
  std::vector<StepRecord> records;
  std::string initial_state_id;
};

void to_json(Json& j, const CompletedEntry& v);
void from_json(const Json& j, CompletedEntry& v);
void to_json(Json& j, const AgentState& v);
void from_json(const Json& j, AgentState& v);
void to_json(Json& j, const ResultDigest& v);
void from_json(const Json& j, ResultDigest& v);
void to_json(Json& j, const Observation& v);
void from_json(const Json& j, Observation& v);
void to_json(Json& j, const Subgoal& v);
void from_json(const Json& j, Subgoal& v);
void to_json(Json& j, const Workspace& v);

}  // namespace groundwork
