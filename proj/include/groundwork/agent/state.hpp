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

#include <mutex>
#include <string>
#include <vector>

#include "groundwork/agent/types.hpp"

namespace groundwork {

/// s_0: the compiled outline, seeded search tasks (each also on the todo
/// list), the initial memory snapshot and checklist version.
AgentState initial_state(const Outline& outline, const std::vector<SearchTask>& seed_tasks,
                         std::string memory_ref, std::string checklist_ref, int retention);

/// Pure state update. Effects applied, in order:
///  - observation.outline replaces the outline; memory_ref advances
///  - new_tasks join search_tasks and the todo list as "search: <query>"
///  - executed_tasks leave search_tasks; their todos move to completed_list
///  - todos named in observation.completed or action_code.parameters.complete
///    move to completed_list (unknown names are ignored)
///  - notes extend experience, facts extend information
///  - action_code.parameters.checklist_ref replaces checklist_ref
/// Completion timestamps are max(now, last completion) so the list stays
/// ordered.
AgentState update_state(const AgentState& prev, const std::string& thought,
                        const std::string& action_thought, const ActionCode& action_code,
                        const Observation& observation, int retention, Timestamp now);

/// Indices of the history records inside a state's retention window.
std::vector<int> retained_steps(const AgentState& state);

/// Single-writer guard around the latest committed state.
class StateLedger {
 public:
  explicit StateLedger(AgentState initial) : latest_(std::move(initial)) {}

  /// Commits `next` as the successor of `prev`. Throws Error(kStaleState)
  /// when `prev` is not the latest committed state.
  void commit(const AgentState& prev, const AgentState& next);
  AgentState latest() const;

 private:
  mutable std::mutex mu_;
  AgentState latest_;
};

}  // namespace groundwork
