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

#include "groundwork/agent/state.hpp"

#include <algorithm>

#include "groundwork/core/error.hpp"

namespace groundwork {

namespace {

void push_unique(std::vector<std::string>& list, const std::string& value) {
  if (std::find(list.begin(), list.end(), value) == list.end()) list.push_back(value);
}

void complete_todo(AgentState& s, const std::string& todo, Timestamp& at) {
  auto it = std::find(s.todo_list.begin(), s.todo_list.end(), todo);
  if (it == s.todo_list.end()) return;
  s.todo_list.erase(it);
  if (!s.completed_list.empty()) at = std::max(at, s.completed_list.back().at);
  s.completed_list.push_back({todo, at});
}

}  // namespace

AgentState initial_state(const Outline& outline, const std::vector<SearchTask>& seed_tasks,
                         std::string memory_ref, std::string checklist_ref, int retention) {
  AgentState s;
  s.step_index = 0;
  s.outline = outline;
  s.memory_ref = std::move(memory_ref);
  s.checklist_ref = std::move(checklist_ref);
  s.retention = retention;
  for (const auto& t : seed_tasks) {
    const bool known = std::any_of(s.search_tasks.begin(), s.search_tasks.end(),
                                   [&](const SearchTask& x) { return x.id == t.id; });
    if (known) continue;
    s.search_tasks.push_back(t);
    push_unique(s.todo_list, search_todo_text(t.query_text));
  }
  return s;
}

AgentState update_state(const AgentState& prev, const std::string& /*thought*/,
                        const std::string& /*action_thought*/, const ActionCode& action_code,
                        const Observation& observation, int retention, Timestamp now) {
  AgentState s = prev;
  s.step_index = prev.step_index + 1;
  s.retention = retention;
  if (observation.outline) s.outline = *observation.outline;
  if (observation.memory_ref) s.memory_ref = *observation.memory_ref;

  for (const auto& t : observation.new_tasks) {
    const bool known = std::any_of(s.search_tasks.begin(), s.search_tasks.end(),
                                   [&](const SearchTask& x) { return x.id == t.id; });
    if (known) continue;
    s.search_tasks.push_back(t);
    push_unique(s.todo_list, search_todo_text(t.query_text));
  }

  Timestamp at = now;
  for (const auto& id : observation.executed_tasks) {
    auto it = std::find_if(s.search_tasks.begin(), s.search_tasks.end(),
                           [&](const SearchTask& x) { return x.id == id; });
    if (it == s.search_tasks.end()) continue;
    const std::string todo = search_todo_text(it->query_text);
    s.search_tasks.erase(it);
    // Another pending task may share the query text; keep its todo open.
    const bool still_pending =
        std::any_of(s.search_tasks.begin(), s.search_tasks.end(),
                    [&](const SearchTask& x) { return search_todo_text(x.query_text) == todo; });
    if (!still_pending) complete_todo(s, todo, at);
  }
  for (const auto& todo : observation.completed) complete_todo(s, todo, at);
  if (auto it = action_code.parameters.find("complete");
      it != action_code.parameters.end() && it->is_array()) {
    for (const auto& todo : *it) {
      if (todo.is_string()) complete_todo(s, todo.get<std::string>(), at);
    }
  }

  s.experience.insert(s.experience.end(), observation.notes.begin(), observation.notes.end());
  s.information.insert(s.information.end(), observation.facts.begin(), observation.facts.end());
  if (auto it = action_code.parameters.find("checklist_ref");
      it != action_code.parameters.end() && it->is_string()) {
    s.checklist_ref = it->get<std::string>();
  }
  return s;
}

std::vector<int> retained_steps(const AgentState& state) {
  const auto [first, last] = state.context_window();
  std::vector<int> out;
  for (int k = first; k < last; ++k) out.push_back(k);
  return out;
}

void StateLedger::commit(const AgentState& prev, const AgentState& next) {
  std::lock_guard lock(mu_);
  if (prev.step_index != latest_.step_index || prev.snapshot_id() != latest_.snapshot_id()) {
    throw Error(ErrorCode::kStaleState,
                "state at step " + std::to_string(prev.step_index) +
                    " is not the latest committed state (step " +
                    std::to_string(latest_.step_index) + ")");
  }
  if (next.step_index != prev.step_index + 1) {
    throw Error(ErrorCode::kStaleState, "successor state must advance step_index by one");
  }
  latest_ = next;
}

AgentState StateLedger::latest() const {
  std::lock_guard lock(mu_);
  return latest_;
}

}  // namespace groundwork
