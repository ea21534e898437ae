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

#include "groundwork/agent/types.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "groundwork/core/error.hpp"
#include "groundwork/core/hash.hpp"

namespace groundwork {

namespace {

constexpr std::array<std::pair<StopReason, std::string_view>, 5> kReasons{{
    {StopReason::kNone, "none"},
    {StopReason::kAllGoalsSatisfied, "all-goals-satisfied"},
    {StopReason::kHorizonReached, "horizon-reached"},
    {StopReason::kBudgetExhausted, "budget-exhausted"},
    {StopReason::kOperatorAbort, "operator-abort"},
}};

}  // namespace

std::string_view to_string(StopReason r) {
  for (const auto& [e, name] : kReasons) {
    if (e == r) return name;
  }
  return "none";
}

StopReason stop_reason_from_string(std::string_view s) {
  for (const auto& [e, name] : kReasons) {
    if (name == s) return e;
  }
  throw Error(ErrorCode::kUnparseableOutput, "unknown stop reason: " + std::string(s));
}

std::string AgentState::snapshot_id() const {
  Json j = *this;
  return "st-" + short_hash(canonical_dump(j), 16);
}

std::pair<int, int> AgentState::context_window() const {
  return {std::max(0, step_index - retention), step_index};
}

bool Observation::empty() const {
  return summary.empty() && new_tasks.empty() && executed_tasks.empty() &&
         !outline && !memory_ref && new_evidence.empty() && results.empty() &&
         completed.empty() && notes.empty() && facts.empty();
}

std::string Workspace::serialize() const {
  std::string out = "# Query\n" + query + "\n# Active subgoals\n";
  for (const auto& g : active_subgoals) {
    out += "- [" + g.item_id + "] " + g.goal + "\n";
  }
  out += "# Memory\n";
  for (const auto& m : memory_slice) {
    out += "- [" + m.evidence_id + " @ " + m.node_id + "] " + m.summary + "\n";
  }
  out += "# Last action\n" + last_action_digest + "\n";
  out += "# Last observation\n" + last_observation_digest + "\n";
  return out;
}

void to_json(Json& j, const CompletedEntry& v) {
  j = Json{{"item", v.item}, {"at", v.at}};
}

void from_json(const Json& j, CompletedEntry& v) {
  read_field(j, "item", v.item);
  read_field(j, "at", v.at);
}

void to_json(Json& j, const AgentState& v) {
  j = Json{{"step_index", v.step_index},
           {"outline", v.outline},
           {"search_tasks", v.search_tasks},
           {"memory_ref", v.memory_ref},
           {"completed_list", v.completed_list},
           {"todo_list", v.todo_list},
           {"experience", v.experience},
           {"information", v.information},
           {"checklist_ref", v.checklist_ref},
           {"retention", v.retention}};
}

void from_json(const Json& j, AgentState& v) {
  read_field(j, "step_index", v.step_index);
  read_field(j, "outline", v.outline);
  read_field(j, "search_tasks", v.search_tasks);
  read_field(j, "memory_ref", v.memory_ref);
  read_field(j, "completed_list", v.completed_list);
  read_field(j, "todo_list", v.todo_list);
  read_field(j, "experience", v.experience);
  read_field(j, "information", v.information);
  read_field(j, "checklist_ref", v.checklist_ref);
  read_field(j, "retention", v.retention);
}

void to_json(Json& j, const ResultDigest& v) {
  j = Json{{"search_task_id", v.search_task_id},
           {"source", v.source},
           {"ok", v.ok},
           {"title", v.title},
           {"excerpt", v.excerpt}};
}

void from_json(const Json& j, ResultDigest& v) {
  read_field(j, "search_task_id", v.search_task_id);
  read_field(j, "source", v.source);
  read_field(j, "ok", v.ok);
  read_field(j, "title", v.title);
  read_field(j, "excerpt", v.excerpt);
}

void to_json(Json& j, const Observation& v) {
  j = Json{{"status", v.status},
           {"summary", v.summary},
           {"new_tasks", v.new_tasks},
           {"executed_tasks", v.executed_tasks},
           {"outline", v.outline},
           {"memory_ref", v.memory_ref},
           {"new_evidence", v.new_evidence},
           {"results", v.results},
           {"completed", v.completed},
           {"notes", v.notes},
           {"facts", v.facts}};
}

void from_json(const Json& j, Observation& v) {
  read_field(j, "status", v.status);
  read_field(j, "summary", v.summary);
  read_field(j, "new_tasks", v.new_tasks);
  read_field(j, "executed_tasks", v.executed_tasks);
  v.outline = optional_field<Outline>(j, "outline");
  v.memory_ref = optional_field<std::string>(j, "memory_ref");
  read_field(j, "new_evidence", v.new_evidence);
  read_field(j, "results", v.results);
  read_field(j, "completed", v.completed);
  read_field(j, "notes", v.notes);
  read_field(j, "facts", v.facts);
}

void to_json(Json& j, const Subgoal& v) {
  j = Json{{"item_id", v.item_id}, {"goal", v.goal}, {"node_ids", v.node_ids}};
}

void from_json(const Json& j, Subgoal& v) {
  read_field(j, "item_id", v.item_id);
  read_field(j, "goal", v.goal);
  read_field(j, "node_ids", v.node_ids);
}

void to_json(Json& j, const Workspace& v) {
  j = Json{{"query", v.query},
           {"active_subgoals", v.active_subgoals},
           {"memory_slice", v.memory_slice},
           {"last_action_digest", v.last_action_digest},
           {"last_observation_digest", v.last_observation_digest},
           {"char_budget", v.char_budget}};
}

}  // namespace groundwork
