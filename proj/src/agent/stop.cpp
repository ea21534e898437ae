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

#include "groundwork/agent/stop.hpp"

#include <algorithm>

namespace groundwork {

std::vector<std::string> planned_leaves(const Outline& outline) {
  std::vector<std::string> out;
  for (const auto& id : outline.leaves()) {
    if (outline.find(id)->kind == NodeKind::kLeaf) out.push_back(id);
  }
  return out;
}

Checklist track_progress(const Checklist& checklist, const Outline& outline, int min_evidence) {
  Checklist out = checklist;
  for (auto& item : out.items) {
    if (item.status == ItemStatus::kWaived || item.status == ItemStatus::kDraft ||
        item.status == ItemStatus::kNeedsClarification) {
      continue;
    }
    std::size_t nodes = 0;
    std::size_t full = 0;
    std::size_t evidence = 0;
    for (const auto& n : outline.nodes) {
      if (n.kind != NodeKind::kLeaf) continue;
      if (std::find(n.bound_items.begin(), n.bound_items.end(), item.id) == n.bound_items.end()) {
        continue;
      }
      ++nodes;
      evidence += n.bound_evidence.size();
      if (static_cast<int>(n.bound_evidence.size()) >= min_evidence) ++full;
    }
    if (nodes > 0 && full == nodes) {
      item.status = ItemStatus::kSatisfied;
    } else if (evidence > 0) {
      item.status = ItemStatus::kInProgress;
    } else {
      item.status = ItemStatus::kVerified;
    }
  }
  return out;
}

int searches_used(const AgentState& state) {
  return static_cast<int>(std::count_if(
      state.completed_list.begin(), state.completed_list.end(),
      [](const CompletedEntry& c) { return c.item.rfind("search: ", 0) == 0; }));
}

StopSignal should_stop(const Outline& outline, const Checklist* checklist, int step,
                       const RunConfig& config, int searches, bool abort_requested) {
  if (abort_requested) return {true, StopReason::kOperatorAbort};
  bool goals = true;
  if (checklist) {
    goals = std::all_of(checklist->items.begin(), checklist->items.end(), [](const auto& i) {
      return i.status == ItemStatus::kSatisfied || i.status == ItemStatus::kWaived;
    });
  }
  const auto leaves = planned_leaves(outline);
  goals = goals && !leaves.empty() &&
          std::all_of(leaves.begin(), leaves.end(), [&](const std::string& id) {
            return static_cast<int>(outline.find(id)->bound_evidence.size()) >=
                   config.min_evidence_per_leaf;
          });
  if (goals) return {true, StopReason::kAllGoalsSatisfied};
  if (step >= config.max_steps) return {true, StopReason::kHorizonReached};
  if (config.max_search_calls > 0 && searches >= config.max_search_calls) {
    return {true, StopReason::kBudgetExhausted};
  }
  return {};
}

}  // namespace groundwork
