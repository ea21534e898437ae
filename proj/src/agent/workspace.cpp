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

#include "groundwork/agent/workspace.hpp"

#include <algorithm>
#include <set>

#include "groundwork/core/error.hpp"
#include "groundwork/core/text.hpp"

namespace groundwork {

namespace {

std::vector<std::string> planned_nodes_for(const Outline& outline, const std::string& item_id) {
  std::vector<std::string> out;
  for (const auto& id : outline.dfs_order()) {
    const auto* n = outline.find(id);
    if (std::find(n->bound_items.begin(), n->bound_items.end(), item_id) != n->bound_items.end()) {
      out.push_back(id);
    }
  }
  return out;
}

}  // namespace

std::vector<Subgoal> open_subgoals(const AgentState& state, const Checklist* checklist,
                                   int min_evidence) {
  std::vector<Subgoal> out;
  if (checklist) {
    std::vector<const ChecklistItem*> items;
    for (const auto& item : checklist->items) {
      if (item.status == ItemStatus::kSatisfied || item.status == ItemStatus::kWaived) continue;
      items.push_back(&item);
    }
    std::stable_sort(items.begin(), items.end(), [](const auto* a, const auto* b) {
      return a->priority < b->priority;
    });
    for (const auto* item : items) {
      out.push_back({item->id, item->goal, planned_nodes_for(state.outline, item->id)});
    }
    return out;
  }
  for (const auto& id : state.outline.leaves()) {
    const auto* n = state.outline.find(id);
    if (n->kind != NodeKind::kLeaf) continue;
    if (static_cast<int>(n->bound_evidence.size()) >= min_evidence) continue;
    out.push_back({n->id, n->title, {n->id}});
  }
  return out;
}

std::string action_digest(const ActionCode& action) {
  std::string out = std::string(to_string(action.tool));
  if (!action.task_descriptor.empty()) out += ": " + action.task_descriptor;
  if (!action.parameters.is_null() && !action.parameters.empty()) {
    out += "\nparameters: " + canonical_dump(action.parameters);
  }
  return out;
}

std::string observation_digest(const Observation& o) {
  std::string out = o.status;
  if (!o.summary.empty()) out += ": " + o.summary;
  for (const auto& r : o.results) {
    out += "\n[" + std::string(r.ok ? "ok" : "error") + "] " +
           (r.title.empty() ? r.source : r.title);
    if (!r.ok && !r.excerpt.empty()) out += " (" + r.excerpt + ")";
  }
  return out;
}

Workspace reconstruct_workspace(const std::string& query, const AgentState& prev_state,
                                const ActionCode* prev_action,
                                const Observation* prev_observation,
                                const Checklist* checklist, const EvidenceStore& store,
                                int min_evidence, const WorkspaceOptions& options) {
  Workspace ws;
  ws.query = query;
  ws.char_budget = options.char_budget;
  const std::size_t header = ws.size();
  if (header > options.char_budget) {
    throw Error(ErrorCode::kBudgetTooSmall,
                "workspace budget " + std::to_string(options.char_budget) +
                    " is below the header size " + std::to_string(header));
  }
  auto fits = [&](std::size_t extra) { return ws.size() + extra <= options.char_budget; };

  auto subgoals = open_subgoals(prev_state, checklist, min_evidence);
  if (subgoals.size() > options.max_active) subgoals.resize(options.max_active);
  for (auto& g : subgoals) {
    const std::size_t line = 6 + g.item_id.size() + g.goal.size();
    if (!fits(line)) break;
    ws.active_subgoals.push_back(std::move(g));
  }

  // Memory slice: top-k summaries per active node, each unit at most once.
  std::set<std::string> used;
  for (const auto& g : ws.active_subgoals) {
    for (const auto& node_id : g.node_ids) {
      std::vector<EvidenceUnit> units;
      std::set<std::string> ids;
      for (const auto& e : store.bound_to(node_id)) ids.insert(e);
      for (const auto& d : prev_state.outline.descendants(node_id)) {
        for (const auto& e : store.bound_to(d)) ids.insert(e);
      }
      for (const auto& id : ids) {
        if (const auto* u = store.find(id)) units.push_back(*u);
      }
      auto ranked = rank_critic(units, g.goal, options.rank);
      std::size_t taken = 0;
      for (const auto& r : ranked) {
        if (taken >= options.memory_top_k) break;
        if (!used.insert(r.unit.id).second) continue;
        EvidenceSummary s{r.unit.id, node_id, r.unit.source,
                          text::truncate_tail(r.unit.summary, options.summary_chars)};
        const std::size_t line = 10 + s.evidence_id.size() + s.node_id.size() + s.summary.size();
        if (!fits(line)) break;
        ws.memory_slice.push_back(std::move(s));
        ++taken;
      }
    }
  }

  auto room = [&] {
    const std::size_t size = ws.size();
    return std::min(options.digest_chars,
                    options.char_budget > size ? options.char_budget - size : 0);
  };
  if (prev_action) ws.last_action_digest = text::truncate_tail(action_digest(*prev_action), room());
  if (prev_observation) {
    ws.last_observation_digest = text::truncate_tail(observation_digest(*prev_observation), room());
  }
  return ws;
}

}  // namespace groundwork
