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
#include <string>
#include <vector>

#include "groundwork/agent/types.hpp"
#include "groundwork/checklist/types.hpp"
#include "groundwork/evidence/audit.hpp"
#include "groundwork/evidence/store.hpp"

namespace groundwork {

struct WorkspaceOptions {
  std::size_t char_budget = 32000;
  std::size_t max_active = 8;
  std::size_t memory_top_k = 3;  // per active node
  std::size_t digest_chars = 2000;
  std::size_t summary_chars = 480;
  RankOptions rank;
};

/// Open subgoals in priority order. With a checklist these are the items not
/// yet satisfied or waived; without one, the planned leaves that still lack
/// `min_evidence` units.
std::vector<Subgoal> open_subgoals(const AgentState& state, const Checklist* checklist,
                                   int min_evidence);

std::string action_digest(const ActionCode& action);
std::string observation_digest(const Observation& observation);

/// W_t = G(q, s_{t-1}, a_{t-1}, o_{t-1}). Content is added greedily in the
/// order subgoals, memory, last action, last observation until the budget is
/// reached; digests are cut tail-first. Throws Error(kBudgetTooSmall) when
/// even the query and section headings do not fit.
Workspace reconstruct_workspace(const std::string& query, const AgentState& prev_state,
                                const ActionCode* prev_action,
                                const Observation* prev_observation,
                                const Checklist* checklist, const EvidenceStore& store,
                                int min_evidence, const WorkspaceOptions& options);

}  // namespace groundwork
