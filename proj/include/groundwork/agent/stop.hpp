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

#include "groundwork/agent/config.hpp"
#include "groundwork/agent/types.hpp"
#include "groundwork/checklist/types.hpp"

namespace groundwork {

/// Leaves the stop predicate waits on: kind leaf only (evidence and holding
/// nodes are created by refinement, not planned).
std::vector<std::string> planned_leaves(const Outline& outline);

/// Evidence-coverage view of the checklist: verified items whose planned
/// nodes all hold >= min_evidence units become satisfied, items with some
/// evidence become in_progress. Waived items are left alone.
Checklist track_progress(const Checklist& checklist, const Outline& outline, int min_evidence);

/// Number of searches already executed, read from the completed list.
int searches_used(const AgentState& state);

/// σ_t. Checked in order: operator abort; all items satisfied or waived and
/// every planned leaf at min_evidence (requires at least one planned leaf);
/// step >= max_steps; search budget spent.
StopSignal should_stop(const Outline& outline, const Checklist* checklist, int step,
                       const RunConfig& config, int searches, bool abort_requested);

}  // namespace groundwork
