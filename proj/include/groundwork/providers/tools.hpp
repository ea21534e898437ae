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

#include <string_view>
#include <vector>

#include "groundwork/providers/ports.hpp"

namespace groundwork {

/// Plan tool mode: refined outline plus new search tasks for the workspace.
/// Validates the policy output (non-empty query and intent, stable ids, no
/// dropped checklist bindings); an unparseable or invalid answer is retried
/// once before Error(kUnparseableOutput) propagates.
PlanResult plan_tool(std::string_view query, const Workspace& workspace,
                     const AgentState& state, PolicyPort& policy);

/// Search tool mode. Runs at most `fanout` tasks concurrently and returns
/// results grouped in task order, so the output does not depend on fanout.
/// Every task yields at least one result; provider errors other than
/// unreachability become error results.
std::vector<RawResult> search_tool(const std::vector<SearchTask>& tasks,
                                   EnvironmentPort& environment, int fanout,
                                   int step_index, Timestamp now);

}  // namespace groundwork
