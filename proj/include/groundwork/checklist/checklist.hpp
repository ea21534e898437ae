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

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "groundwork/checklist/types.hpp"
#include "groundwork/providers/ports.hpp"

namespace groundwork {

/// Rule table for underspecified items, checked in this order: no acceptance
/// criteria -> refine-acceptance; no inclusions or exclusions -> refine-scope;
/// goal shorter than three words -> refine-definition.
std::optional<IntentKind> missing_field(const ChecklistItem& item);

/// C0 and O0 from the query alone. Items that trip the rule table are marked
/// needs-clarification, the rest stay draft. An unparseable policy answer is
/// retried once.
std::pair<Checklist, Outline> generate_checklist(std::string_view query,
                                                 PolicyPort& policy);

/// One intent per needs-clarification item; verified-ready items get none.
std::vector<PlanIntent> derive_plan_intents(std::string_view query,
                                            const Checklist& checklist,
                                            const AgentState& state);

/// Item ids in dependency order: a topological sort that picks the
/// lowest-priority-number ready item first. Throws Error(kInvalidDecision)
/// on a cycle or a reference to an unknown item.
std::vector<std::string> dependency_order(const std::vector<ChecklistItem>& items);

/// Applies one round of verdicts. The result has version + 1, lineage links
/// for splits, merges and goal edits, and priorities renumbered 1..n in
/// dependency order.
Checklist apply_decision(const Checklist& checklist, const DecisionDocument& decision,
                         const std::vector<PlanIntent>& intents);

enum class TimeoutFallback { kLlmFallback, kAbort };

struct RefineOptions {
  int max_rounds = 3;
  std::string run_id;
  std::string query;
  TimeoutFallback on_timeout = TimeoutFallback::kLlmFallback;
  CriticPort* fallback = nullptr;
  /// Called with each review document and the decision it received.
  std::function<void(const ReviewDocument&, const DecisionDocument&)> on_round;
};

/// C1 = critic(C0, Z0), iterated until every item is verified or waived.
/// Throws Error(kMaxRoundsExceeded) when rounds run out and
/// Error(kCriticTimeout) when the critic times out with no fallback.
Checklist critic_refine(const Checklist& checklist, const std::vector<PlanIntent>& intents,
                        CriticPort& critic, const RefineOptions& options);

/// O1 = plan(C1). Verified items become leaves; items linked by dependencies
/// are grouped under a section node, and groups are ordered by their best
/// priority. When `max_depth` cannot hold a section, the group is flattened
/// and a depth-overflow warning is appended to `warnings`.
Outline compile_outline(const Checklist& checklist, int max_depth,
                        std::string_view root_title = "Report",
                        std::vector<std::string>* warnings = nullptr);

/// Copies node bindings back onto the items' bound_nodes.
void bind_items(Checklist& checklist, const Outline& outline);

}  // namespace groundwork
