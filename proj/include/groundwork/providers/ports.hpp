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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "groundwork/agent/types.hpp"
#include "groundwork/checklist/types.hpp"
#include "groundwork/evidence/types.hpp"
#include "groundwork/providers/types.hpp"
#include "groundwork/report/types.hpp"

namespace groundwork {

/// Thought, action thought and action code for one step.
struct Decision {
  std::string thought;
  std::string action_thought;
  ActionCode action;
};

struct PlanResult {
  std::vector<SearchTask> tasks;
  std::optional<Outline> outline;  // set when planning restructures the outline
  std::string rationale;
};

/// Drafted content for one outline node before ids are assigned.
struct SectionDraft {
  std::vector<Passage> passages;
  std::vector<VizSpec> visuals;
};

/// The policy: every model-backed decision the engine makes goes through here.
/// Implementations must be safe to call from several threads at once.
class PolicyPort {
 public:
  virtual ~PolicyPort() = default;

  /// Initial checklist items for a query, built without any evidence.
  virtual std::vector<ChecklistItem> decompose(std::string_view query) = 0;
  virtual Decision decide(const Workspace& workspace, const AgentState& state) = 0;
  virtual PlanResult plan(std::string_view query, const Workspace& workspace,
                          const AgentState& state) = 0;
  virtual std::string summarize(const NormalizedDoc& doc) = 0;
  virtual SectionDraft draft_section(const OutlineNode& node,
                                     const std::vector<ChecklistItem>& items,
                                     const std::vector<EvidenceUnit>& ranked) = 0;
  /// Rewrites an unsupported claim as explicitly uncertain text.
  virtual std::string hedge(std::string_view claim_text) = 0;
  /// Model-side critic used when no human reviews the checklist.
  virtual DecisionDocument critique(const ReviewDocument& review) = 0;
};

/// Search, scrape and file tools. Per-task failures come back as error
/// results; only a provider that cannot be reached at all throws
/// Error(kProviderUnreachable).
class EnvironmentPort {
 public:
  virtual ~EnvironmentPort() = default;
  virtual std::vector<RawResult> search(const SearchTask& task, int step_index,
                                        Timestamp now) = 0;
};

/// Human or model critic for checklist refinement.
class CriticPort {
 public:
  virtual ~CriticPort() = default;
  virtual DecisionDocument review(const ReviewDocument& review) = 0;
  virtual std::string name() const = 0;
};

}  // namespace groundwork
