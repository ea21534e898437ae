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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "groundwork/core/json.hpp"

namespace groundwork {

enum class ItemStatus {
  kDraft,
  kNeedsClarification,
  kVerified,
  kInProgress,
  kSatisfied,
  kWaived,
};

std::string_view to_string(ItemStatus s);
ItemStatus item_status_from_string(std::string_view s);

/// A traceable sub-goal of the query with its acceptance criteria.
struct ChecklistItem {
  std::string id;
  std::string goal;
  std::vector<std::string> inclusions;
  std::vector<std::string> exclusions;
  std::vector<std::string> acceptance_criteria;
  int priority = 0;  // 1 = highest; unique within a checklist
  std::vector<std::string> depends_on;
  ItemStatus status = ItemStatus::kDraft;
  std::vector<std::string> bound_nodes;

  bool operator==(const ChecklistItem&) const = default;
};

/// Records how items of a later version derive from earlier ones.
struct LineageLink {
  std::string operation;  // "split" | "merge" | "edit"
  std::vector<std::string> parents;
  std::vector<std::string> parent_goals;
  std::vector<std::string> children;

  bool operator==(const LineageLink&) const = default;
};

struct Checklist {
  int version = 0;
  std::vector<ChecklistItem> items;
  std::vector<LineageLink> lineage;
  std::vector<std::string> warnings;

  const ChecklistItem* find(std::string_view id) const;
  ChecklistItem* find(std::string_view id);
  /// Content id of this version, used as AgentState::checklist_ref.
  std::string ref() const;

  bool operator==(const Checklist&) const = default;
};

enum class IntentKind { kRefineScope, kRefineDefinition, kRefineAcceptance };

std::string_view to_string(IntentKind k);
IntentKind intent_kind_from_string(std::string_view s);

struct PlanIntent {
  std::string item_id;
  IntentKind kind = IntentKind::kRefineScope;
  std::string prompt_text;
  std::optional<std::string> resolution;

  bool operator==(const PlanIntent&) const = default;
};

enum class NodeKind {
  kRoot,
  kSection,
  kLeaf,
  kEvidence,  // created by outline refinement for unplanned evidence
  kHolding,   // unassignable evidence, kept visible for audit
};

std::string_view to_string(NodeKind k);
NodeKind node_kind_from_string(std::string_view s);

struct OutlineNode {
  std::string id;
  std::string title;
  std::optional<std::string> parent;
  int order = 0;
  std::vector<std::string> bound_items;
  std::vector<std::string> bound_evidence;
  int depth = 0;
  NodeKind kind = NodeKind::kLeaf;

  bool operator==(const OutlineNode&) const = default;
};

/// Section tree anchoring checklist items, evidence and report sections.
struct Outline {
  std::vector<OutlineNode> nodes;
  int version = 0;

  const OutlineNode* find(std::string_view id) const;
  OutlineNode* find(std::string_view id);
  const OutlineNode* root() const;
  std::vector<const OutlineNode*> children(std::string_view id) const;
  /// Pre-order, siblings by `order`.
  std::vector<std::string> dfs_order() const;
  /// Nodes without children, in dfs order.
  std::vector<std::string> leaves() const;
  std::vector<std::string> descendants(std::string_view id) const;
  bool is_leaf(std::string_view id) const;
  /// Titles from the root down to `id`, inclusive.
  std::vector<std::string> title_path(std::string_view id) const;

  /// Content-addressed node id: hash of title plus ancestor titles.
  static std::string make_node_id(const std::vector<std::string>& parent_path,
                                  std::string_view title);

  bool operator==(const Outline&) const = default;
};

/// Throws Error(kPrecondition) if the node set is not a single rooted tree
/// with consistent depths and unique sibling orders.
void validate_outline(const Outline& outline, int max_depth);

// Critic protocol -----------------------------------------------------------

enum class VerdictKind { kApprove, kEdit, kSplit, kMerge, kWaive };

std::string_view to_string(VerdictKind k);
VerdictKind verdict_kind_from_string(std::string_view s);

/// Partial item update; unset fields are left as they are.
struct ItemEdit {
  std::optional<std::string> goal;
  std::optional<std::vector<std::string>> inclusions;
  std::optional<std::vector<std::string>> exclusions;
  std::optional<std::vector<std::string>> acceptance_criteria;
  std::optional<int> priority;
  std::optional<std::vector<std::string>> depends_on;
  std::optional<std::string> resolution;

  bool operator==(const ItemEdit&) const = default;
};

struct Verdict {
  std::string item_id;
  VerdictKind kind = VerdictKind::kApprove;
  ItemEdit edit;                      // kEdit, and optional on kApprove
  std::vector<ItemEdit> split_into;   // kSplit
  std::vector<std::string> merge_with;  // kMerge
  ItemEdit merged;                    // kMerge

  bool operator==(const Verdict&) const = default;
};

/// What a critic (human or model) returns for one review round.
struct DecisionDocument {
  int checklist_version = 0;
  bool approve_all = false;
  std::vector<Verdict> verdicts;
  std::string reviewer;

  bool operator==(const DecisionDocument&) const = default;
};

/// The payload shown to a critic: items, intents and empty verdict slots.
struct ReviewDocument {
  std::string run_id;
  std::string query;
  int checklist_version = 0;
  int round = 0;
  std::vector<ChecklistItem> items;
  std::vector<PlanIntent> intents;
  std::vector<LineageLink> lineage;
};

inline constexpr std::string_view kReviewSchema = "checklist-review/1";
inline constexpr std::string_view kDecisionSchema = "checklist-decision/1";

void to_json(Json& j, const ChecklistItem& v);
void from_json(const Json& j, ChecklistItem& v);
void to_json(Json& j, const LineageLink& v);
void from_json(const Json& j, LineageLink& v);
void to_json(Json& j, const Checklist& v);
void from_json(const Json& j, Checklist& v);
void to_json(Json& j, const PlanIntent& v);
void from_json(const Json& j, PlanIntent& v);
void to_json(Json& j, const OutlineNode& v);
void from_json(const Json& j, OutlineNode& v);
void to_json(Json& j, const Outline& v);
void from_json(const Json& j, Outline& v);
void to_json(Json& j, const ItemEdit& v);
void from_json(const Json& j, ItemEdit& v);
void to_json(Json& j, const Verdict& v);
void from_json(const Json& j, Verdict& v);
void to_json(Json& j, const DecisionDocument& v);
void from_json(const Json& j, DecisionDocument& v);
void to_json(Json& j, const ReviewDocument& v);
void from_json(const Json& j, ReviewDocument& v);

}  // namespace groundwork
