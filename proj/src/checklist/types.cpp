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

#include "groundwork/checklist/types.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <utility>

#include "groundwork/core/error.hpp"
#include "groundwork/core/hash.hpp"

namespace groundwork {

namespace {

template <typename E, std::size_t N>
std::string_view enum_name(const std::array<std::pair<E, std::string_view>, N>& table,
                           E value) {
  for (const auto& [e, name] : table) {
    if (e == value) return name;
  }
  return "";
}

template <typename E, std::size_t N>
E enum_value(const std::array<std::pair<E, std::string_view>, N>& table,
             std::string_view s, const char* what) {
  for (const auto& [e, name] : table) {
    if (name == s) return e;
  }
  throw Error(ErrorCode::kUnparseableOutput,
              std::string("unknown ") + what + ": " + std::string(s));
}

constexpr std::array<std::pair<ItemStatus, std::string_view>, 6> kStatuses{{
    {ItemStatus::kDraft, "draft"},
    {ItemStatus::kNeedsClarification, "needs-clarification"},
    {ItemStatus::kVerified, "verified"},
    {ItemStatus::kInProgress, "in_progress"},
    {ItemStatus::kSatisfied, "satisfied"},
    {ItemStatus::kWaived, "waived"},
}};

constexpr std::array<std::pair<IntentKind, std::string_view>, 3> kIntentKinds{{
    {IntentKind::kRefineScope, "refine-scope"},
    {IntentKind::kRefineDefinition, "refine-definition"},
    {IntentKind::kRefineAcceptance, "refine-acceptance"},
}};

constexpr std::array<std::pair<NodeKind, std::string_view>, 5> kNodeKinds{{
    {NodeKind::kRoot, "root"},
    {NodeKind::kSection, "section"},
    {NodeKind::kLeaf, "leaf"},
    {NodeKind::kEvidence, "evidence"},
    {NodeKind::kHolding, "holding"},
}};

constexpr std::array<std::pair<VerdictKind, std::string_view>, 5> kVerdicts{{
    {VerdictKind::kApprove, "approve"},
    {VerdictKind::kEdit, "edit"},
    {VerdictKind::kSplit, "split"},
    {VerdictKind::kMerge, "merge"},
    {VerdictKind::kWaive, "waive"},
}};

}  // namespace

std::string_view to_string(ItemStatus s) { return enum_name(kStatuses, s); }
ItemStatus item_status_from_string(std::string_view s) {
  return enum_value(kStatuses, s, "item status");
}
std::string_view to_string(IntentKind k) { return enum_name(kIntentKinds, k); }
IntentKind intent_kind_from_string(std::string_view s) {
  return enum_value(kIntentKinds, s, "intent kind");
}
std::string_view to_string(NodeKind k) { return enum_name(kNodeKinds, k); }
NodeKind node_kind_from_string(std::string_view s) {
  return enum_value(kNodeKinds, s, "node kind");
}
std::string_view to_string(VerdictKind k) { return enum_name(kVerdicts, k); }
VerdictKind verdict_kind_from_string(std::string_view s) {
  return enum_value(kVerdicts, s, "verdict");
}

// Checklist -----------------------------------------------------------------

const ChecklistItem* Checklist::find(std::string_view id) const {
  for (const auto& item : items) {
    if (item.id == id) return &item;
  }
  return nullptr;
}

ChecklistItem* Checklist::find(std::string_view id) {
  for (auto& item : items) {
    if (item.id == id) return &item;
  }
  return nullptr;
}

std::string Checklist::ref() const {
  Json j = *this;
  return "cl-" + std::to_string(version) + "-" + short_hash(canonical_dump(j), 12);
}

// Outline -------------------------------------------------------------------

const OutlineNode* Outline::find(std::string_view id) const {
  for (const auto& n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

OutlineNode* Outline::find(std::string_view id) {
  for (auto& n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

const OutlineNode* Outline::root() const {
  for (const auto& n : nodes) {
    if (!n.parent) return &n;
  }
  return nullptr;
}

std::vector<const OutlineNode*> Outline::children(std::string_view id) const {
  std::vector<const OutlineNode*> out;
  for (const auto& n : nodes) {
    if (n.parent && *n.parent == id) out.push_back(&n);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const OutlineNode* a, const OutlineNode* b) {
                     return a->order < b->order;
                   });
  return out;
}

std::vector<std::string> Outline::dfs_order() const {
  std::vector<std::string> out;
  const OutlineNode* r = root();
  if (!r) return out;
  std::vector<const OutlineNode*> stack{r};
  while (!stack.empty()) {
    const OutlineNode* n = stack.back();
    stack.pop_back();
    out.push_back(n->id);
    auto kids = children(n->id);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    if (out.size() > nodes.size()) {
      throw Error(ErrorCode::kPrecondition, "outline contains a cycle");
    }
  }
  return out;
}

std::vector<std::string> Outline::leaves() const {
  std::vector<std::string> out;
  for (const auto& id : dfs_order()) {
    if (is_leaf(id)) out.push_back(id);
  }
  return out;
}

std::vector<std::string> Outline::descendants(std::string_view id) const {
  std::vector<std::string> out;
  std::vector<std::string> frontier{std::string(id)};
  while (!frontier.empty()) {
    const std::string cur = frontier.back();
    frontier.pop_back();
    for (const auto* c : children(cur)) {
      out.push_back(c->id);
      frontier.push_back(c->id);
    }
  }
  return out;
}

bool Outline::is_leaf(std::string_view id) const {
  return std::none_of(nodes.begin(), nodes.end(), [&](const OutlineNode& n) {
    return n.parent && *n.parent == id;
  });
}

std::vector<std::string> Outline::title_path(std::string_view id) const {
  std::vector<std::string> out;
  const OutlineNode* n = find(id);
  while (n) {
    out.push_back(n->title);
    n = n->parent ? find(*n->parent) : nullptr;
    if (out.size() > nodes.size()) break;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string Outline::make_node_id(const std::vector<std::string>& parent_path,
                                  std::string_view title) {
  std::string key;
  for (const auto& p : parent_path) {
    key += p;
    key += '\x1f';
  }
  key += title;
  return "n-" + short_hash(key, 12);
}

void validate_outline(const Outline& outline, int max_depth) {
  const OutlineNode* r = nullptr;
  std::set<std::string> ids;
  for (const auto& n : outline.nodes) {
    if (!ids.insert(n.id).second) {
      throw Error(ErrorCode::kPrecondition, "duplicate node id " + n.id);
    }
    if (!n.parent) {
      if (r) throw Error(ErrorCode::kPrecondition, "outline has two roots");
      r = &n;
    }
  }
  if (!r) throw Error(ErrorCode::kPrecondition, "outline has no root");
  std::map<std::string, std::set<int>> sibling_orders;
  for (const auto& n : outline.nodes) {
    if (n.parent) {
      const OutlineNode* p = outline.find(*n.parent);
      if (!p) throw Error(ErrorCode::kPrecondition, "dangling parent of " + n.id);
      if (n.depth != p->depth + 1) {
        throw Error(ErrorCode::kPrecondition, "inconsistent depth at " + n.id);
      }
      if (!sibling_orders[*n.parent].insert(n.order).second) {
        throw Error(ErrorCode::kPrecondition, "duplicate sibling order at " + n.id);
      }
    } else if (n.depth != 0) {
      throw Error(ErrorCode::kPrecondition, "root depth must be 0");
    }
    if (n.depth > max_depth) {
      throw Error(ErrorCode::kPrecondition, "node deeper than max_depth: " + n.id);
    }
  }
  if (outline.dfs_order().size() != outline.nodes.size()) {
    throw Error(ErrorCode::kPrecondition, "outline is not connected");
  }
}

// Serialization -------------------------------------------------------------

void to_json(Json& j, const ChecklistItem& v) {
  j = Json{{"id", v.id},
           {"goal", v.goal},
           {"inclusions", v.inclusions},
           {"exclusions", v.exclusions},
           {"acceptance_criteria", v.acceptance_criteria},
           {"priority", v.priority},
           {"depends_on", v.depends_on},
           {"status", to_string(v.status)},
           {"bound_nodes", v.bound_nodes}};
}

void from_json(const Json& j, ChecklistItem& v) {
  read_field(j, "id", v.id);
  read_field(j, "goal", v.goal);
  read_field(j, "inclusions", v.inclusions);
  read_field(j, "exclusions", v.exclusions);
  read_field(j, "acceptance_criteria", v.acceptance_criteria);
  read_field(j, "priority", v.priority);
  read_field(j, "depends_on", v.depends_on);
  if (auto s = optional_field<std::string>(j, "status")) {
    v.status = item_status_from_string(*s);
  }
  read_field(j, "bound_nodes", v.bound_nodes);
}

void to_json(Json& j, const LineageLink& v) {
  j = Json{{"operation", v.operation},
           {"parents", v.parents},
           {"parent_goals", v.parent_goals},
           {"children", v.children}};
}

void from_json(const Json& j, LineageLink& v) {
  read_field(j, "operation", v.operation);
  read_field(j, "parents", v.parents);
  read_field(j, "parent_goals", v.parent_goals);
  read_field(j, "children", v.children);
}

void to_json(Json& j, const Checklist& v) {
  j = Json{{"version", v.version},
           {"items", v.items},
           {"lineage", v.lineage},
           {"warnings", v.warnings}};
}

void from_json(const Json& j, Checklist& v) {
  read_field(j, "version", v.version);
  read_field(j, "items", v.items);
  read_field(j, "lineage", v.lineage);
  read_field(j, "warnings", v.warnings);
}

void to_json(Json& j, const PlanIntent& v) {
  j = Json{{"item_id", v.item_id},
           {"kind", to_string(v.kind)},
           {"prompt_text", v.prompt_text},
           {"resolution", v.resolution}};
}

void from_json(const Json& j, PlanIntent& v) {
  read_field(j, "item_id", v.item_id);
  v.kind = intent_kind_from_string(j.at("kind").get<std::string>());
  read_field(j, "prompt_text", v.prompt_text);
  v.resolution = optional_field<std::string>(j, "resolution");
}

void to_json(Json& j, const OutlineNode& v) {
  j = Json{{"id", v.id},
           {"title", v.title},
           {"parent", v.parent},
           {"order", v.order},
           {"bound_items", v.bound_items},
           {"bound_evidence", v.bound_evidence},
           {"depth", v.depth},
           {"kind", to_string(v.kind)}};
}

void from_json(const Json& j, OutlineNode& v) {
  read_field(j, "id", v.id);
  read_field(j, "title", v.title);
  v.parent = optional_field<std::string>(j, "parent");
  read_field(j, "order", v.order);
  read_field(j, "bound_items", v.bound_items);
  read_field(j, "bound_evidence", v.bound_evidence);
  read_field(j, "depth", v.depth);
  if (auto k = optional_field<std::string>(j, "kind")) {
    v.kind = node_kind_from_string(*k);
  }
}

void to_json(Json& j, const Outline& v) {
  j = Json{{"version", v.version}, {"nodes", v.nodes}};
}

void from_json(const Json& j, Outline& v) {
  read_field(j, "version", v.version);
  read_field(j, "nodes", v.nodes);
}

void to_json(Json& j, const ItemEdit& v) {
  j = Json::object();
  if (v.goal) j["goal"] = *v.goal;
  if (v.inclusions) j["inclusions"] = *v.inclusions;
  if (v.exclusions) j["exclusions"] = *v.exclusions;
  if (v.acceptance_criteria) j["acceptance_criteria"] = *v.acceptance_criteria;
  if (v.priority) j["priority"] = *v.priority;
  if (v.depends_on) j["depends_on"] = *v.depends_on;
  if (v.resolution) j["resolution"] = *v.resolution;
}

void from_json(const Json& j, ItemEdit& v) {
  v.goal = optional_field<std::string>(j, "goal");
  v.inclusions = optional_field<std::vector<std::string>>(j, "inclusions");
  v.exclusions = optional_field<std::vector<std::string>>(j, "exclusions");
  v.acceptance_criteria =
      optional_field<std::vector<std::string>>(j, "acceptance_criteria");
  v.priority = optional_field<int>(j, "priority");
  v.depends_on = optional_field<std::vector<std::string>>(j, "depends_on");
  v.resolution = optional_field<std::string>(j, "resolution");
}

void to_json(Json& j, const Verdict& v) {
  j = Json{{"item_id", v.item_id}, {"verdict", to_string(v.kind)}};
  switch (v.kind) {
    case VerdictKind::kApprove:
    case VerdictKind::kEdit:
      j["edit"] = v.edit;
      break;
    case VerdictKind::kSplit:
      j["split_into"] = v.split_into;
      break;
    case VerdictKind::kMerge:
      j["merge_with"] = v.merge_with;
      j["merged"] = v.merged;
      break;
    case VerdictKind::kWaive:
      break;
  }
}

void from_json(const Json& j, Verdict& v) {
  read_field(j, "item_id", v.item_id);
  v.kind = verdict_kind_from_string(j.at("verdict").get<std::string>());
  read_field(j, "edit", v.edit);
  read_field(j, "split_into", v.split_into);
  read_field(j, "merge_with", v.merge_with);
  read_field(j, "merged", v.merged);
}

void to_json(Json& j, const DecisionDocument& v) {
  j = Json{{"schema", kDecisionSchema},
           {"checklist_version", v.checklist_version},
           {"approve_all", v.approve_all},
           {"verdicts", v.verdicts},
           {"reviewer", v.reviewer}};
}

void from_json(const Json& j, DecisionDocument& v) {
  if (auto s = optional_field<std::string>(j, "schema"); s && *s != kDecisionSchema) {
    throw Error(ErrorCode::kInvalidDecision, "unsupported schema " + *s);
  }
  v.checklist_version = j.at("checklist_version").get<int>();
  read_field(j, "approve_all", v.approve_all);
  read_field(j, "verdicts", v.verdicts);
  read_field(j, "reviewer", v.reviewer);
}

void to_json(Json& j, const ReviewDocument& v) {
  Json slots = Json::array();
  for (const auto& item : v.items) {
    slots.push_back(Json{{"item_id", item.id}, {"verdict", nullptr}});
  }
  j = Json{{"schema", kReviewSchema},
           {"run_id", v.run_id},
           {"query", v.query},
           {"checklist_version", v.checklist_version},
           {"round", v.round},
           {"items", v.items},
           {"intents", v.intents},
           {"lineage", v.lineage},
           {"verdicts", std::move(slots)}};
}

void from_json(const Json& j, ReviewDocument& v) {
  read_field(j, "run_id", v.run_id);
  read_field(j, "query", v.query);
  read_field(j, "checklist_version", v.checklist_version);
  read_field(j, "round", v.round);
  read_field(j, "items", v.items);
  read_field(j, "intents", v.intents);
  read_field(j, "lineage", v.lineage);
}

}  // namespace groundwork
