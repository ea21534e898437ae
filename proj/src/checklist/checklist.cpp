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

#include "groundwork/checklist/checklist.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "groundwork/core/error.hpp"
#include "groundwork/core/text.hpp"

namespace groundwork {

namespace {

std::size_t word_count(std::string_view s) {
  std::size_t n = 0;
  bool in_word = false;
  for (const char c : s) {
    const bool space = c == ' ' || c == '\t' || c == '\n';
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

std::string default_criterion(const ChecklistItem& item) {
  return "At least one audited source addresses: " + item.goal;
}

// Priorities renumbered 1..n following dependency_order.
void renumber(std::vector<ChecklistItem>& items) {
  const auto order = dependency_order(items);
  std::map<std::string, int> rank;
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i) + 1;
  for (auto& item : items) item.priority = rank.at(item.id);
  std::stable_sort(items.begin(), items.end(),
                   [](const ChecklistItem& a, const ChecklistItem& b) {
                     return a.priority < b.priority;
                   });
}

void apply_edit(ChecklistItem& item, const ItemEdit& edit) {
  if (edit.goal) item.goal = *edit.goal;
  if (edit.inclusions) item.inclusions = *edit.inclusions;
  if (edit.exclusions) item.exclusions = *edit.exclusions;
  if (edit.acceptance_criteria) item.acceptance_criteria = *edit.acceptance_criteria;
  if (edit.priority) item.priority = *edit.priority;
  if (edit.depends_on) item.depends_on = *edit.depends_on;
}

template <typename T>
void append_unique(std::vector<T>& into, const std::vector<T>& from) {
  for (const auto& v : from) {
    if (std::find(into.begin(), into.end(), v) == into.end()) into.push_back(v);
  }
}

Outline initial_outline(std::string_view query, Checklist& checklist) {
  Outline outline;
  outline.version = 0;
  OutlineNode root;
  root.title = std::string(query);
  root.id = Outline::make_node_id({}, root.title);
  root.kind = NodeKind::kRoot;
  outline.nodes.push_back(root);
  int order = 0;
  for (auto& item : checklist.items) {
    OutlineNode node;
    node.title = item.goal;
    node.id = Outline::make_node_id({root.title}, node.title + "#" + item.id);
    node.parent = root.id;
    node.order = order++;
    node.depth = 1;
    node.kind = NodeKind::kLeaf;
    node.bound_items = {item.id};
    item.bound_nodes = {node.id};
    outline.nodes.push_back(std::move(node));
  }
  return outline;
}

}  // namespace

std::optional<IntentKind> missing_field(const ChecklistItem& item) {
  if (item.acceptance_criteria.empty()) return IntentKind::kRefineAcceptance;
  if (item.inclusions.empty() && item.exclusions.empty()) return IntentKind::kRefineScope;
  if (word_count(item.goal) < 3) return IntentKind::kRefineDefinition;
  return std::nullopt;
}

std::pair<Checklist, Outline> generate_checklist(std::string_view query,
                                                 PolicyPort& policy) {
  if (query.empty()) throw Error(ErrorCode::kPrecondition, "query is empty");
  for (int attempt = 0;; ++attempt) {
    try {
      auto items = policy.decompose(query);
      if (items.empty()) {
        throw Error(ErrorCode::kUnparseableOutput, "decomposition returned no items");
      }
      std::set<std::string> ids;
      for (std::size_t i = 0; i < items.size(); ++i) {
        auto& item = items[i];
        if (item.goal.empty()) {
          throw Error(ErrorCode::kUnparseableOutput, "checklist item without goal");
        }
        if (item.id.empty() || ids.count(item.id)) {
          item.id = "item-" + std::to_string(i + 1);
        }
        ids.insert(item.id);
        if (item.priority <= 0) item.priority = static_cast<int>(i) + 1;
      }
      for (auto& item : items) {
        std::erase_if(item.depends_on, [&](const std::string& d) {
          return !ids.count(d) || d == item.id;
        });
        item.status = missing_field(item) ? ItemStatus::kNeedsClarification
                                          : ItemStatus::kDraft;
      }
      // Ties in the proposed priorities keep the policy's order.
      std::vector<std::size_t> idx(items.size());
      std::iota(idx.begin(), idx.end(), 0);
      std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return items[a].priority < items[b].priority;
      });
      for (std::size_t r = 0; r < idx.size(); ++r) {
        items[idx[r]].priority = static_cast<int>(r) + 1;
      }
      try {
        renumber(items);
      } catch (const Error& e) {
        throw Error(ErrorCode::kUnparseableOutput, e.what());
      }
      Checklist c0;
      c0.version = 0;
      c0.items = std::move(items);
      Outline o0 = initial_outline(query, c0);
      return {std::move(c0), std::move(o0)};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUnparseableOutput || attempt >= 1) throw;
    }
  }
}

std::vector<PlanIntent> derive_plan_intents(std::string_view query,
                                            const Checklist& checklist,
                                            const AgentState& /*state*/) {
  std::vector<PlanIntent> out;
  for (const auto& item : checklist.items) {
    if (item.status != ItemStatus::kNeedsClarification) continue;
    PlanIntent intent;
    intent.item_id = item.id;
    intent.kind = missing_field(item).value_or(IntentKind::kRefineAcceptance);
    switch (intent.kind) {
      case IntentKind::kRefineScope:
        intent.prompt_text = "Clarify the scope of \"" + item.goal +
                             "\": which aspects, periods and regions are in or out "
                             "of scope for \"" + std::string(query) + "\"?";
        break;
      case IntentKind::kRefineDefinition:
        intent.prompt_text = "Define the key terms of \"" + item.goal +
                             "\" precisely enough that findings can be checked.";
        break;
      case IntentKind::kRefineAcceptance:
        intent.prompt_text = "State checkable acceptance criteria for \"" + item.goal +
                             "\": what evidence would show this item is complete?";
        break;
    }
    out.push_back(std::move(intent));
  }
  return out;
}

std::vector<std::string> dependency_order(const std::vector<ChecklistItem>& items) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < items.size(); ++i) index[items[i].id] = i;
  std::vector<int> indegree(items.size(), 0);
  std::vector<std::vector<std::size_t>> dependents(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (const auto& dep : items[i].depends_on) {
      auto it = index.find(dep);
      if (it == index.end()) {
        throw Error(ErrorCode::kInvalidDecision,
                    items[i].id + " depends on unknown item " + dep);
      }
      ++indegree[i];
      dependents[it->second].push_back(i);
    }
  }
  auto better = [&](std::size_t a, std::size_t b) {
    if (items[a].priority != items[b].priority) return items[a].priority < items[b].priority;
    return a < b;
  };
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  std::vector<std::string> out;
  while (!ready.empty()) {
    auto best = std::min_element(ready.begin(), ready.end(), better);
    const std::size_t cur = *best;
    ready.erase(best);
    out.push_back(items[cur].id);
    for (const auto d : dependents[cur]) {
      if (--indegree[d] == 0) ready.push_back(d);
    }
  }
  if (out.size() != items.size()) {
    throw Error(ErrorCode::kInvalidDecision, "checklist dependencies form a cycle");
  }
  return out;
}

Checklist apply_decision(const Checklist& checklist, const DecisionDocument& decision,
                         const std::vector<PlanIntent>& intents) {
  if (decision.checklist_version != checklist.version) {
    throw Error(ErrorCode::kInvalidDecision,
                "decision targets version " + std::to_string(decision.checklist_version) +
                    ", current is " + std::to_string(checklist.version));
  }
  std::map<std::string, const Verdict*> verdicts;
  for (const auto& v : decision.verdicts) {
    if (!checklist.find(v.item_id)) {
      throw Error(ErrorCode::kInvalidDecision, "verdict for unknown item " + v.item_id);
    }
    if (!verdicts.emplace(v.item_id, &v).second) {
      throw Error(ErrorCode::kInvalidDecision, "two verdicts for " + v.item_id);
    }
  }
  auto resolution_for = [&](const std::string& id) -> std::optional<std::string> {
    for (const auto& p : intents) {
      if (p.item_id == id && p.resolution) return p.resolution;
    }
    return std::nullopt;
  };

  Checklist next;
  next.version = checklist.version + 1;
  next.lineage = checklist.lineage;
  next.warnings = checklist.warnings;
  // old id -> ids that replace it
  std::map<std::string, std::vector<std::string>> replaced;
  std::set<std::string> merged_away;
  for (const auto& v : decision.verdicts) {
    if (v.kind != VerdictKind::kMerge) continue;
    for (const auto& other : v.merge_with) {
      if (!checklist.find(other) || other == v.item_id) {
        throw Error(ErrorCode::kInvalidDecision, "cannot merge " + v.item_id + " with " + other);
      }
      if (!merged_away.insert(other).second) {
        throw Error(ErrorCode::kInvalidDecision, other + " merged twice");
      }
    }
  }

  auto finish_status = [&](ChecklistItem& item) {
    item.status = item.acceptance_criteria.empty() ? ItemStatus::kNeedsClarification
                                                   : ItemStatus::kVerified;
  };

  for (const auto& original : checklist.items) {
    if (merged_away.count(original.id)) continue;
    auto it = verdicts.find(original.id);
    const Verdict* v = it == verdicts.end() ? nullptr : it->second;
    const VerdictKind kind = v ? v->kind : VerdictKind::kApprove;
    ChecklistItem item = original;
    item.bound_nodes.clear();
    switch (kind) {
      case VerdictKind::kApprove:
      case VerdictKind::kEdit: {
        if (v) apply_edit(item, v->edit);
        if (item.goal.empty()) {
          throw Error(ErrorCode::kInvalidDecision, "edit leaves " + item.id + " without a goal");
        }
        if (item.goal != original.goal) {
          next.lineage.push_back({"edit", {original.id}, {original.goal}, {item.id}});
        }
        if (kind == VerdictKind::kApprove && item.acceptance_criteria.empty()) {
          const auto res = (v && v->edit.resolution) ? v->edit.resolution
                                                     : resolution_for(item.id);
          item.acceptance_criteria = {res ? *res : default_criterion(item)};
        }
        finish_status(item);
        next.items.push_back(std::move(item));
        replaced[original.id] = {original.id};
        break;
      }
      case VerdictKind::kWaive:
        item.status = ItemStatus::kWaived;
        next.items.push_back(std::move(item));
        replaced[original.id] = {original.id};
        break;
      case VerdictKind::kSplit: {
        if (v->split_into.size() < 2) {
          throw Error(ErrorCode::kInvalidDecision, "split of " + item.id + " needs two parts");
        }
        LineageLink link{"split", {original.id}, {original.goal}, {}};
        for (std::size_t k = 0; k < v->split_into.size(); ++k) {
          ChecklistItem child = original;
          child.bound_nodes.clear();
          child.id = original.id + "." + std::to_string(k + 1);
          apply_edit(child, v->split_into[k]);
          if (!v->split_into[k].goal) {
            throw Error(ErrorCode::kInvalidDecision, "split part without goal");
          }
          finish_status(child);
          link.children.push_back(child.id);
          next.items.push_back(std::move(child));
        }
        replaced[original.id] = link.children;
        next.lineage.push_back(std::move(link));
        break;
      }
      case VerdictKind::kMerge: {
        ChecklistItem merged = original;
        merged.bound_nodes.clear();
        LineageLink link{"merge", {original.id}, {original.goal}, {}};
        std::vector<std::string> goals{original.goal};
        for (const auto& other_id : v->merge_with) {
          const ChecklistItem* other = checklist.find(other_id);
          link.parents.push_back(other->id);
          link.parent_goals.push_back(other->goal);
          goals.push_back(other->goal);
          append_unique(merged.inclusions, other->inclusions);
          append_unique(merged.exclusions, other->exclusions);
          append_unique(merged.acceptance_criteria, other->acceptance_criteria);
          append_unique(merged.depends_on, other->depends_on);
          merged.priority = std::min(merged.priority, other->priority);
        }
        merged.id = text::join(link.parents, "+");
        merged.goal = text::join(goals, "; ");
        apply_edit(merged, v->merged);
        finish_status(merged);
        link.children = {merged.id};
        for (const auto& p : link.parents) replaced[p] = {merged.id};
        next.lineage.push_back(std::move(link));
        next.items.push_back(std::move(merged));
        break;
      }
    }
  }

  // Remap dependencies onto the surviving ids.
  for (auto& item : next.items) {
    std::vector<std::string> deps;
    for (const auto& d : item.depends_on) {
      auto it = replaced.find(d);
      if (it == replaced.end()) {
        if (!next.find(d)) {
          throw Error(ErrorCode::kInvalidDecision, item.id + " depends on unknown " + d);
        }
        append_unique(deps, {d});
        continue;
      }
      for (const auto& r : it->second) {
        if (r != item.id) append_unique(deps, {r});
      }
    }
    item.depends_on = std::move(deps);
  }
  renumber(next.items);
  return next;
}

Checklist critic_refine(const Checklist& checklist, const std::vector<PlanIntent>& intents,
                        CriticPort& critic, const RefineOptions& options) {
  Checklist current = checklist;
  std::vector<PlanIntent> current_intents = intents;
  for (int round = 0; round < options.max_rounds; ++round) {
    ReviewDocument doc;
    doc.run_id = options.run_id;
    doc.query = options.query;
    doc.checklist_version = current.version;
    doc.round = round;
    doc.items = current.items;
    doc.intents = current_intents;
    doc.lineage = current.lineage;

    DecisionDocument decision;
    try {
      decision = critic.review(doc);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kCriticTimeout) throw;
      if (options.on_timeout == TimeoutFallback::kAbort || !options.fallback) throw;
      current.warnings.push_back("critic " + critic.name() + " timed out; used " +
                                 options.fallback->name());
      decision = options.fallback->review(doc);
    }
    if (options.on_round) options.on_round(doc, decision);
    Checklist next = apply_decision(current, decision, current_intents);
    const bool done = std::all_of(next.items.begin(), next.items.end(), [](const auto& i) {
      return i.status == ItemStatus::kVerified || i.status == ItemStatus::kWaived;
    });
    if (done) return next;
    current = std::move(next);
    current_intents = derive_plan_intents(options.query, current, AgentState{});
  }
  throw Error(ErrorCode::kMaxRoundsExceeded,
              "checklist still has unverified items after " +
                  std::to_string(options.max_rounds) + " critic round(s)");
}

Outline compile_outline(const Checklist& checklist, int max_depth,
                        std::string_view root_title, std::vector<std::string>* warnings) {
  std::vector<const ChecklistItem*> verified;
  for (const auto& item : checklist.items) {
    if (item.status == ItemStatus::kVerified) {
      verified.push_back(&item);
    } else if (item.status != ItemStatus::kWaived) {
      throw Error(ErrorCode::kPrecondition,
                  "compile_outline needs verified or waived items; " + item.id + " is " +
                      std::string(to_string(item.status)));
    }
  }
  {
    // Members follow dependency order; edges to waived items are dropped.
    std::vector<ChecklistItem> kept;
    std::set<std::string> ids;
    for (const auto* item : verified) ids.insert(item->id);
    for (const auto* item : verified) {
      ChecklistItem copy = *item;
      std::erase_if(copy.depends_on, [&](const std::string& d) { return !ids.count(d); });
      kept.push_back(std::move(copy));
    }
    std::map<std::string, const ChecklistItem*> by_id;
    for (const auto* item : verified) by_id[item->id] = item;
    verified.clear();
    for (const auto& id : dependency_order(kept)) verified.push_back(by_id.at(id));
  }
  auto warn = [&](std::string msg) {
    if (warnings) warnings->push_back(std::move(msg));
  };

  Outline outline;
  outline.version = checklist.version;
  OutlineNode root;
  root.title = std::string(root_title);
  root.id = Outline::make_node_id({}, root.title);
  root.kind = NodeKind::kRoot;
  if (max_depth <= 0) {
    if (!verified.empty()) {
      warn("depth-overflow: max_depth 0 binds every item to the root");
    }
    for (const auto* item : verified) root.bound_items.push_back(item->id);
    outline.nodes.push_back(std::move(root));
    return outline;
  }
  outline.nodes.push_back(root);

  // Union-find over dependency edges between verified items.
  std::map<std::string, std::string> parent;
  for (const auto* item : verified) parent[item->id] = item->id;
  std::function<std::string(const std::string&)> find_set = [&](const std::string& x) {
    if (parent[x] == x) return x;
    return parent[x] = find_set(parent[x]);
  };
  for (const auto* item : verified) {
    for (const auto& d : item->depends_on) {
      if (!parent.count(d)) continue;
      const auto a = find_set(item->id);
      const auto b = find_set(d);
      if (a != b) parent[a] = b;
    }
  }
  // Clusters in order of their best (lowest) priority.
  std::vector<std::vector<const ChecklistItem*>> clusters;
  std::map<std::string, std::size_t> cluster_of;
  for (const auto* item : verified) {
    const auto rep = find_set(item->id);
    auto [it, fresh] = cluster_of.emplace(rep, clusters.size());
    if (fresh) clusters.emplace_back();
    clusters[it->second].push_back(item);
  }
  auto best = [](const std::vector<const ChecklistItem*>& c) {
    int p = c.front()->priority;
    for (const auto* item : c) p = std::min(p, item->priority);
    return p;
  };
  std::stable_sort(clusters.begin(), clusters.end(),
                   [&](const auto& a, const auto& b) { return best(a) < best(b); });

  const std::vector<std::string> root_path{root.title};
  int root_order = 0;
  auto add_leaf = [&](const ChecklistItem* item, const OutlineNode& under,
                      const std::vector<std::string>& path, int order) {
    OutlineNode leaf;
    leaf.title = item->goal;
    leaf.id = Outline::make_node_id(path, leaf.title);
    leaf.parent = under.id;
    leaf.order = order;
    leaf.depth = under.depth + 1;
    leaf.kind = NodeKind::kLeaf;
    leaf.bound_items = {item->id};
    outline.nodes.push_back(std::move(leaf));
  };
  for (const auto& cluster : clusters) {
    if (cluster.size() == 1) {
      add_leaf(cluster.front(), root, root_path, root_order++);
      continue;
    }
    if (max_depth < 2) {
      warn("depth-overflow: group led by \"" + cluster.front()->goal +
           "\" flattened at depth 1");
      for (const auto* item : cluster) add_leaf(item, root, root_path, root_order++);
      continue;
    }
    OutlineNode section;
    section.title = cluster.front()->goal + " and dependent items";
    section.id = Outline::make_node_id(root_path, section.title);
    section.parent = root.id;
    section.order = root_order++;
    section.depth = 1;
    section.kind = NodeKind::kSection;
    outline.nodes.push_back(section);
    const std::vector<std::string> section_path{root.title, section.title};
    int order = 0;
    for (const auto* item : cluster) add_leaf(item, section, section_path, order++);
  }
  return outline;
}

void bind_items(Checklist& checklist, const Outline& outline) {
  for (auto& item : checklist.items) {
    item.bound_nodes.clear();
    for (const auto& node : outline.nodes) {
      if (std::find(node.bound_items.begin(), node.bound_items.end(), item.id) !=
          node.bound_items.end()) {
        item.bound_nodes.push_back(node.id);
      }
    }
  }
}

}  // namespace groundwork
