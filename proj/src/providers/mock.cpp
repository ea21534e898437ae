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

#include "groundwork/providers/mock.hpp"

#include <algorithm>
#include <array>
#include <regex>
#include <set>

#include "groundwork/core/error.hpp"
#include "groundwork/core/text.hpp"

namespace groundwork {

namespace {

struct CategoryRule {
  std::string_view category;
  std::array<std::string_view, 10> words;
};

// First matching rule wins.
constexpr std::array<CategoryRule, 4> kCategoryRules{{
    {"cost", {"cost", "costs", "price", "prices", "spend", "spending", "revenue",
              "budget", "loss", "valuation"}},
    {"risk", {"risk", "risks", "threat", "threats", "uncertainty", "exposure",
              "liability", "", "", ""}},
    {"temporal", {"timeline", "date", "dates", "year", "years", "trend", "trends",
                  "schedule", "", ""}},
    {"quantitative", {"share", "percent", "percentage", "rate", "rates", "number",
                      "count", "volume", "metric", "metrics"}},
}};

std::set<std::string> issued_queries(const AgentState& state) {
  std::set<std::string> out(state.todo_list.begin(), state.todo_list.end());
  for (const auto& c : state.completed_list) out.insert(c.item);
  return out;
}

const std::regex& number_pattern() {
  static const std::regex kNumber(
      R"((\d+(?:\.\d+)?)\s*(%|percent|billion|million|thousand)?)",
      std::regex::ECMAScript);
  return kNumber;
}

}  // namespace

std::string claim_category(const std::vector<std::string>& acceptance_criteria) {
  std::set<std::string> words;
  for (const auto& c : acceptance_criteria) {
    for (auto& t : text::terms(c)) words.insert(std::move(t));
  }
  for (const auto& rule : kCategoryRules) {
    for (const auto w : rule.words) {
      if (!w.empty() && words.count(std::string(w))) return std::string(rule.category);
    }
  }
  return "finding";
}

std::string summary_body(std::string_view summary) {
  const auto pos = summary.rfind(" (source: ");
  if (pos != std::string_view::npos && !summary.empty() && summary.back() == ')') {
    return std::string(summary.substr(0, pos));
  }
  return std::string(summary);
}

const ChecklistFixture& MockPolicy::checklist_fixture(std::string_view query) const {
  const ChecklistFixture* c = fixtures_.checklist_for(query);
  if (!c) {
    throw Error(ErrorCode::kFixtureMiss,
                "no checklist fixture for query \"" + std::string(query) + "\"");
  }
  return *c;
}

std::vector<ChecklistItem> MockPolicy::decompose(std::string_view query) {
  std::vector<ChecklistItem> out;
  for (const auto& fi : checklist_fixture(query).items) {
    ChecklistItem item = fi.item;
    item.status = ItemStatus::kDraft;
    item.bound_nodes.clear();
    out.push_back(std::move(item));
  }
  return out;
}

Decision MockPolicy::decide(const Workspace& workspace, const AgentState& state) {
  Decision d;
  if (!state.search_tasks.empty()) {
    Json ids = Json::array();
    for (const auto& t : state.search_tasks) ids.push_back(t.id);
    d.thought = std::to_string(state.search_tasks.size()) +
                " search task(s) are pending for " +
                std::to_string(workspace.active_subgoals.size()) +
                " open subgoal(s); evidence must be acquired before replanning.";
    d.action_thought = "Run the pending search tasks and audit what comes back.";
    d.action.tool = Tool::kSearch;
    d.action.parameters = Json{{"tasks", std::move(ids)}};
    d.action.task_descriptor = "search pending tasks";
    return d;
  }
  Json goals = Json::array();
  for (const auto& g : workspace.active_subgoals) goals.push_back(g.item_id);
  d.thought = "No search tasks are pending; " +
              std::to_string(workspace.active_subgoals.size()) +
              " subgoal(s) still lack sufficient evidence.";
  d.action_thought = "Plan the next retrieval queries for the open subgoals.";
  d.action.tool = Tool::kPlan;
  d.action.parameters = Json{{"subgoals", std::move(goals)}};
  d.action.task_descriptor = "plan next queries";
  return d;
}

PlanResult MockPolicy::plan(std::string_view query, const Workspace& workspace,
                            const AgentState& state) {
  const ChecklistFixture& fixture = checklist_fixture(query);
  PlanResult result;
  std::vector<Subgoal> subgoals = workspace.active_subgoals;

  // Without a compiled outline, the first plan lays one out from the
  // decomposition.
  if (state.outline.nodes.size() <= 1) {
    Outline outline;
    outline.version = state.outline.version + 1;
    OutlineNode root;
    root.title = std::string(query);
    root.id = Outline::make_node_id({}, root.title);
    root.kind = NodeKind::kRoot;
    outline.nodes.push_back(root);
    std::vector<const FixtureItem*> ordered;
    for (const auto& fi : fixture.items) ordered.push_back(&fi);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const FixtureItem* a, const FixtureItem* b) {
                       return a->item.priority < b->item.priority;
                     });
    subgoals.clear();
    int order = 0;
    for (const auto* fi : ordered) {
      OutlineNode leaf;
      leaf.title = fi->item.goal;
      leaf.id = Outline::make_node_id({root.title}, leaf.title);
      leaf.parent = root.id;
      leaf.order = order++;
      leaf.depth = 1;
      leaf.kind = NodeKind::kLeaf;
      subgoals.push_back({leaf.id, leaf.title, {leaf.id}});
      outline.nodes.push_back(std::move(leaf));
    }
    result.outline = std::move(outline);
  }

  const auto issued = issued_queries(state);
  for (const auto& goal : subgoals) {
    const FixtureItem* fi = fixture.match(goal.item_id, goal.goal);
    if (!fi) continue;
    for (const auto& q : fi->queries) {
      if (issued.count(search_todo_text(q))) continue;
      SearchTask task;
      const bool has_item = goal.node_ids.empty() || goal.item_id != goal.node_ids.front();
      if (has_item) task.origin_item = goal.item_id;
      if (!goal.node_ids.empty()) task.origin_node = goal.node_ids.front();
      task.query_text = q;
      task.intent = "Gather evidence for: " + goal.goal;
      task.id = SearchTask::make_id(q, task.origin_item ? task.origin_item : task.origin_node);
      result.tasks.push_back(std::move(task));
      break;
    }
  }
  result.rationale = std::to_string(result.tasks.size()) + " new task(s) for " +
                     std::to_string(subgoals.size()) + " open subgoal(s)";
  return result;
}

std::string MockPolicy::summarize(const NormalizedDoc& doc) {
  const auto parts = text::sentences(doc.text);
  std::vector<std::string> head(
      parts.begin(),
      parts.begin() + static_cast<std::ptrdiff_t>(
                          std::min(parts.size(), options_.summary_sentences)));
  std::string body = text::join(head, " ");
  if (body.empty()) return "";
  return body + " (source: " + doc.source + ")";
}

SectionDraft MockPolicy::draft_section(const OutlineNode& node,
                                       const std::vector<ChecklistItem>& items,
                                       const std::vector<EvidenceUnit>& ranked) {
  SectionDraft out;
  Passage passage;
  std::vector<std::string> criteria;
  std::vector<std::string> goals;
  for (const auto& item : items) {
    goals.push_back(item.goal);
    criteria.insert(criteria.end(), item.acceptance_criteria.begin(),
                    item.acceptance_criteria.end());
  }
  if (ranked.empty()) {
    passage.gap = true;
    passage.lead = "No audited evidence was found for \"" + node.title + "\".";
    out.passages.push_back(std::move(passage));
    return out;
  }
  passage.lead = goals.empty() ? "Findings for " + node.title + "."
                               : "This section addresses: " + text::join(goals, "; ") + ".";
  const std::string category = claim_category(criteria);
  VizSpec viz;
  viz.node_id = node.id;
  viz.kind = VizKind::kTable;
  viz.caption = "Figures reported for " + node.title;
  for (const auto& unit : ranked) {
    const auto body = summary_body(unit.summary);
    const auto parts = text::sentences(body);
    Claim claim;
    claim.text = parts.empty() ? body : parts.front();
    claim.category = category;
    claim.evidence_ids = {unit.id};
    passage.claims.push_back(std::move(claim));

    std::smatch m;
    if (std::regex_search(body, m, number_pattern())) {
      VizRow row;
      row.label = unit.title.empty() ? unit.source : unit.title;
      row.value = std::stod(m[1].str());
      row.unit = m[2].matched ? m[2].str() : "";
      row.evidence_ids = {unit.id};
      viz.data.push_back(std::move(row));
      viz.evidence_ids.push_back(unit.id);
    }
  }
  out.passages.push_back(std::move(passage));
  if (viz.data.size() >= 3) out.visuals.push_back(std::move(viz));
  return out;
}

std::string MockPolicy::hedge(std::string_view claim_text) {
  std::string body(claim_text);
  while (!body.empty() && (body.back() == '.' || body.back() == ' ')) body.pop_back();
  return "Available evidence does not confirm that " + body + ".";
}

DecisionDocument MockPolicy::critique(const ReviewDocument& review) {
  DecisionDocument doc;
  doc.checklist_version = review.checklist_version;
  doc.reviewer = "mock-critic";
  for (const auto& item : review.items) {
    const bool flagged = std::any_of(
        review.intents.begin(), review.intents.end(),
        [&](const PlanIntent& p) { return p.item_id == item.id; });
    Verdict v;
    v.item_id = item.id;
    if (!flagged) {
      v.kind = VerdictKind::kApprove;
      doc.verdicts.push_back(std::move(v));
      continue;
    }
    v.kind = VerdictKind::kEdit;
    if (item.acceptance_criteria.empty()) {
      v.edit.acceptance_criteria =
          std::vector<std::string>{"At least one audited source addresses: " + item.goal};
    }
    if (item.inclusions.empty() && item.exclusions.empty()) {
      v.edit.inclusions = std::vector<std::string>{"Aspects named in the research question"};
    }
    if (text::terms(item.goal).size() < 3) {
      v.edit.goal = item.goal + " (as it bears on: " + review.query + ")";
    }
    v.edit.resolution = "clarified by model critic";
    doc.verdicts.push_back(std::move(v));
  }
  return doc;
}

std::vector<RawResult> MockEnvironment::search(const SearchTask& task, int step_index,
                                               Timestamp now) {
  std::vector<RawResult> out;
  const auto* docs = fixtures_.search_for(task.query_text);
  if (!docs) {
    RawResult miss;
    miss.source = "fixture://search/" + task.query_text;
    miss.fetched_at = now;
    miss.ok = false;
    miss.error_code = "fixture-miss";
    miss.search_task_id = task.id;
    miss.step_index = step_index;
    out.push_back(std::move(miss));
    return out;
  }
  for (const auto& d : *docs) {
    RawResult r;
    r.source = d.url;
    r.fetched_at = now;
    r.ok = d.status == "ok";
    if (!r.ok) r.error_code = d.status;
    if (!d.title.empty()) r.title = d.title;
    r.body = d.body;
    r.search_task_id = task.id;
    r.step_index = step_index;
    if (d.published) r.published = parse_iso8601(*d.published);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace groundwork
