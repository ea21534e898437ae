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

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <thread>

#include "groundwork/checklist/checklist.hpp"
#include "groundwork/checklist/critics.hpp"
#include "groundwork/core/error.hpp"
#include "support/helpers.hpp"

using namespace groundwork;
using namespace groundwork::testing;

namespace {

ChecklistItem full_item(std::string id, std::string goal, int priority = 1,
                        std::vector<std::string> deps = {}) {
  ChecklistItem item;
  item.id = std::move(id);
  item.goal = std::move(goal);
  item.inclusions = {"everything relevant"};
  item.acceptance_criteria = {"two sources agree"};
  item.priority = priority;
  item.depends_on = std::move(deps);
  return item;
}

Checklist verified(std::vector<ChecklistItem> items) {
  Checklist c;
  for (auto& i : items) i.status = ItemStatus::kVerified;
  c.items = std::move(items);
  return c;
}

std::pair<Checklist, Outline> generate_from(std::vector<ChecklistItem> items,
                                            const std::string& query = "q") {
  StubPolicy policy;
  policy.on_decompose = [items](std::string_view) { return items; };
  return generate_checklist(query, policy);
}

/// Position of each id in `order`.
std::map<std::string, std::size_t> positions(const std::vector<std::string>& order) {
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  return pos;
}

}  // namespace

TEST_CASE("missing-field rule table") {
  ChecklistItem item = full_item("a", "impact of widget prices");
  CHECK_FALSE(missing_field(item).has_value());
  item.acceptance_criteria.clear();
  CHECK(missing_field(item) == IntentKind::kRefineAcceptance);
  item = full_item("a", "impact of widget prices");
  item.inclusions.clear();
  CHECK(missing_field(item) == IntentKind::kRefineScope);
  item = full_item("a", "prices");
  CHECK(missing_field(item) == IntentKind::kRefineDefinition);
}

TEST_CASE("single fully specified item: one draft item, root plus one node") {
  auto [c0, o0] = generate_from({full_item("only", "effects of rule changes on exporters")},
                                "one clear question");
  REQUIRE(c0.items.size() == 1);
  CHECK(c0.items[0].status == ItemStatus::kDraft);
  CHECK(c0.version == 0);
  REQUIRE(o0.nodes.size() == 2);
  CHECK(o0.root()->title == "one clear question");
  CHECK(o0.nodes[1].bound_items == std::vector<std::string>{"only"});
  CHECK(c0.items[0].bound_nodes == std::vector<std::string>{o0.nodes[1].id});
  CHECK(derive_plan_intents("q", c0, {}).empty());
}

TEST_CASE("item without acceptance criteria needs clarification and yields one intent") {
  ChecklistItem vague = full_item("v", "effects of rule changes on exporters");
  vague.acceptance_criteria.clear();
  auto [c0, o0] = generate_from({full_item("ok", "labour costs across regions"), vague});
  CHECK(c0.find("v")->status == ItemStatus::kNeedsClarification);
  CHECK(c0.find("ok")->status == ItemStatus::kDraft);
  const auto intents = derive_plan_intents("q", c0, {});
  REQUIRE(intents.size() == 1);
  CHECK(intents[0].item_id == "v");
  CHECK(intents[0].kind == IntentKind::kRefineAcceptance);
}

TEST_CASE("two of five underspecified items give two intents") {
  std::vector<ChecklistItem> items;
  for (int i = 0; i < 5; ++i) {
    items.push_back(full_item("i" + std::to_string(i), "widget topic number " + std::to_string(i)));
  }
  items[1].inclusions.clear();
  items[3].acceptance_criteria.clear();
  auto [c0, o0] = generate_from(items);
  const auto intents = derive_plan_intents("q", c0, {});
  REQUIRE(intents.size() == 2);
  CHECK(intents[0].item_id == "i1");
  CHECK(intents[1].item_id == "i3");
}

TEST_CASE("goal without scope gets a refine-scope intent embedding the goal") {
  ChecklistItem item = full_item("s", "analyze impact");
  item.inclusions.clear();
  auto [c0, o0] = generate_from({item});
  const auto intents = derive_plan_intents("q", c0, {});
  REQUIRE(intents.size() == 1);
  CHECK(intents[0].kind == IntentKind::kRefineScope);
  CHECK(intents[0].prompt_text.find("analyze impact") != std::string::npos);
}

TEST_CASE("unparseable decomposition is retried once") {
  int calls = 0;
  StubPolicy policy;
  policy.on_decompose = [&](std::string_view) -> std::vector<ChecklistItem> {
    if (++calls == 1) throw Error(ErrorCode::kUnparseableOutput, "garbage");
    return {full_item("a", "effects of rule changes on exporters")};
  };
  auto [c0, o0] = generate_checklist("q", policy);
  CHECK(calls == 2);
  CHECK(c0.items.size() == 1);

  calls = 0;
  policy.on_decompose = [&](std::string_view) -> std::vector<ChecklistItem> {
    ++calls;
    throw Error(ErrorCode::kUnparseableOutput, "garbage");
  };
  CHECK_THROWS_AS(generate_checklist("q", policy), Error);
  CHECK(calls == 2);
}

TEST_CASE("approve-all yields the input with verified statuses") {
  auto [c0, o0] = generate_from({full_item("a", "costs of compliance for firms", 1),
                                 full_item("b", "timeline of enforcement actions", 2)});
  ApproveAllCritic critic;
  RefineOptions options;
  const Checklist c1 = critic_refine(c0, {}, critic, options);
  CHECK(c1.version == c0.version + 1);
  CHECK(c1.lineage.empty());
  REQUIRE(c1.items.size() == c0.items.size());
  for (std::size_t i = 0; i < c1.items.size(); ++i) {
    ChecklistItem expect = c0.items[i];
    expect.status = ItemStatus::kVerified;
    expect.bound_nodes.clear();
    CHECK(c1.items[i] == expect);
  }
}

TEST_CASE("split replaces the item with two children and lineage back to it") {
  auto [c0, o0] = generate_from({full_item("A", "regional costs and risks", 1),
                                 full_item("B", "timeline of rulings", 2, {"A"})});
  DecisionDocument d;
  d.checklist_version = c0.version;
  Verdict v;
  v.item_id = "A";
  v.kind = VerdictKind::kSplit;
  ItemEdit one;
  one.goal = "regional costs";
  ItemEdit two;
  two.goal = "regional risks";
  v.split_into = {one, two};
  d.verdicts.push_back(v);
  const Checklist c1 = apply_decision(c0, d, {});
  CHECK(c1.find("A") == nullptr);
  REQUIRE(c1.find("A.1") != nullptr);
  REQUIRE(c1.find("A.2") != nullptr);
  CHECK(c1.find("A.1")->goal == "regional costs");
  REQUIRE(c1.lineage.size() == 1);
  CHECK(c1.lineage[0].operation == "split");
  CHECK(c1.lineage[0].parents == std::vector<std::string>{"A"});
  CHECK(c1.lineage[0].children == std::vector<std::string>{"A.1", "A.2"});
  // B's dependency follows the split.
  CHECK(c1.find("B")->depends_on == std::vector<std::string>{"A.1", "A.2"});
}

TEST_CASE("merge and edits conserve every original goal through lineage") {
  auto [c0, o0] = generate_from({full_item("a", "costs of compliance for firms", 1),
                                 full_item("b", "compliance staffing in firms", 2),
                                 full_item("c", "timeline of enforcement actions", 3)});
  DecisionDocument d;
  d.checklist_version = 0;
  Verdict merge;
  merge.item_id = "a";
  merge.kind = VerdictKind::kMerge;
  merge.merge_with = {"b"};
  Verdict edit;
  edit.item_id = "c";
  edit.kind = VerdictKind::kEdit;
  edit.edit.goal = "timeline of enforcement actions (2020–2025 only)";
  d.verdicts = {merge, edit};
  const Checklist c1 = apply_decision(c0, d, {});
  REQUIRE(c1.find("a+b") != nullptr);
  CHECK(c1.find("a+b")->goal == "costs of compliance for firms; compliance staffing in firms");
  CHECK(c1.find("c")->goal == "timeline of enforcement actions (2020–2025 only)");

  std::set<std::string> recoverable;
  for (const auto& i : c1.items) recoverable.insert(i.goal);
  for (const auto& l : c1.lineage) recoverable.insert(l.parent_goals.begin(), l.parent_goals.end());
  for (const auto& i : c0.items) CHECK(recoverable.count(i.goal) == 1);
}

TEST_CASE("decisions against a stale version or unknown items are rejected") {
  auto [c0, o0] = generate_from({full_item("a", "costs of compliance for firms")});
  DecisionDocument stale;
  stale.checklist_version = 7;
  CHECK_THROWS_AS(apply_decision(c0, stale, {}), Error);
  DecisionDocument unknown;
  unknown.verdicts.push_back({"zzz", VerdictKind::kApprove, {}, {}, {}, {}});
  CHECK_THROWS_AS(apply_decision(c0, unknown, {}), Error);
}

TEST_CASE("dependency wins over critic priority") {
  // B depends on A; the critic ranks B first.
  auto [c0, o0] = generate_from({full_item("A", "costs of compliance for firms", 2),
                                 full_item("B", "timeline of enforcement actions", 1, {"A"})});
  DecisionDocument d;
  d.checklist_version = 0;
  Verdict va;
  va.item_id = "A";
  va.edit.priority = 2;
  Verdict vb;
  vb.item_id = "B";
  vb.edit.priority = 1;
  d.verdicts = {va, vb};
  const Checklist c1 = apply_decision(c0, d, {});
  const auto order = dependency_order(c1.items);
  CHECK(order == std::vector<std::string>{"A", "B"});
  CHECK(c1.find("A")->priority < c1.find("B")->priority);
}

TEST_CASE("dependency_order rejects cycles and unknown ids") {
  CHECK_THROWS_AS(dependency_order({full_item("a", "x y z", 1, {"b"}), full_item("b", "x y z", 2, {"a"})}),
                  Error);
  CHECK_THROWS_AS(dependency_order({full_item("a", "x y z", 1, {"nope"})}), Error);
}

TEST_CASE("critic_refine: rounds run out, timeouts fall back or abort") {
  ChecklistItem vague = full_item("v", "effects of rule changes on exporters");
  vague.acceptance_criteria.clear();
  auto [c0, o0] = generate_from({vague});
  const auto intents = derive_plan_intents("q", c0, {});

  // A critic that never supplies criteria keeps the item unverified.
  FunctionCritic stubborn([](const ReviewDocument& r) {
    DecisionDocument d;
    d.checklist_version = r.checklist_version;
    Verdict v;
    v.item_id = "v";
    v.kind = VerdictKind::kEdit;
    v.edit.inclusions = std::vector<std::string>{"more"};
    d.verdicts.push_back(v);
    return d;
  });
  RefineOptions options;
  options.max_rounds = 2;
  int rounds = 0;
  options.on_round = [&](const ReviewDocument&, const DecisionDocument&) { ++rounds; };
  CHECK_THROWS_WITH_AS(critic_refine(c0, intents, stubborn, options),
                       doctest::Contains("max-rounds-exceeded"), Error);
  CHECK(rounds == 2);

  FunctionCritic slow([](const ReviewDocument&) -> DecisionDocument {
    throw Error(ErrorCode::kCriticTimeout, "nobody answered");
  });
  ApproveAllCritic fallback;
  RefineOptions with_fallback;
  with_fallback.fallback = &fallback;
  const Checklist c1 = critic_refine(c0, intents, slow, with_fallback);
  CHECK(c1.find("v")->status == ItemStatus::kVerified);
  CHECK(c1.find("v")->acceptance_criteria ==
        std::vector<std::string>{"At least one audited source addresses: " + vague.goal});
  REQUIRE_FALSE(c1.warnings.empty());

  RefineOptions abort_on_timeout = with_fallback;
  abort_on_timeout.on_timeout = TimeoutFallback::kAbort;
  CHECK_THROWS_AS(critic_refine(c0, intents, slow, abort_on_timeout), Error);
}

TEST_CASE("mock model critic clarifies flagged items in one round") {
  ChecklistItem vague = full_item("v", "exporters");
  vague.acceptance_criteria.clear();
  vague.inclusions.clear();
  auto [c0, o0] = generate_from({vague, full_item("ok", "labour costs across regions")});
  const FixtureSet empty;
  MockPolicy policy(empty);
  PolicyCritic critic(policy);
  RefineOptions options;
  options.query = "q";
  const Checklist c1 = critic_refine(c0, derive_plan_intents("q", c0, {}), critic, options);
  CHECK(c1.version == 1);
  CHECK(c1.find("v")->status == ItemStatus::kVerified);
  CHECK(c1.find("v")->goal == "exporters (as it bears on: q)");
}

TEST_CASE("compile_outline: one verified item") {
  const Outline o = compile_outline(verified({full_item("a", "costs of compliance for firms")}), 3);
  REQUIRE(o.nodes.size() == 2);
  CHECK(o.nodes[1].bound_items == std::vector<std::string>{"a"});
  CHECK(o.nodes[1].parent == o.root()->id);
}

TEST_CASE("compile_outline: six items in two dependency clusters") {
  // Cluster X = {x1, x2, x3} (priorities 2, 4, 6), cluster Y = {y1, y2, y3}
  // (priorities 1, 3, 5). Y holds the best priority so it comes first.
  Checklist c = verified({full_item("x1", "goal x one here", 2),
                          full_item("x2", "goal x two here", 4, {"x1"}),
                          full_item("x3", "goal x three here", 6, {"x1"}),
                          full_item("y1", "goal y one here", 1),
                          full_item("y2", "goal y two here", 3, {"y1"}),
                          full_item("y3", "goal y three here", 5, {"y2"})});
  const Outline o = compile_outline(c, 3, "root");
  const auto sections = o.children(o.root()->id);
  REQUIRE(sections.size() == 2);
  CHECK(sections[0]->kind == NodeKind::kSection);
  CHECK(sections[1]->kind == NodeKind::kSection);
  auto items_under = [&](const OutlineNode* s) {
    std::set<std::string> ids;
    for (const auto* leaf : o.children(s->id)) {
      ids.insert(leaf->bound_items.begin(), leaf->bound_items.end());
    }
    return ids;
  };
  CHECK(items_under(sections[0]) == std::set<std::string>{"y1", "y2", "y3"});
  CHECK(items_under(sections[1]) == std::set<std::string>{"x1", "x2", "x3"});
  CHECK(o.children(sections[0]->id).size() == 3);
  validate_outline(o, 3);
}

TEST_CASE("compile_outline: waived items stay in the checklist but bind nowhere") {
  Checklist c = verified({full_item("a", "costs of compliance for firms"),
                          full_item("w", "timeline of enforcement actions", 2)});
  c.find("w")->status = ItemStatus::kWaived;
  const Outline o = compile_outline(c, 3);
  for (const auto& n : o.nodes) {
    CHECK(std::find(n.bound_items.begin(), n.bound_items.end(), "w") == n.bound_items.end());
  }
  bind_items(c, o);
  CHECK(c.find("w")->bound_nodes.empty());
  CHECK(c.find("a")->bound_nodes.size() == 1);
}

TEST_CASE("compile_outline: shallow depth flattens clusters with a warning") {
  Checklist c = verified({full_item("a", "goal a one here", 1),
                          full_item("b", "goal b two here", 2, {"a"})});
  std::vector<std::string> warnings;
  const Outline o = compile_outline(c, 1, "root", &warnings);
  CHECK(o.children(o.root()->id).size() == 2);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].rfind("depth-overflow", 0) == 0);
  Checklist draft = c;
  draft.items[0].status = ItemStatus::kDraft;
  CHECK_THROWS_AS(compile_outline(draft, 3), Error);
}

TEST_CASE("compile_outline on random verified checklists: complete bindings, dependency order") {
  std::mt19937 rng(42);
  for (int round = 0; round < 25; ++round) {
    const int n = 1 + static_cast<int>(rng() % 9);
    std::vector<ChecklistItem> items;
    for (int i = 0; i < n; ++i) {
      std::vector<std::string> deps;
      for (int j = 0; j < i; ++j) {
        if (rng() % 4 == 0) deps.push_back("i" + std::to_string(j));
      }
      items.push_back(full_item("i" + std::to_string(i), "goal number " + std::to_string(i) + " x",
                                static_cast<int>(rng() % 20), deps));
    }
    const Checklist c = verified(items);
    const Outline o = compile_outline(c, 3);
    std::map<std::string, std::string> node_of;
    for (const auto& id : o.dfs_order()) {
      for (const auto& item : o.find(id)->bound_items) node_of[item] = id;
    }
    CHECK(node_of.size() == items.size());
    const auto dfs = positions(o.dfs_order());
    for (const auto& item : items) {
      for (const auto& d : item.depends_on) {
        CHECK(dfs.at(node_of.at(d)) < dfs.at(node_of.at(item.id)));
      }
    }
  }
}

TEST_CASE("review channel: decisions are idempotent by version") {
  ReviewChannel channel;
  int opened = 0;
  channel.set_on_open([&](const ReviewDocument&) { ++opened; });
  HumanCritic critic(channel, std::chrono::seconds(5));
  ReviewDocument doc;
  doc.checklist_version = 3;
  DecisionDocument answer;
  std::thread reviewer([&] {
    while (!channel.pending()) std::this_thread::sleep_for(std::chrono::milliseconds(1));
    DecisionDocument d;
    d.checklist_version = 2;
    CHECK(channel.post(d) == PostResult::kVersionMismatch);
    d.checklist_version = 3;
    d.approve_all = true;
    CHECK(channel.post(d) == PostResult::kAccepted);
    CHECK(channel.post(d) == PostResult::kDuplicate);
  });
  answer = critic.review(doc);
  reviewer.join();
  CHECK(opened == 1);
  CHECK(answer.approve_all);
  CHECK(channel.last_decided_version() == 3);

  HumanCritic impatient(channel, std::chrono::milliseconds(10));
  doc.checklist_version = 4;
  CHECK_THROWS_WITH_AS(impatient.review(doc), doctest::Contains("critic-timeout"), Error);
  channel.cancel();
  CHECK_THROWS_WITH_AS(impatient.review(doc), doctest::Contains("aborted"), Error);
}
