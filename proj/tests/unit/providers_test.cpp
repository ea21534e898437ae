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
#include <fstream>
#include <regex>
#include <set>

#include "groundwork/core/error.hpp"
#include "groundwork/providers/fixtures.hpp"
#include "groundwork/providers/llm.hpp"
#include "groundwork/providers/mock.hpp"
#include "groundwork/providers/templates.hpp"
#include "groundwork/providers/tools.hpp"
#include "support/helpers.hpp"

using namespace groundwork;
using namespace groundwork::testing;

namespace {

/// Fails with a transient error `failures` times, then answers.
class FlakyClient : public LlmClient {
 public:
  explicit FlakyClient(int failures) : failures_(failures) {}
  std::string complete(const LlmRequest&) override {
    ++calls;
    if (failures_-- > 0) throw TransientError("503");
    return "{\"ok\": true}";
  }
  int calls = 0;

 private:
  int failures_;
};

/// Reference write-up bundled next to the sources. Shipped prompt text and
/// fixture dimensions are checked against it.
std::string reference_text() { return read_file(source_dir() + "/paper.md"); }

}  // namespace

TEST_CASE("unbound placeholders are rejected before any call") {
  PromptTemplate t{"t", "Hello {{name}} and {{other}}", 1};
  CHECK(t.placeholders() == std::vector<std::string>{"name", "other"});
  FlakyClient client(0);
  CHECK_THROWS_WITH_AS(llm_complete(t, Json{{"name", "x"}}, client), doctest::Contains("other"),
                       Error);
  CHECK(client.calls == 0);
  CHECK(templates::render(t, Json{{"name", "x"}, {"other", 3}}) == "Hello x and 3");
}

TEST_CASE("fixture hit returns the exact fixture text") {
  FixtureSet set;
  const PromptTemplate& tmpl = templates::get(templates::kHedge);
  Json bindings;
  for (const auto& p : tmpl.placeholders()) bindings[p] = "value of " + p;
  set.add_llm(std::string(templates::kHedge), bindings_hash(bindings), "exact text\n");
  FixtureLlmClient client(set);
  CHECK(llm_complete(tmpl, bindings, client) == "exact text\n");
  Json other = bindings;
  other[tmpl.placeholders().front()] = "changed";
  CHECK_THROWS_AS(llm_complete(tmpl, other, client), Error);
}

TEST_CASE("two transient failures then success: one completion, three attempts") {
  FlakyClient client(2);
  RetryPolicy retry;
  std::vector<std::chrono::milliseconds> sleeps;
  retry.sleep = [&](std::chrono::milliseconds d) { sleeps.push_back(d); };
  std::vector<AttemptRecord> attempts;
  PromptTemplate t{"t", "plain", 1};
  CHECK(llm_complete(t, Json::object(), client, retry, &attempts) == "{\"ok\": true}");
  CHECK(client.calls == 3);
  REQUIRE(attempts.size() == 3);
  CHECK_FALSE(attempts[0].ok);
  CHECK_FALSE(attempts[1].ok);
  CHECK(attempts[2].ok);
  // Exponential backoff: base, then base * multiplier.
  REQUIRE(sleeps.size() == 2);
  CHECK(sleeps[1] == sleeps[0] * 2);

  FlakyClient hopeless(5);
  CHECK_THROWS_AS(llm_complete(t, Json::object(), hopeless, retry), Error);
  CHECK(hopeless.calls == 3);
}

TEST_CASE("bindings hash ignores key order") {
  Json a;
  a["x"] = 1;
  a["y"] = "two";
  Json b;
  b["y"] = "two";
  b["x"] = 1;
  CHECK(bindings_hash(a) == bindings_hash(b));
  b["x"] = 2;
  CHECK(bindings_hash(a) != bindings_hash(b));
}

TEST_CASE("shipped templates have no stray placeholders once bound") {
  for (const auto& tmpl : templates::defaults()) {
    Json bindings = Json::object();
    for (const auto& p : tmpl.placeholders()) bindings[p] = "v";
    const std::string out = templates::render(tmpl, bindings);
    CHECK_MESSAGE(out.find("{{") == std::string::npos, tmpl.name);
  }
  CHECK_THROWS_AS(templates::get("nope"), Error);
}

TEST_CASE("system template carries the reference output structure") {
  // Section names of the expected output structure, read from the reference.
  const std::string ref = reference_text();
  const auto start = ref.find("Expected Output Structure");
  REQUIRE(start != std::string::npos);
  const auto end = ref.find("\\end{enumerate}", start);
  const std::string block = ref.substr(start, end - start);
  std::regex item(R"(\\item \\textbf\{([^}(]+?)\s*(\([^)]*\))?\})");
  std::vector<std::string> names;
  for (auto it = std::sregex_iterator(block.begin(), block.end(), item);
       it != std::sregex_iterator(); ++it) {
    names.push_back((*it)[1].str());
  }
  CHECK(names == std::vector<std::string>{"Executive Summary", "Detailed Analysis",
                                          "Insights and Recommendations",
                                          "Confidence Assessment", "Knowledge Boundaries"});
  const std::string task = templates::get(templates::kTask).body;
  std::size_t pos = 0;
  for (const auto& n : names) {
    const auto found = task.find("**" + n, pos);
    CHECK_MESSAGE(found != std::string::npos, n);
    pos = found == std::string::npos ? pos : found;
  }
}

TEST_CASE("fixture set round-trips through disk") {
  TempDir dir;
  FixtureSet set = make_scenario({});
  set.add_llm("hedge", "abc", "text");
  set.save(dir.path());
  const FixtureSet loaded = FixtureSet::load(dir.path());
  CHECK(loaded.search_count() == set.search_count());
  REQUIRE(loaded.checklist_for(ScenarioSpec{}.query) != nullptr);
  CHECK(loaded.checklist_for(ScenarioSpec{}.query)->items.size() == 3);
  REQUIRE(loaded.llm_for("hedge", "abc") != nullptr);
  CHECK(*loaded.llm_for("hedge", "abc") == "text");
  CHECK_THROWS_AS(FixtureSet::load(dir / "missing"), Error);
}

TEST_CASE("mock search: fixture echo, fixture miss") {
  FixtureSet set;
  set.add_search("three docs", {{"https://a.example.org/1", "A", "one", std::nullopt, "ok"},
                                {"https://a.example.org/2", "B", "two", std::nullopt, "ok"},
                                {"https://a.example.org/3", "C", "three", "2025-01-01", "ok"}});
  MockEnvironment env(set);
  SearchTask task;
  task.query_text = "three docs";
  task.id = SearchTask::make_id(task.query_text, std::nullopt);
  const auto hits = search_tool({task}, env, 2, 0, 100);
  REQUIRE(hits.size() == 3);
  CHECK(std::all_of(hits.begin(), hits.end(), [](const RawResult& r) { return r.ok; }));
  CHECK(hits[2].published == parse_iso8601("2025-01-01"));

  SearchTask miss;
  miss.query_text = "unknown";
  miss.id = SearchTask::make_id(miss.query_text, std::nullopt);
  const auto missed = search_tool({miss}, env, 2, 0, 100);
  REQUIRE(missed.size() == 1);
  CHECK_FALSE(missed[0].ok);
  CHECK(missed[0].error_code == "fixture-miss");
}

TEST_CASE("search results do not depend on fanout") {
  const FixtureSet set = make_scenario({.items = 5, .queries_per_item = 1, .docs_per_query = 3});
  MockEnvironment env(set);
  std::vector<SearchTask> tasks;
  for (const auto& fi : set.checklist_for(ScenarioSpec{}.query)->items) {
    SearchTask t;
    t.query_text = fi.queries.front();
    t.id = SearchTask::make_id(t.query_text, fi.item.id);
    tasks.push_back(t);
  }
  REQUIRE(tasks.size() == 5);
  const auto two = search_tool(tasks, env, 2, 3, 500);
  const auto five = search_tool(tasks, env, 5, 3, 500);
  CHECK(two == five);
  CHECK(two.size() == 15);
}

TEST_CASE("mock plan emits one task per open subgoal with stable ids") {
  FixtureSet set = make_scenario({.items = 2});
  MockPolicy policy(set);
  Workspace ws;
  ws.query = ScenarioSpec{}.query;
  ws.char_budget = 16000;
  for (const auto& fi : set.checklist_for(ws.query)->items) {
    ws.active_subgoals.push_back({fi.item.id, fi.item.goal, {"node-" + fi.item.id}});
  }
  AgentState state;
  state.outline.nodes.push_back({"root", "r", std::nullopt, 0, {}, {}, 0, NodeKind::kRoot});
  state.outline.nodes.push_back({"node-item-1", "a", "root", 0, {"item-1"}, {}, 1, NodeKind::kLeaf});
  state.outline.nodes.push_back({"node-item-2", "b", "root", 1, {"item-2"}, {}, 1, NodeKind::kLeaf});
  const PlanResult first = plan_tool(ws.query, ws, state, policy);
  REQUIRE(first.tasks.size() == 2);
  const PlanResult again = plan_tool(ws.query, ws, state, policy);
  CHECK(first.tasks == again.tasks);
  CHECK(first.tasks[0].id == SearchTask::make_id(first.tasks[0].query_text, "item-1"));
  CHECK(first.tasks[0].origin_node == "node-item-1");

  Workspace empty = ws;
  empty.active_subgoals.clear();
  CHECK(plan_tool(ws.query, empty, state, policy).tasks.empty());
}

TEST_CASE("bundled decomposition covers the six reference dimensions") {
  // Dimension names as listed in the worked trajectory of the reference.
  const std::string ref = reference_text();
  std::regex dim(R"(Dimension (\d): ([^}\\]+))");
  std::vector<std::string> names;
  for (auto it = std::sregex_iterator(ref.begin(), ref.end(), dim);
       it != std::sregex_iterator(); ++it) {
    names.push_back((*it)[2].str());
  }
  REQUIRE(names.size() == 6);
  const FixtureSet set = FixtureSet::load(bundled_fixtures());
  MockPolicy policy(set);
  const auto items = policy.decompose(bundled_config().query);
  REQUIRE(items.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK_MESSAGE(items[i].goal.rfind(names[i], 0) == 0, (std::string(names[i]) + " vs " + items[i].goal));
  }
}

TEST_CASE("plan for the bundled query searches every dimension") {
  const FixtureSet set = FixtureSet::load(bundled_fixtures());
  MockPolicy policy(set);
  const std::string query = bundled_config().query;
  Workspace ws;
  ws.query = query;
  ws.char_budget = 16000;
  AgentState state;
  state.outline.nodes.push_back({"root", query, std::nullopt, 0, {}, {}, 0, NodeKind::kRoot});
  const PlanResult plan = plan_tool(query, ws, state, policy);
  REQUIRE(plan.outline.has_value());
  CHECK(plan.outline->leaves().size() == 6);
  CHECK(plan.tasks.size() == 6);
}

TEST_CASE("mock claim categories follow the criteria word table") {
  CHECK(claim_category({"Estimated costs per unit"}) == "cost");
  CHECK(claim_category({"Key risks named"}) == "risk");
  CHECK(claim_category({"Timeline of actions"}) == "temporal");
  CHECK(claim_category({"Market share in percent"}) == "quantitative");
  CHECK(claim_category({"Anything else"}) == "finding");
  CHECK(summary_body("Body text. (source: https://x)") == "Body text.");
}

TEST_CASE("mock policy is a pure function of its inputs") {
  const FixtureSet set = FixtureSet::load(bundled_fixtures());
  MockPolicy a(set);
  MockPolicy b(set);
  NormalizedDoc doc;
  doc.source = "https://x.example.org";
  doc.text = "First sentence here. Second one. Third.";
  CHECK(a.summarize(doc) == b.summarize(doc));
  CHECK(a.summarize(doc) == "First sentence here. Second one. (source: https://x.example.org)");
  CHECK(a.hedge("Prices rose.") == "Available evidence does not confirm that Prices rose.");
}
