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

// Shared scaffolding for the unit tests and the acceptance binary.

#pragma once

#include <cstdlib>
#include <functional>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "groundwork/agent/config.hpp"
#include "groundwork/agent/engine.hpp"
#include "groundwork/checklist/critics.hpp"
#include "groundwork/core/error.hpp"
#include "groundwork/core/json.hpp"
#include "groundwork/providers/fixtures.hpp"
#include "groundwork/providers/mock.hpp"

namespace groundwork::testing {

inline std::string source_dir() { return GROUNDWORK_SOURCE_DIR; }
inline std::string bundled_fixtures() { return source_dir() + "/fixtures/tiktok"; }
inline RunConfig bundled_config() { return load_config(bundled_fixtures() + "/config.json"); }

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "groundwork-XXXXXX").string();
    if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::string& path() const { return path_; }
  std::string operator/(const std::string& name) const { return path_ + "/" + name; }

 private:
  std::string path_;
};

/// Runs an episode with the mock providers for `config.fixtures_dir`. The
/// critic follows config.critic_mode, with human mapped to approve-all.
inline RunResult run_mock(const RunConfig& config, const std::string& dir,
                          const RunHooks& hooks = {}, bool resume = false) {
  const FixtureSet fixtures = FixtureSet::load(config.fixtures_dir);
  MockPolicy policy(fixtures);
  MockEnvironment environment(fixtures);
  ApproveAllCritic approve;
  PolicyCritic model(policy);
  CriticPort& critic =
      config.critic_mode == CriticMode::kLlm ? static_cast<CriticPort&>(model) : approve;
  return run_episode(config, Providers{policy, environment, critic, &model}, dir, hooks, resume);
}

inline std::string slurp(const std::string& path) { return read_file(path); }

/// Policy whose methods are std::functions; unset ones throw.
struct StubPolicy : PolicyPort {
  std::function<std::vector<ChecklistItem>(std::string_view)> on_decompose;
  std::function<std::string(const NormalizedDoc&)> on_summarize;
  std::function<DecisionDocument(const ReviewDocument&)> on_critique;

  std::vector<ChecklistItem> decompose(std::string_view q) override {
    if (!on_decompose) unset("decompose");
    return on_decompose(q);
  }
  Decision decide(const Workspace&, const AgentState&) override { unset("decide"); }
  PlanResult plan(std::string_view, const Workspace&, const AgentState&) override {
    unset("plan");
  }
  std::string summarize(const NormalizedDoc& d) override {
    if (!on_summarize) unset("summarize");
    return on_summarize(d);
  }
  SectionDraft draft_section(const OutlineNode&, const std::vector<ChecklistItem>&,
                             const std::vector<EvidenceUnit>&) override {
    unset("draft_section");
  }
  std::string hedge(std::string_view t) override { return "Unconfirmed: " + std::string(t); }
  DecisionDocument critique(const ReviewDocument& r) override {
    if (!on_critique) unset("critique");
    return on_critique(r);
  }

 private:
  [[noreturn]] static void unset(const char* what) {
    throw Error(ErrorCode::kPrecondition, std::string("stub has no ") + what);
  }
};

/// A synthetic scenario: `items` checklist items, each with its own queries,
/// and `docs_per_query` distinct documents per query that mention the item
/// goal. Deterministic in `seed`.
struct ScenarioSpec {
  std::string query = "How do synthetic widgets affect regional markets";
  int items = 3;
  int queries_per_item = 2;
  int docs_per_query = 1;
  unsigned seed = 1;
  /// Adds a document with no support for its section (numbers only) so the
  /// audit has something to flag.
  bool add_weak_docs = false;
};

inline const std::vector<std::string>& scenario_topics() {
  static const std::vector<std::string> kTopics = {
      "pricing pressure on distributors", "supply chain resilience of assemblers",
      "regulatory exposure in coastal provinces", "labour market effects in factories",
      "consumer adoption among households",      "environmental footprint of production",
      "financing costs for small suppliers",     "export competitiveness against rivals"};
  return kTopics;
}

inline FixtureSet make_scenario(const ScenarioSpec& spec) {
  std::mt19937 rng(spec.seed);
  FixtureSet set;
  ChecklistFixture checklist;
  checklist.query = spec.query;
  const auto& topics = scenario_topics();
  for (int i = 0; i < spec.items; ++i) {
    const std::string topic = topics[static_cast<std::size_t>(i) % topics.size()];
    FixtureItem fi;
    fi.item.id = "item-" + std::to_string(i + 1);
    fi.item.goal = "Assess " + topic + " for synthetic widgets";
    fi.item.inclusions = {"Widget makers"};
    fi.item.acceptance_criteria = {"Quantified " + topic + " with a reported rate"};
    fi.item.priority = i + 1;
    for (int q = 0; q < spec.queries_per_item; ++q) {
      const std::string query = "widgets " + topic + " q" + std::to_string(q + 1);
      fi.queries.push_back(query);
      std::vector<FixtureDoc> docs;
      for (int d = 0; d < spec.docs_per_query; ++d) {
        const int pct = static_cast<int>(rng() % 90) + 5;
        FixtureDoc doc;
        doc.url = "https://s" + std::to_string(i) + ".example.org/" + std::to_string(q) + "/" +
                  std::to_string(d);
        doc.title = "Widget brief " + std::to_string(i) + "." + std::to_string(q) + "." +
                    std::to_string(d);
        doc.body = "Analysts measured " + std::to_string(pct) + " percent for " + topic +
                   " in batch " + std::to_string(q * 100 + d) + ". This concerns " + topic +
                   " for synthetic widgets.";
        doc.published = "2025-0" + std::to_string(1 + (rng() % 9)) + "-1" +
                        std::to_string(rng() % 9);
        docs.push_back(std::move(doc));
      }
      if (spec.add_weak_docs && q == 0) {
        FixtureDoc weak;
        weak.url = "https://weak.example.com/" + std::to_string(i);
        weak.title = "Assorted figures " + std::to_string(i);
        weak.body = "Widgets " + topic + " tables: 17, 23 and 41. Appendix " +
                    std::to_string(i) + " lists unrelated mineral prices from 1998.";
        docs.push_back(std::move(weak));
      }
      set.add_search(query, std::move(docs));
    }
    checklist.items.push_back(std::move(fi));
  }
  set.add_checklist(std::move(checklist));
  return set;
}

/// Saves a scenario and returns a config pointing at it.
inline RunConfig scenario_config(const FixtureSet& set, const std::string& query,
                                 const std::string& fixtures_dir) {
  set.save(fixtures_dir);
  RunConfig config;
  config.query = query;
  config.fixtures_dir = fixtures_dir;
  config.critic_mode = CriticMode::kNone;
  return config;
}

}  // namespace groundwork::testing
