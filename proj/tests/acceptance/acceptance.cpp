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

// Acceptance runner: one PASS/FAIL line per primary criterion. Exits
// non-zero when any criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <csignal>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "groundwork/agent/trace.hpp"
#include "groundwork/checklist/checklist.hpp"
#include "groundwork/core/hash.hpp"
#include "groundwork/core/text.hpp"
#include "groundwork/evidence/audit.hpp"
#include "groundwork/evidence/normalize.hpp"
#include "groundwork/evidence/store.hpp"
#include "groundwork/report/report.hpp"
#include "support/helpers.hpp"

using namespace groundwork;
using namespace groundwork::testing;
namespace fs = std::filesystem;

namespace {

/// Thrown by criteria to report a failed check with its reason.
struct Failure {
  std::string why;
};

void expect(bool ok, const std::string& why) {
  if (!ok) throw Failure{why};
}

struct Criterion {
  std::string name;
  double limit_seconds;
  std::function<std::string()> check;  // returns a short detail on success
};

RunConfig bundled() { return bundled_config(); }

std::set<std::string> store_ids(const std::string& run_dir) {
  EvidenceStore store(RunPaths{run_dir}.store());
  return store.ids();
}

// 1 -------------------------------------------------------------------------

std::string determinism() {
  TempDir dir;
  run_mock(bundled(), dir / "a");
  run_mock(bundled(), dir / "b");
  for (const std::string file : {"trace.jsonl", "report.md", "report.json", "audit.json"}) {
    expect(slurp(dir / ("a/" + file)) == slurp(dir / ("b/" + file)), file + " differs");
  }
  return "trace and report byte-identical";
}

// 2 -------------------------------------------------------------------------

std::string ingestion_oracle() {
  std::mt19937 rng(20260101);
  const std::vector<std::string> base = {
      "Widget prices rose 12 percent in 2024.",  "Regulators opened three inquiries.",
      "Exports fell by a fifth after the ban.",  "Creators lost sponsorship income.",
      "Two courts issued conflicting rulings.",  "Downloads moved to rival platforms.",
      "Ad revenue recovered within six months.", "Survey: 41 percent changed habits.",
      "Costs of compliance reached 40 million.", "Data localisation was proposed twice."};
  // Surface variants that must normalize back to the same text.
  const std::vector<std::function<std::string(const std::string&)>> variants = {
      [](const std::string& s) { return s; },
      [](const std::string& s) { return "<p>" + s + "</p>"; },
      [](const std::string& s) { return "  \n" + s + "\t "; },
      [](const std::string& s) {
        std::string out;
        for (char c : s) out += c == ' ' ? std::string("  ") : std::string(1, c);
        return out;
      },
      [](const std::string& s) { return "<div><!-- ad -->" + s + "<script>x()</script></div>"; },
  };
  auto policy_stub = StubPolicy{};
  policy_stub.on_summarize = [](const NormalizedDoc& d) { return d.text; };

  auto ingest = [&](const std::vector<RawResult>& batch) {
    EvidenceStore store;
    const auto n = normalize(batch);
    store.persist(structure(n.docs, policy_stub));
    return std::make_pair(store.size(), store.ids());
  };

  int total_docs = 0;
  for (int b = 0; b < 50; ++b) {
    std::vector<RawResult> batch;
    std::set<std::string> oracle;
    const int n = 1 + static_cast<int>(rng() % 20);
    for (int i = 0; i < n; ++i) {
      RawResult r;
      r.source = "https://s" + std::to_string(rng() % 5) + ".example.org/" +
                 std::to_string(i) + "?utm_source=feed";
      r.title = "doc " + std::to_string(i);
      r.search_task_id = "task-" + std::to_string(b);
      const int kind = static_cast<int>(rng() % 10);
      if (kind == 0) {
        r.ok = false;
        r.error_code = "http-404";
      } else if (kind == 1) {
        r.body = "<div> </div>";
      } else {
        const std::string& text = base[rng() % base.size()];
        r.body = variants[rng() % variants.size()](text);
        oracle.insert(evidence_id(text));
      }
      batch.push_back(std::move(r));
    }
    total_docs += n;
    const auto [size, ids] = ingest(batch);
    expect(size == oracle.size(), "batch " + std::to_string(b) + ": cardinality " +
                                      std::to_string(size) + " vs oracle " +
                                      std::to_string(oracle.size()));
    expect(ids == oracle, "batch " + std::to_string(b) + ": id set differs from oracle");
    for (int p = 0; p < 3; ++p) {
      std::shuffle(batch.begin(), batch.end(), rng);
      expect(ingest(batch).second == ids,
             "batch " + std::to_string(b) + ": permutation changed the id set");
    }
  }
  return "50 batches, " + std::to_string(total_docs) + " docs, 3 permutations each";
}

// 3 -------------------------------------------------------------------------

/// Weighted-sum score from the definitions, written independently of the
/// library's ranking code.
double oracle_score(const EvidenceUnit& u, const std::vector<EvidenceUnit>& all,
                    const std::set<std::string>& context, const RankOptions& o) {
  auto terms = [](const EvidenceUnit& x) { return text::term_set(x.title + " " + x.excerpt); };
  const auto mine = terms(u);
  std::size_t hits = 0;
  for (const auto& t : context) hits += mine.count(t);
  const double relevance =
      context.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(context.size());
  const double quality = std::clamp(u.confidence, 0.0, 1.0);
  const double age_days =
      std::max<double>(0.0, static_cast<double>(o.now - u.timestamp)) / 86400.0;
  const double timeliness = std::pow(0.5, age_days / o.half_life_days);
  double consistency = 0.0;
  if (all.size() > 1) {
    std::size_t agree = 0;
    for (const auto& other : all) {
      if (other.id == u.id || other.source == u.source) continue;
      const auto theirs = terms(other);
      std::size_t inter = 0;
      for (const auto& t : mine) inter += theirs.count(t);
      const std::size_t uni = mine.size() + theirs.size() - inter;
      const double j = uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
      if (j >= o.agreement_threshold) ++agree;
    }
    consistency = static_cast<double>(agree) / static_cast<double>(all.size() - 1);
  }
  const auto& w = o.weights;
  return w.relevance * relevance + w.quality * quality + w.timeliness * timeliness +
         w.consistency * consistency;
}

std::string rank_oracle() {
  std::mt19937 rng(777);
  const std::vector<std::string> vocab = {"tariff", "widget", "export", "price",  "court",
                                          "ruling", "ban",    "creator", "income", "survey",
                                          "market", "share",  "vpn",    "store",  "data"};
  std::size_t units_total = 0;
  for (int s = 0; s < 100; ++s) {
    RankOptions opts;
    opts.now = 1767225600;
    std::array<double, 4> w{};
    for (auto& x : w) x = static_cast<double>(rng() % 100 + 1);
    const double sum = w[0] + w[1] + w[2] + w[3];
    opts.weights = {w[0] / sum, w[1] / sum, w[2] / sum, 0.0};
    opts.weights.consistency = 1.0 - opts.weights.relevance - opts.weights.quality -
                               opts.weights.timeliness;
    const int n = 1 + static_cast<int>(rng() % 100);
    std::vector<int> labels(static_cast<std::size_t>(n));
    std::iota(labels.begin(), labels.end(), 0);
    std::shuffle(labels.begin(), labels.end(), rng);
    std::vector<EvidenceUnit> cands;
    for (int i = 0; i < n; ++i) {
      EvidenceUnit u;
      char id[16];
      std::snprintf(id, sizeof id, "ev-%03d", labels[static_cast<std::size_t>(i)]);
      u.id = id;
      const int words = 1 + static_cast<int>(rng() % 4);
      for (int k = 0; k < words; ++k) u.excerpt += vocab[rng() % vocab.size()] + " ";
      u.source = "https://s" + std::to_string(rng() % 6) + ".example.org";
      u.confidence = static_cast<double>(rng() % 5) / 4.0;  // ties are common
      u.timestamp = opts.now - static_cast<Timestamp>(rng() % 4) * 90 * 86400;
      cands.push_back(std::move(u));
    }
    std::string ctx;
    for (int k = 0; k < 3; ++k) ctx += vocab[rng() % vocab.size()] + " ";
    const auto context = text::term_set(ctx);

    std::vector<std::pair<double, std::string>> expected;
    for (const auto& u : cands) expected.emplace_back(oracle_score(u, cands, context, opts), u.id);
    std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    const auto ranked = rank_critic(cands, ctx, opts);
    expect(ranked.size() == expected.size(), "set " + std::to_string(s) + ": size differs");
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      expect(ranked[i].unit.id == expected[i].second,
             "set " + std::to_string(s) + ": position " + std::to_string(i) + " is " +
                 ranked[i].unit.id + ", oracle " + expected[i].second);
    }
    units_total += cands.size();
  }
  return "100 sets, " + std::to_string(units_total) + " units";
}

// 4 -------------------------------------------------------------------------

std::string workspace_boundedness() {
  TempDir dir;
  ScenarioSpec spec;
  spec.items = 8;
  spec.queries_per_item = 8;
  spec.docs_per_query = 2;
  const FixtureSet set = make_scenario(spec);
  RunConfig config = scenario_config(set, spec.query, dir / "fixtures");
  config.max_steps = 50;
  config.workspace_budget = 3000;
  config.min_evidence_per_leaf = 1000;  // unsatisfiable: the run goes to the horizon
  std::size_t largest = 0;
  int seen = 0;
  std::string violation;
  RunHooks hooks;
  hooks.on_workspace = [&](const Workspace& ws, int step) {
    ++seen;
    largest = std::max(largest, ws.size());
    if (ws.size() > config.workspace_budget && violation.empty()) {
      violation = "step " + std::to_string(step) + ": workspace " + std::to_string(ws.size());
    }
  };
  const RunResult r = run_mock(config, dir / "run", hooks);
  expect(violation.empty(), violation);
  expect(r.stop.reason == StopReason::kHorizonReached, "run did not reach the horizon");
  expect(seen >= 50, "only " + std::to_string(seen) + " workspaces observed");
  const auto history = fs::file_size(RunPaths{r.run_dir}.trace());
  expect(history > 10 * config.workspace_budget,
         "history " + std::to_string(history) + " bytes is not above 10x budget");
  return std::to_string(seen) + " workspaces, max " + std::to_string(largest) + "/" +
         std::to_string(config.workspace_budget) + " bytes, history " +
         std::to_string(history) + " bytes";
}

// 5 -------------------------------------------------------------------------

std::string checklist_gate() {
  std::mt19937 rng(4242);
  int items_total = 0;
  for (int round = 0; round < 25; ++round) {
    const int n = 1 + static_cast<int>(rng() % 14);
    Checklist c;
    std::vector<int> prios(static_cast<std::size_t>(n));
    std::iota(prios.begin(), prios.end(), 1);
    std::shuffle(prios.begin(), prios.end(), rng);
    for (int i = 0; i < n; ++i) {
      ChecklistItem item;
      item.id = "item-" + std::to_string(i);
      item.goal = "Research goal number " + std::to_string(i);
      item.acceptance_criteria = {"criterion"};
      item.priority = prios[static_cast<std::size_t>(i)];
      item.status = rng() % 8 == 0 ? ItemStatus::kWaived : ItemStatus::kVerified;
      for (int j = 0; j < i; ++j) {
        if (rng() % 5 == 0) item.depends_on.push_back("item-" + std::to_string(j));
      }
      c.items.push_back(std::move(item));
    }
    const Outline o = compile_outline(c, 3, "root");
    validate_outline(o, 3);
    std::map<std::string, std::vector<std::string>> nodes_of;
    for (const auto& node : o.nodes) {
      for (const auto& id : node.bound_items) nodes_of[id].push_back(node.id);
    }
    std::map<std::string, std::size_t> pos;
    const auto order = o.dfs_order();
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    for (const auto& item : c.items) {
      const auto& bound = nodes_of[item.id];
      if (item.status == ItemStatus::kWaived) {
        expect(bound.empty(), "waived " + item.id + " is bound");
        continue;
      }
      ++items_total;
      expect(bound.size() == 1, "round " + std::to_string(round) + ": " + item.id +
                                    " bound to " + std::to_string(bound.size()) + " nodes");
      for (const auto& d : item.depends_on) {
        if (c.find(d)->status == ItemStatus::kWaived) continue;
        expect(pos.at(nodes_of[d].front()) < pos.at(bound.front()),
               "round " + std::to_string(round) + ": " + item.id + " precedes its dependency " +
                   d);
      }
    }
  }
  return "25 checklists, " + std::to_string(items_total) + " verified items bound";
}

// 6 -------------------------------------------------------------------------

struct SoundnessCounts {
  int claims = 0;
  int cited = 0;
  int hedged = 0;
};

void check_citations(const std::string& run_dir, SoundnessCounts& counts) {
  const RunPaths paths{run_dir};
  const Report report = parse_report(slurp(paths.report_structured()));
  const AuditBundle audit = Json::parse(slurp(paths.audit())).get<AuditBundle>();
  EvidenceStore store(paths.store());
  const auto snapshot = store.snapshot_ids(store.current_snapshot());
  std::map<int, const CitationEntry*> by_number;
  for (const auto& c : report.citations) {
    expect(snapshot.count(c.evidence_id) == 1,
           run_dir + ": citation " + c.evidence_id + " not in the final snapshot");
    by_number[c.number] = &c;
  }
  for (const auto& s : report.sections) {
    for (const auto& claim : s.claims) {
      ++counts.claims;
      const AuditEntry* entry = audit.find(claim.id);
      expect(entry != nullptr, claim.id + " has no audit entry");
      if (claim.hedged) {
        ++counts.hedged;
        continue;
      }
      expect(!entry->unsupported, claim.id + " is unsupported but not hedged");
      expect(!claim.citations.empty(), claim.id + " has neither citation nor hedge");
      for (int n : claim.citations) {
        expect(by_number.count(n) == 1, claim.id + " cites missing [" + std::to_string(n) + "]");
        expect(by_number[n]->evidence_id == *entry->selected,
               claim.id + " cites evidence other than the audited selection");
      }
      ++counts.cited;
    }
  }
  const LintResult lint = lint_markdown(slurp(paths.report_markdown()));
  expect(lint.ok, run_dir + ": " + (lint.problems.empty() ? "" : lint.problems.front()));
  expect(lint.claims == lint.cited + lint.hedged, "lint counts disagree");
}

std::string citation_soundness() {
  TempDir dir;
  SoundnessCounts counts;
  check_citations(run_mock(bundled(), dir / "bundled").run_dir, counts);

  ScenarioSpec weak;
  weak.items = 4;
  weak.add_weak_docs = true;
  weak.seed = 9;
  RunConfig c2 = scenario_config(make_scenario(weak), weak.query, dir / "weak-fixtures");
  c2.min_evidence_per_leaf = 3;
  check_citations(run_mock(c2, dir / "weak").run_dir, counts);

  ScenarioSpec strict = weak;
  strict.seed = 10;
  strict.items = 5;
  RunConfig c3 = scenario_config(make_scenario(strict), strict.query, dir / "strict-fixtures");
  c3.audit_threshold = 0.75;  // strict enough that some claims get hedged
  c3.min_evidence_per_leaf = 3;
  check_citations(run_mock(c3, dir / "strict").run_dir, counts);
  expect(counts.claims > 0, "no claims were produced");
  return "3 runs, " + std::to_string(counts.claims) + " claims: " +
         std::to_string(counts.cited) + " cited, " + std::to_string(counts.hedged) + " hedged";
}

// 7 -------------------------------------------------------------------------

std::string stop_signal() {
  TempDir dir;
  const RunResult full = run_mock(bundled(), dir / "full");
  expect(full.stop.reason == StopReason::kAllGoalsSatisfied,
         "bundled run stopped with " + std::string(to_string(full.stop.reason)));
  const int stop_step = full.steps - 1;
  expect(stop_step == 7, "stop fired at step " + std::to_string(stop_step));

  FixtureSet set = FixtureSet::load(bundled_fixtures());
  ChecklistFixture checklist = *set.checklist_for(bundled().query);
  bool removed = false;
  for (auto& fi : checklist.items) {
    auto it = std::find(fi.queries.begin(), fi.queries.end(), "app store removal enforcement vpn");
    if (it != fi.queries.end()) {
      fi.queries.erase(it);
      removed = true;
    }
  }
  expect(removed, "fixture query to remove not found");
  set.add_checklist(checklist);
  set.save(dir / "fixtures");
  RunConfig config = bundled();
  config.fixtures_dir = dir / "fixtures";
  const RunResult cut = run_mock(config, dir / "cut");
  expect(cut.stop.reason == StopReason::kHorizonReached,
         "reduced run stopped with " + std::string(to_string(cut.stop.reason)));
  expect(cut.steps - 1 == config.max_steps, "reduced run stopped at step " +
                                                std::to_string(cut.steps - 1));
  return "stop at step 7; without one fixture: horizon at step " +
         std::to_string(config.max_steps);
}

// 8 -------------------------------------------------------------------------

std::string ablation() {
  TempDir dir;
  struct Shape {
    bool vcm;
    bool eam;
  };
  std::string detail;
  for (const Shape s : {Shape{false, false}, Shape{true, false}, Shape{false, true},
                        Shape{true, true}}) {
    RunConfig config = bundled();
    config.vcm_enabled = s.vcm;
    config.eam_enabled = s.eam;
    const std::string name = std::string(s.vcm ? "vcm" : "novcm") + "-" + (s.eam ? "eam" : "noeam");
    const RunResult r = run_mock(config, dir / name);
    const RunPaths paths{r.run_dir};
    int versions = 0;
    if (fs::exists(paths.checklist_dir())) {
      for (const auto& e : fs::directory_iterator(paths.checklist_dir())) {
        const auto f = e.path().filename().string();
        versions += f.size() > 1 && f[0] == 'v' && std::isdigit(static_cast<unsigned char>(f[1]));
      }
    }
    const bool audit = fs::exists(paths.audit());
    expect((versions > 0) == s.vcm, name + ": checklist versions present = " +
                                        std::to_string(versions));
    expect(audit == s.eam, name + ": audit bundle presence is wrong");
    expect(fs::exists(paths.report_markdown()), name + ": no report");
    if (!detail.empty()) detail += ", ";
    detail += name + " (" + std::to_string(versions) + " versions, " +
              (audit ? "audit" : "no audit") + ")";
  }
  return detail;
}

// 9 -------------------------------------------------------------------------

std::string crash_resume() {
  TempDir dir;
  int events = 0;
  RunHooks count;
  count.on_event = [&](std::string_view, int) { ++events; };
  const RunResult whole = run_mock(bundled(), dir / "whole", count);
  const auto reference = store_ids(whole.run_dir);

  std::mt19937 rng(99);
  std::string detail;
  for (int trial = 0; trial < 3; ++trial) {
    const int kill_at = static_cast<int>(rng() % static_cast<unsigned>(events));
    const std::string run_dir = dir / ("crash-" + std::to_string(trial));
    std::cout.flush();
    const pid_t pid = fork();
    if (pid == 0) {
      int seen = 0;
      RunHooks hooks;
      hooks.on_event = [&](std::string_view, int) {
        if (seen++ == kill_at) ::kill(::getpid(), SIGKILL);
      };
      try {
        run_mock(bundled(), run_dir, hooks);
      } catch (...) {
      }
      ::_exit(0);
    }
    expect(pid > 0, "fork failed");
    int status = 0;
    ::waitpid(pid, &status, 0);
    expect(WIFSIGNALED(status) && WTERMSIG(status) == SIGKILL,
           "child was not killed at event " + std::to_string(kill_at));
    const RunResult resumed = run_mock(bundled(), run_dir, {}, true);
    expect(store_ids(run_dir) == reference,
           "store id-set differs after a kill at event " + std::to_string(kill_at));
    expect(resumed.final_state_id == whole.final_state_id,
           "final state differs after a kill at event " + std::to_string(kill_at));
    if (!detail.empty()) detail += ", ";
    detail += std::to_string(kill_at);
  }
  return "killed at events " + detail + " of " + std::to_string(events) + "; " +
         std::to_string(reference.size()) + " ids match";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"determinism", 30, determinism},
      {"ingestion-oracle", 10, ingestion_oracle},
      {"rank-oracle", 10, rank_oracle},
      {"workspace-boundedness", 30, workspace_boundedness},
      {"checklist-gate", 5, checklist_gate},
      {"citation-soundness", 60, citation_soundness},
      {"stop-signal", 15, stop_signal},
      {"ablation-structure", 60, ablation},
      {"crash-resume", 60, crash_resume},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.check();
    } catch (const Failure& f) {
      ok = false;
      detail = f.why;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && secs > c.limit_seconds) {
      ok = false;
      detail = "took longer than " + std::to_string(static_cast<int>(c.limit_seconds)) + " s";
    }
    failed += ok ? 0 : 1;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (ok ? "PASS " : "FAIL ") << c.name << " [" << timing << "] " << detail
              << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
