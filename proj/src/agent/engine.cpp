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

#include "groundwork/agent/engine.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <set>

#include "groundwork/agent/state.hpp"
#include "groundwork/agent/stop.hpp"
#include "groundwork/agent/trace.hpp"
#include "groundwork/agent/workspace.hpp"
#include "groundwork/checklist/checklist.hpp"
#include "groundwork/core/error.hpp"
#include "groundwork/core/text.hpp"
#include "groundwork/evidence/audit.hpp"
#include "groundwork/evidence/normalize.hpp"
#include "groundwork/evidence/store.hpp"
#include "groundwork/providers/tools.hpp"
#include "groundwork/report/report.hpp"

namespace groundwork {

namespace fs = std::filesystem;

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::kChecklisting: return "checklisting";
    case Phase::kAwaitingReview: return "awaiting-review";
    case Phase::kResearching: return "researching";
    case Phase::kDrafting: return "drafting";
    case Phase::kWriting: return "writing";
    case Phase::kDone: return "done";
    case Phase::kFailed: return "failed";
    case Phase::kAborted: return "aborted";
  }
  return "failed";
}

Phase phase_from_string(std::string_view s) {
  for (auto p : {Phase::kChecklisting, Phase::kAwaitingReview, Phase::kResearching,
                 Phase::kDrafting, Phase::kWriting, Phase::kDone, Phase::kFailed,
                 Phase::kAborted}) {
    if (to_string(p) == s) return p;
  }
  throw Error(ErrorCode::kPrecondition, "unknown phase " + std::string(s));
}

namespace {

constexpr std::size_t kFactChars = 240;

std::string summary_body_text(const EvidenceUnit& u) {
  const auto pos = u.summary.rfind(" (source: ");
  return pos == std::string::npos ? u.summary : u.summary.substr(0, pos);
}

class Episode {
 public:
  Episode(const RunConfig& config, Providers providers, const std::string& run_dir,
          const RunHooks& hooks)
      : config_(config),
        p_(providers),
        paths_{run_dir},
        hooks_(hooks),
        run_id_(make_run_id(config)) {}

  RunResult run(bool resume);

 private:
  Timestamp clock(int step) const {
    return config_.mock ? config_.clock_base + static_cast<Timestamp>(step) * config_.clock_step
                        : wall_clock_now();
  }
  void event(std::string_view name, int step) const {
    if (hooks_.on_event) hooks_.on_event(name, step);
  }
  void phase(Phase ph, int step, std::optional<StopReason> reason = std::nullopt,
             const std::string& error = {}) {
    phase_ = ph;
    Json status = {{"run_id", run_id_}, {"phase", to_string(ph)}, {"step_index", step}};
    status["stop_reason"] = reason ? Json(to_string(*reason)) : Json(nullptr);
    if (!error.empty()) status["error"] = error;
    write_file(paths_.status(), status.dump(2) + "\n");
    if (hooks_.on_phase) hooks_.on_phase(ph);
  }
  bool abort_requested() const { return hooks_.abort && hooks_.abort->load(); }

  WorkspaceOptions workspace_options(Timestamp now) const {
    WorkspaceOptions o;
    o.char_budget = config_.workspace_budget;
    o.max_active = config_.max_active;
    o.memory_top_k = config_.memory_top_k;
    o.digest_chars = config_.digest_chars;
    o.rank = rank_options(now);
    return o;
  }
  RankOptions rank_options(Timestamp now) const {
    RankOptions r;
    r.weights = config_.weights;
    r.half_life_days = config_.half_life_days;
    r.now = now;
    return r;
  }
  const Checklist* progress() const { return progress_ ? &*progress_ : nullptr; }
  void refresh_progress(const Outline& outline) {
    if (checklist_) progress_ = track_progress(*checklist_, outline, config_.min_evidence_per_leaf);
  }

  void prepare_directory(bool resume);
  void run_checklist();
  bool load_checklist();
  AgentState make_initial_state();
  Observation do_plan(const Workspace& ws, const AgentState& state);
  Observation do_search(const ActionCode& action, const AgentState& state, int step,
                        Timestamp now);
  void commit(StepRecord record);
  Report write_report(const AgentState& state, const StopSignal& stop, Timestamp now,
                      AuditBundle* audit_out);

  const RunConfig& config_;
  Providers p_;
  RunPaths paths_;
  const RunHooks& hooks_;
  std::string run_id_;
  Phase phase_ = Phase::kChecklisting;

  std::optional<Checklist> checklist_;  // C1
  std::optional<Outline> compiled_;      // O1
  std::optional<Checklist> progress_;    // C1 with evidence-derived statuses
  std::unique_ptr<EvidenceStore> store_;
  std::unique_ptr<TraceWriter> trace_;
  std::unique_ptr<StateLedger> ledger_;
  AgentState initial_;
  int next_step_ = 0;
};

Json checklist_doc(const Checklist& c, const Outline& o) {
  return Json{{"checklist", c}, {"outline", o}};
}

void Episode::prepare_directory(bool resume) {
  std::error_code ec;
  fs::create_directories(paths_.dir, ec);
  if (ec) throw Error(ErrorCode::kStorageIo, "cannot create " + paths_.dir + ": " + ec.message());
  const std::string config_text = Json(config_).dump(2) + "\n";
  if (resume) {
    if (!fs::exists(paths_.config())) {
      throw Error(ErrorCode::kPrecondition, "nothing to resume in " + paths_.dir);
    }
    if (read_file(paths_.config()) != config_text) {
      throw Error(ErrorCode::kConfigInvalid,
                  "config differs from the one the run in " + paths_.dir + " started with");
    }
    return;
  }
  // A fresh run owns its directory: clear artifacts of any earlier run.
  for (const auto& p : {paths_.trace(), paths_.report_markdown(), paths_.report_structured(),
                        paths_.audit(), paths_.status()}) {
    fs::remove(p, ec);
  }
  fs::remove_all(paths_.store(), ec);
  fs::remove_all(paths_.checklist_dir(), ec);
  write_file(paths_.config(), config_text);
  event("config", -1);
}

void Episode::run_checklist() {
  phase(Phase::kChecklisting, 0);
  auto [c0, o0] = generate_checklist(config_.query, p_.policy);
  write_file(paths_.checklist_version(c0.version), checklist_doc(c0, o0).dump(2) + "\n");
  event("checklist", -1);

  RefineOptions options;
  options.max_rounds = config_.max_rounds;
  options.run_id = run_id_;
  options.query = config_.query;
  options.on_timeout =
      config_.review_fallback_llm ? TimeoutFallback::kLlmFallback : TimeoutFallback::kAbort;
  options.fallback = p_.fallback_critic;
  options.on_round = [&](const ReviewDocument& review, const DecisionDocument& decision) {
    Json r = review;
    Json d = decision;
    const auto v = std::to_string(review.checklist_version);
    write_file(paths_.checklist_dir() + "/review-v" + v + ".json", r.dump(2) + "\n");
    write_file(paths_.checklist_dir() + "/decision-v" + v + ".json", d.dump(2) + "\n");
    phase(Phase::kChecklisting, 0);
  };
  const auto intents = derive_plan_intents(config_.query, c0, AgentState{});
  Checklist c1 = critic_refine(c0, intents, p_.critic, options);
  std::vector<std::string> warnings;
  Outline o1 = compile_outline(c1, config_.max_depth, config_.query, &warnings);
  c1.warnings.insert(c1.warnings.end(), warnings.begin(), warnings.end());
  bind_items(c1, o1);
  write_file(paths_.checklist_version(c1.version), checklist_doc(c1, o1).dump(2) + "\n");
  write_file(paths_.checklist_final(), checklist_doc(c1, o1).dump(2) + "\n");
  event("checklist", -1);
  checklist_ = std::move(c1);
  compiled_ = std::move(o1);
  if (hooks_.on_checklist) hooks_.on_checklist(*checklist_, *compiled_);
}

bool Episode::load_checklist() {
  if (!fs::exists(paths_.checklist_final())) return false;
  const Json doc = parse_json(read_file(paths_.checklist_final()));
  checklist_ = doc.at("checklist").get<Checklist>();
  compiled_ = doc.at("outline").get<Outline>();
  if (hooks_.on_checklist) hooks_.on_checklist(*checklist_, *compiled_);
  return true;
}

AgentState Episode::make_initial_state() {
  if (!checklist_) {
    Outline outline;
    OutlineNode root;
    root.title = config_.query;
    root.id = Outline::make_node_id({}, root.title);
    root.kind = NodeKind::kRoot;
    outline.nodes.push_back(std::move(root));
    return initial_state(outline, {}, store_->current_snapshot(), "", config_.retention);
  }
  refresh_progress(*compiled_);
  // Z_0 for the compiled outline: one planning pass seeds the first searches.
  AgentState pre = initial_state(*compiled_, {}, store_->current_snapshot(), progress_->ref(),
                                 config_.retention);
  const Timestamp now = clock(0);
  Workspace ws = reconstruct_workspace(config_.query, pre, nullptr, nullptr, progress(), *store_,
                                       config_.min_evidence_per_leaf, workspace_options(now));
  PlanResult seeded = plan_tool(config_.query, ws, pre, p_.policy);
  const Outline& outline = seeded.outline ? *seeded.outline : *compiled_;
  return initial_state(outline, seeded.tasks, store_->current_snapshot(), progress_->ref(),
                       config_.retention);
}

Observation Episode::do_plan(const Workspace& ws, const AgentState& state) {
  PlanResult pr = plan_tool(config_.query, ws, state, p_.policy);
  Observation obs;
  obs.summary = pr.rationale;
  obs.new_tasks = std::move(pr.tasks);
  if (pr.outline) obs.outline = std::move(pr.outline);
  obs.status = (obs.new_tasks.empty() && !obs.outline) ? "noop" : "ok";
  if (obs.status == "noop") obs.notes.push_back("planning produced no new search tasks");
  return obs;
}

Observation Episode::do_search(const ActionCode& action, const AgentState& state, int step,
                               Timestamp now) {
  std::vector<SearchTask> tasks;
  std::set<std::string> wanted;
  if (auto it = action.parameters.find("tasks"); it != action.parameters.end() && it->is_array()) {
    for (const auto& id : *it) {
      if (id.is_string()) wanted.insert(id.get<std::string>());
    }
  }
  for (const auto& t : state.search_tasks) {
    if (wanted.empty() || wanted.count(t.id)) tasks.push_back(t);
  }
  if (tasks.empty()) tasks = state.search_tasks;
  Observation obs;
  if (tasks.empty()) {
    obs.status = "noop";
    obs.summary = "no pending search tasks";
    return obs;
  }
  const auto raw = search_tool(tasks, p_.environment, config_.fanout, step, now);
  for (const auto& t : tasks) obs.executed_tasks.push_back(t.id);

  std::size_t ok_results = 0;
  for (const auto& r : raw) {
    ResultDigest d;
    d.search_task_id = r.search_task_id;
    d.source = r.source;
    d.ok = r.ok;
    d.title = r.title.value_or("");
    d.excerpt = r.ok ? text::truncate_tail(text::collapse_whitespace(r.body), 160) : r.error_code;
    obs.results.push_back(std::move(d));
    ok_results += r.ok ? 1 : 0;
  }

  std::vector<EvidenceUnit> units;
  Outline outline = state.outline;
  if (config_.eam_enabled) {
    auto normalized = normalize(raw);
    for (const auto& e : normalized.log) obs.notes.push_back(e.code + ": " + e.source);
    ConfidenceModel model;
    model.priors = config_.source_priors;
    std::vector<IngestionLogEntry> log;
    units = structure(normalized.docs, p_.policy, model, &log);
    for (const auto& e : log) obs.notes.push_back(e.code + ": " + e.source);
    std::erase_if(units, [&](const EvidenceUnit& u) { return store_->contains(u.id); });
    if (!units.empty()) {
      BindingOptions binding;
      binding.threshold = config_.binding_threshold;
      outline = refine_outline(outline, units, binding);
    }
  } else {
    // Plain ingestion: raw text, no summarizer, bound to the task's node.
    std::map<std::string, const SearchTask*> by_id;
    for (const auto& t : tasks) by_id[t.id] = &t;
    std::set<std::string> seen;
    ConfidenceModel model;
    model.priors = config_.source_priors;
    const std::string root_id = outline.root() ? outline.root()->id : std::string();
    for (const auto& r : raw) {
      if (!r.ok) {
        obs.notes.push_back((r.error_code.empty() ? "error" : r.error_code) + ": " + r.source);
        continue;
      }
      EvidenceUnit u;
      u.id = evidence_id(r.body);
      if (store_->contains(u.id) || !seen.insert(u.id).second) continue;
      u.source = r.source;
      u.title = r.title.value_or("");
      u.timestamp = r.published.value_or(r.fetched_at);
      u.excerpt = text::truncate_tail(r.body, 1200);
      u.summary = u.excerpt;
      u.confidence = model.prior(classify_source(r.source));
      u.provenance = {r.search_task_id, r.step_index};
      const SearchTask* task = by_id.count(r.search_task_id) ? by_id[r.search_task_id] : nullptr;
      std::string node_id = task && task->origin_node ? *task->origin_node : root_id;
      if (!outline.find(node_id)) node_id = root_id;
      u.bound_nodes = {node_id};
      outline.find(node_id)->bound_evidence.push_back(u.id);
      units.push_back(std::move(u));
    }
    if (!units.empty()) ++outline.version;
  }

  const std::string snapshot = store_->persist(units);
  event("store", step);
  for (const auto& u : units) {
    obs.new_evidence.push_back(u.id);
    obs.facts.push_back(text::truncate_tail(
        (u.title.empty() ? u.source : u.title) + ": " + summary_body_text(u), kFactChars));
  }
  if (!units.empty()) obs.outline = std::move(outline);
  obs.memory_ref = snapshot;
  obs.status = ok_results == 0 ? "failed" : (ok_results == raw.size() ? "ok" : "partial");
  obs.summary = std::to_string(tasks.size()) + " search task(s), " + std::to_string(raw.size()) +
                " result(s), " + std::to_string(units.size()) + " new evidence unit(s)";
  return obs;
}


void Episode::commit(StepRecord record) {
  const AgentState prev = ledger_->latest();
  ledger_->commit(prev, record.state);
  trace_->append(record, record.step_index == 0 ? &initial_ : nullptr);
  event("step", record.step_index);
  if (hooks_.on_step) hooks_.on_step(record);
  next_step_ = record.step_index + 1;
}

Report Episode::write_report(const AgentState& state, const StopSignal& stop, Timestamp now,
                             AuditBundle* audit_out) {
  refresh_progress(state.outline);
  const Checklist empty;
  const Checklist& checklist = progress_ ? *progress_ : empty;

  ComposeOptions compose;
  compose.top_k = config_.top_k;
  compose.include_descendants = config_.include_descendants;
  compose.rank = rank_options(now);
  DraftResult drafted = draft(state.outline, checklist, *store_, p_.policy, compose);

  phase(Phase::kWriting, state.step_index, stop.reason);
  WriteOptions options;
  options.unsupported = config_.unsupported_policy;
  options.run_id = run_id_;
  options.query = config_.query;
  options.outline_version = state.outline.version;
  options.stop_reason = std::string(to_string(stop.reason));
  for (const auto& item : checklist.items) {
    if (item.status != ItemStatus::kSatisfied && item.status != ItemStatus::kWaived) {
      options.open_items.push_back(item.id + ": " + item.goal);
    }
  }
  if (config_.eam_enabled) {
    *audit_out = extract_evidence(drafted.sections, *store_, state.outline, rank_options(now),
                                  config_.audit_threshold);
    return write(drafted.sections, audit_out, *store_, p_.policy, options);
  }
  return write(drafted.sections, nullptr, *store_, p_.policy, options);
}

RunResult Episode::run(bool resume) {
  config_.validate();
  if (config_.query.empty()) throw Error(ErrorCode::kConfigInvalid, "query is empty");
  prepare_directory(resume);
  try {
    ParsedTrace existing;
    if (resume) {
      existing = read_trace(paths_.trace());
      // The write step is redone so that report files and trace agree.
      if (!existing.records.empty() &&
          existing.records.back().action_code.tool == Tool::kWrite) {
        existing.records.pop_back();
        existing.raw.pop_back();
      }
      truncate_trace(paths_.trace(), static_cast<int>(existing.records.size()));
      for (const auto& p : {paths_.report_markdown(), paths_.report_structured(), paths_.audit()}) {
        std::error_code ec;
        fs::remove(p, ec);
      }
    }

    if (config_.vcm_enabled && !(resume && load_checklist())) {
      if (resume) {
        std::error_code ec;
        fs::remove_all(paths_.checklist_dir(), ec);
        fs::remove_all(paths_.store(), ec);
        fs::remove(paths_.trace(), ec);
        existing = {};
      }
      run_checklist();
    }

    store_ = std::make_unique<EvidenceStore>(paths_.store());
    if (!existing.records.empty()) {
      initial_ = *existing.initial_state;
      store_->truncate_to(existing.records.back().state.memory_ref);
    } else {
      store_->truncate_to(EvidenceStore::snapshot_id_of({}));
      initial_ = make_initial_state();
    }
    event("store", -1);

    AgentState state = existing.records.empty() ? initial_ : existing.records.back().state;
    ledger_ = std::make_unique<StateLedger>(state);
    const std::string prev_hash =
        existing.records.empty()
            ? genesis_hash(run_id_, config_.query, initial_.snapshot_id())
            : chain_hash(existing.raw.back());
    trace_ = std::make_unique<TraceWriter>(paths_.trace(), run_id_, prev_hash);
    next_step_ = static_cast<int>(existing.records.size());
    std::optional<ActionCode> last_action;
    std::optional<Observation> last_observation;
    if (!existing.records.empty()) {
      last_action = existing.records.back().action_code;
      last_observation = existing.records.back().observation;
    }

    phase(Phase::kResearching, next_step_);
    StopSignal stop;
    for (;;) {
      const int t = next_step_;
      refresh_progress(state.outline);
      stop = should_stop(state.outline, progress(), t, config_, searches_used(state),
                         abort_requested());
      if (stop.stop) break;

      const Timestamp wall = clock(t);
      Workspace ws = reconstruct_workspace(
          config_.query, state, last_action ? &*last_action : nullptr,
          last_observation ? &*last_observation : nullptr, progress(), *store_,
          config_.min_evidence_per_leaf, workspace_options(wall));
      if (hooks_.on_workspace) hooks_.on_workspace(ws, t);

      Decision d = p_.policy.decide(ws, state);
      Observation obs;
      switch (d.action.tool) {
        case Tool::kPlan: obs = do_plan(ws, state); break;
        case Tool::kSearch: obs = do_search(d.action, state, t, wall); break;
        default:
          obs.status = "noop";
          obs.summary = "tool " + std::string(to_string(d.action.tool)) +
                        " is only available after the stop signal";
          break;
      }
      if (checklist_) {
        refresh_progress(obs.outline ? *obs.outline : state.outline);
        d.action.parameters["checklist_ref"] = progress_->ref();
      }
      StepRecord record;
      record.step_index = t;
      record.thought = d.thought;
      record.action_thought = d.action_thought;
      record.action_code = d.action;
      record.observation = obs;
      record.state = update_state(state, d.thought, d.action_thought, d.action, obs,
                                  config_.retention, wall + kLinesPerStep - 1);
      record.state_snapshot_id = record.state.snapshot_id();
      record.wall_time = wall;
      state = record.state;
      commit(std::move(record));
      last_action = d.action;
      last_observation = obs;
    }

    // Write step: σ fired at step t.
    const int t = next_step_;
    const Timestamp wall = clock(t);
    phase(Phase::kDrafting, t, stop.reason);
    AuditBundle audit;
    Report report = write_report(state, stop, wall, &audit);

    ActionCode action;
    action.tool = Tool::kWrite;
    action.task_descriptor = "draft, audit and write the report";
    action.parameters = Json{{"stop_reason", to_string(stop.reason)},
                             {"outline_version", state.outline.version},
                             {"memory_ref", state.memory_ref}};
    if (checklist_) action.parameters["checklist_ref"] = progress_->ref();
    Observation obs;
    obs.status = "ok";
    int hedged = 0;
    std::size_t claims = 0;
    for (const auto& s : report.sections) {
      claims += s.claims.size();
      for (const auto& c : s.claims) hedged += c.hedged ? 1 : 0;
    }
    obs.summary = "report written: " + std::to_string(report.sections.size()) + " section(s), " +
                  std::to_string(claims) + " claim(s), " +
                  std::to_string(report.citations.size()) + " citation(s), " +
                  std::to_string(hedged) + " hedged";
    StepRecord record;
    record.step_index = t;
    record.thought = "Stop signal fired (" + std::string(to_string(stop.reason)) +
                     "); the outline is frozen at version " +
                     std::to_string(state.outline.version) + ".";
    record.action_thought = "Draft node-aligned sections, audit every claim against the "
                            "evidence memory, then bind citations.";
    record.action_code = action;
    record.observation = obs;
    record.state = update_state(state, record.thought, record.action_thought, action, obs,
                                config_.retention, wall + kLinesPerStep - 1);
    record.state_snapshot_id = record.state.snapshot_id();
    record.wall_time = wall;
    state = record.state;
    commit(std::move(record));

    write_file(paths_.report_structured(), render_structured(report));
    write_file(paths_.report_markdown(), render_markdown(report));
    if (config_.eam_enabled) write_file(paths_.audit(), Json(audit).dump(2) + "\n");
    event("report", t);
    phase(stop.reason == StopReason::kOperatorAbort ? Phase::kAborted : Phase::kDone, t,
          stop.reason);

    RunResult result;
    result.run_id = run_id_;
    result.run_dir = paths_.dir;
    result.report = std::move(report);
    result.stop = stop;
    result.steps = next_step_;
    result.final_state_id = state.snapshot_id();
    result.final_snapshot = store_->current_snapshot();
    result.checklist = progress_;
    return result;
  } catch (const Error& e) {
    const Phase failed = e.code() == ErrorCode::kAborted ? Phase::kAborted : Phase::kFailed;
    try {
      phase(failed, next_step_, std::nullopt,
            std::string(to_string(e.code())) + ": " + e.what());
    } catch (...) {
    }
    throw;
  }
}

}  // namespace

RunResult run_episode(const RunConfig& config, Providers providers, const std::string& run_dir,
                      const RunHooks& hooks, bool resume) {
  Episode episode(config, providers, run_dir, hooks);
  return episode.run(resume);
}

}  // namespace groundwork
