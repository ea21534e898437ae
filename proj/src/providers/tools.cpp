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

#include "groundwork/providers/tools.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "groundwork/core/error.hpp"

namespace groundwork {

namespace {

void validate_plan(const PlanResult& result, const AgentState& state) {
  std::set<std::string> ids;
  for (const auto& t : result.tasks) {
    if (t.query_text.empty() || t.intent.empty()) {
      throw Error(ErrorCode::kUnparseableOutput, "search task without query or intent");
    }
    if (t.id != SearchTask::make_id(t.query_text,
                                    t.origin_item ? t.origin_item : t.origin_node)) {
      throw Error(ErrorCode::kUnparseableOutput, "search task id is not stable: " + t.id);
    }
    if (!ids.insert(t.id).second) {
      throw Error(ErrorCode::kUnparseableOutput, "duplicate search task " + t.id);
    }
  }
  if (!result.outline) return;
  // A refinement may add nodes but must keep every checklist binding.
  for (const auto& old_node : state.outline.nodes) {
    for (const auto& item : old_node.bound_items) {
      const bool kept = std::any_of(
          result.outline->nodes.begin(), result.outline->nodes.end(),
          [&](const OutlineNode& n) {
            return std::find(n.bound_items.begin(), n.bound_items.end(), item) !=
                   n.bound_items.end();
          });
      if (!kept) {
        throw Error(ErrorCode::kUnparseableOutput, "plan dropped binding for " + item);
      }
    }
  }
  if (result.outline->version <= state.outline.version) {
    throw Error(ErrorCode::kUnparseableOutput, "plan did not advance outline version");
  }
}

}  // namespace

PlanResult plan_tool(std::string_view query, const Workspace& workspace,
                     const AgentState& state, PolicyPort& policy) {
  if (workspace.size() > workspace.char_budget) {
    throw Error(ErrorCode::kPrecondition, "workspace exceeds its budget");
  }
  for (int attempt = 0;; ++attempt) {
    try {
      PlanResult result = policy.plan(query, workspace, state);
      validate_plan(result, state);
      return result;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUnparseableOutput || attempt >= 1) throw;
    }
  }
}

std::vector<RawResult> search_tool(const std::vector<SearchTask>& tasks,
                                   EnvironmentPort& environment, int fanout,
                                   int step_index, Timestamp now) {
  if (tasks.empty()) throw Error(ErrorCode::kPrecondition, "search_tool needs tasks");
  std::vector<std::vector<RawResult>> per_task(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr fatal;
  std::mutex fatal_mu;

  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const SearchTask& task = tasks[i];
      try {
        per_task[i] = environment.search(task, step_index, now);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kProviderUnreachable) {
          std::lock_guard lock(fatal_mu);
          if (!fatal) fatal = std::current_exception();
          continue;
        }
        RawResult r;
        r.source = "tool://search/" + task.query_text;
        r.fetched_at = now;
        r.ok = false;
        r.error_code = std::string(to_string(e.code()));
        r.search_task_id = task.id;
        r.step_index = step_index;
        per_task[i] = {std::move(r)};
      }
      if (per_task[i].empty()) {
        RawResult r;
        r.source = "tool://search/" + task.query_text;
        r.fetched_at = now;
        r.ok = false;
        r.error_code = "no-results";
        r.search_task_id = task.id;
        r.step_index = step_index;
        per_task[i].push_back(std::move(r));
      }
    }
  };

  const auto workers = static_cast<std::size_t>(std::max(1, fanout));
  const std::size_t n = std::min(workers, tasks.size());
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
  }
  if (fatal) std::rethrow_exception(fatal);

  std::vector<RawResult> out;
  for (auto& group : per_task) {
    for (auto& r : group) {
      r.search_task_id = tasks[static_cast<std::size_t>(&group - per_task.data())].id;
      r.step_index = step_index;
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace groundwork
