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

#include "groundwork/providers/live.hpp"

#include <algorithm>
#include <set>

#include "groundwork/core/error.hpp"
#include "groundwork/core/text.hpp"
#include "groundwork/providers/templates.hpp"

#include <httplib.h>

namespace groundwork {

namespace {

struct SplitUrl {
  std::string base;  // scheme://host[:port]
  std::string path;
};

SplitUrl split_url(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw Error(ErrorCode::kConfigInvalid, "endpoint URL needs a scheme: " + url);
  }
  const auto slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

httplib::Headers auth_headers(const HttpEndpoint& ep) {
  httplib::Headers h;
  if (!ep.api_key.empty()) h.emplace("Authorization", "Bearer " + ep.api_key);
  return h;
}

}  // namespace

Json parse_model_json(std::string_view text) {
  const auto open = text.find('{');
  const auto close = text.rfind('}');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    throw Error(ErrorCode::kUnparseableOutput, "no JSON object in model output");
  }
  return parse_json(text.substr(open, close - open + 1));
}

std::string HttpLlmClient::complete(const LlmRequest& request) {
  const auto [base, path] = split_url(endpoint_.url);
  httplib::Client cli(base);
  cli.set_read_timeout(endpoint_.timeout_seconds, 0);
  cli.set_connection_timeout(10, 0);
  const Json body{{"model", endpoint_.model},
                  {"temperature", 0},
                  {"messages",
                   Json::array({Json{{"role", "system"}, {"content", request.system}},
                                Json{{"role", "user"}, {"content", request.prompt}}})}};
  auto res = cli.Post(path, auth_headers(endpoint_), canonical_dump(body), "application/json");
  if (!res) {
    throw TransientError("completion endpoint unreachable: " + httplib::to_string(res.error()));
  }
  if (res->status == 429 || res->status >= 500) {
    throw TransientError("completion endpoint returned " + std::to_string(res->status));
  }
  if (res->status != 200) {
    throw Error(ErrorCode::kProviderError,
                "completion endpoint returned " + std::to_string(res->status));
  }
  try {
    const Json j = Json::parse(res->body);
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kProviderError, std::string("bad completion payload: ") + e.what());
  }
}

std::vector<RawResult> HttpSearchEnvironment::search(const SearchTask& task, int step_index,
                                                     Timestamp now) {
  const auto [base, path] = split_url(endpoint_.url);
  httplib::Client cli(base);
  cli.set_read_timeout(endpoint_.timeout_seconds, 0);
  cli.set_connection_timeout(10, 0);
  httplib::Params params{{"q", task.query_text}, {"format", "json"}};
  auto res = cli.Get(path, params, auth_headers(endpoint_));
  if (!res) {
    throw Error(ErrorCode::kProviderUnreachable,
                "search endpoint unreachable: " + httplib::to_string(res.error()));
  }
  std::vector<RawResult> out;
  if (res->status != 200) {
    RawResult r;
    r.source = endpoint_.url;
    r.fetched_at = now;
    r.ok = false;
    r.error_code = std::to_string(res->status);
    r.search_task_id = task.id;
    r.step_index = step_index;
    out.push_back(std::move(r));
    return out;
  }
  const Json j = parse_json(res->body);
  for (const auto& hit : j.value("results", Json::array())) {
    RawResult r;
    r.source = hit.value("url", std::string());
    r.fetched_at = now;
    r.title = hit.value("title", std::string());
    r.body = hit.value("content", std::string());
    r.search_task_id = task.id;
    r.step_index = step_index;
    if (auto p = optional_field<std::string>(hit, "publishedDate")) {
      try {
        r.published = parse_iso8601(*p);
      } catch (const Error&) {
        // unparseable dates are treated as unknown
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string LlmPolicy::ask(std::string_view template_name, const Json& bindings) {
  return llm_complete(templates::get(template_name), bindings, client_, retry_);
}

std::vector<ChecklistItem> LlmPolicy::decompose(std::string_view query) {
  const Json j = parse_model_json(ask(templates::kDecompose, Json{{"query", query}}));
  std::vector<ChecklistItem> items;
  int n = 0;
  for (const auto& raw : j.at("items")) {
    auto item = raw.get<ChecklistItem>();
    ++n;
    if (item.id.empty()) item.id = "item-" + std::to_string(n);
    if (item.priority <= 0) item.priority = n;
    item.status = ItemStatus::kDraft;
    items.push_back(std::move(item));
  }
  return items;
}

Decision LlmPolicy::decide(const Workspace& workspace, const AgentState& state) {
  Json pending = Json::array();
  for (const auto& t : state.search_tasks) pending.push_back(t.query_text);
  Json recent = Json::array();
  const auto [first, last] = state.context_window();
  for (const auto& c : state.completed_list) recent.push_back(c.item);
  const Json bindings{
      {"task", templates::render(templates::get(templates::kTask),
                                 Json{{"query", workspace.query}})},
      {"workspace", workspace.serialize()},
      {"recent", "steps " + std::to_string(first) + ".." + std::to_string(last) +
                     "; completed: " + canonical_dump(recent)},
      {"pending", canonical_dump(pending)}};
  const Json j = parse_model_json(ask(templates::kDecide, bindings));
  Decision d;
  d.thought = j.value("thought", std::string());
  d.action_thought = j.value("action_thought", std::string());
  d.action.tool = tool_from_string(j.value("tool", std::string("plan")));
  if (d.action.tool == Tool::kSearch && state.search_tasks.empty()) d.action.tool = Tool::kPlan;
  if (d.action.tool != Tool::kSearch && d.action.tool != Tool::kPlan) d.action.tool = Tool::kPlan;
  d.action.task_descriptor = j.value("task_descriptor", std::string());
  if (d.thought.empty() || d.action_thought.empty()) {
    throw Error(ErrorCode::kUnparseableOutput, "decision without thought");
  }
  return d;
}

PlanResult LlmPolicy::plan(std::string_view query, const Workspace& workspace,
                           const AgentState& state) {
  std::set<std::string> issued(state.todo_list.begin(), state.todo_list.end());
  for (const auto& c : state.completed_list) issued.insert(c.item);
  const Json bindings{{"query", query},
                      {"workspace", workspace.serialize()},
                      {"issued", Json(std::vector<std::string>(issued.begin(), issued.end()))}};
  const Json j = parse_model_json(ask(templates::kPlan, bindings));
  PlanResult out;
  std::set<std::string> seen;
  for (const auto& raw : j.value("tasks", Json::array())) {
    SearchTask t;
    t.query_text = raw.value("query_text", std::string());
    t.intent = raw.value("intent", std::string());
    const auto origin = raw.value("origin_item", std::string());
    for (const auto& g : workspace.active_subgoals) {
      if (g.item_id != origin) continue;
      if (!g.node_ids.empty()) t.origin_node = g.node_ids.front();
      if (g.node_ids.empty() || g.item_id != g.node_ids.front()) t.origin_item = g.item_id;
    }
    if (t.query_text.empty() || issued.count(search_todo_text(t.query_text))) continue;
    t.id = SearchTask::make_id(t.query_text, t.origin_item ? t.origin_item : t.origin_node);
    if (seen.insert(t.id).second) out.tasks.push_back(std::move(t));
  }
  out.rationale = j.value("rationale", std::string());
  return out;
}

std::string LlmPolicy::summarize(const NormalizedDoc& doc) {
  const Json bindings{{"title", doc.title},
                      {"source", doc.source},
                      {"document", text::truncate_tail(doc.text, 6000)}};
  const auto summary = text::collapse_whitespace(ask(templates::kSummarize, bindings));
  if (summary.empty()) return summary;
  return summary + " (source: " + doc.source + ")";
}

SectionDraft LlmPolicy::draft_section(const OutlineNode& node,
                                      const std::vector<ChecklistItem>& items,
                                      const std::vector<EvidenceUnit>& ranked) {
  SectionDraft out;
  if (ranked.empty()) {
    Passage gap;
    gap.gap = true;
    gap.lead = "No audited evidence was found for \"" + node.title + "\".";
    out.passages.push_back(std::move(gap));
    return out;
  }
  Json evidence = Json::array();
  std::set<std::string> allowed;
  for (const auto& u : ranked) {
    evidence.push_back(Json{{"id", u.id}, {"source", u.source}, {"summary", u.summary}});
    allowed.insert(u.id);
  }
  Json goals = Json::array();
  for (const auto& i : items) {
    goals.push_back(Json{{"goal", i.goal}, {"acceptance_criteria", i.acceptance_criteria}});
  }
  const Json j = parse_model_json(ask(
      templates::kDraftSection,
      Json{{"title", node.title}, {"items", canonical_dump(goals)}, {"evidence", canonical_dump(evidence)}}));
  auto keep_known = [&](std::vector<std::string>& ids) {
    ids.erase(std::remove_if(ids.begin(), ids.end(),
                             [&](const std::string& id) { return !allowed.count(id); }),
              ids.end());
  };
  for (const auto& raw : j.value("passages", Json::array())) {
    Passage p = raw.get<Passage>();
    for (auto& c : p.claims) keep_known(c.evidence_ids);
    out.passages.push_back(std::move(p));
  }
  for (const auto& raw : j.value("visuals", Json::array())) {
    VizSpec v = raw.get<VizSpec>();
    v.node_id = node.id;
    for (auto& row : v.data) keep_known(row.evidence_ids);
    out.visuals.push_back(std::move(v));
  }
  return out;
}

std::string LlmPolicy::hedge(std::string_view claim_text) {
  return text::collapse_whitespace(ask(templates::kHedge, Json{{"claim", claim_text}}));
}

DecisionDocument LlmPolicy::critique(const ReviewDocument& review) {
  Json doc = review;
  const Json j = parse_model_json(ask(templates::kCritic, Json{{"review", canonical_dump(doc)}}));
  auto out = j.get<DecisionDocument>();
  out.checklist_version = review.checklist_version;
  if (out.reviewer.empty()) out.reviewer = "llm-critic";
  return out;
}

}  // namespace groundwork
