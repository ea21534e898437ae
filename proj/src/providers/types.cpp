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

#include "groundwork/providers/types.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "groundwork/core/error.hpp"
#include "groundwork/core/hash.hpp"

namespace groundwork {

namespace {

constexpr std::array<std::pair<Tool, std::string_view>, 6> kTools{{
    {Tool::kPlan, "plan"},
    {Tool::kSearch, "search"},
    {Tool::kDraft, "draft"},
    {Tool::kExtract, "extract"},
    {Tool::kWrite, "write"},
    {Tool::kNoop, "noop"},
}};

}  // namespace

std::string_view to_string(Tool tool) {
  for (const auto& [t, name] : kTools) {
    if (t == tool) return name;
  }
  return "noop";
}

Tool tool_from_string(std::string_view s) {
  for (const auto& [t, name] : kTools) {
    if (name == s) return t;
  }
  throw Error(ErrorCode::kUnparseableOutput, "unknown tool: " + std::string(s));
}

std::string SearchTask::make_id(std::string_view query_text,
                                const std::optional<std::string>& origin_item) {
  std::string key(query_text);
  key += '\x1f';
  key += origin_item.value_or("");
  return "task-" + short_hash(key, 12);
}

std::vector<std::string> PromptTemplate::placeholders() const {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while ((pos = body.find("{{", pos)) != std::string::npos) {
    const auto end = body.find("}}", pos + 2);
    if (end == std::string::npos) break;
    std::string name = body.substr(pos + 2, end - pos - 2);
    if (std::find(out.begin(), out.end(), name) == out.end()) {
      out.push_back(std::move(name));
    }
    pos = end + 2;
  }
  return out;
}

std::string search_todo_text(std::string_view query_text) {
  return "search: " + std::string(query_text);
}

void to_json(Json& j, const SearchTask& t) {
  j = Json{{"id", t.id},
           {"query_text", t.query_text},
           {"intent", t.intent},
           {"origin_item", t.origin_item},
           {"origin_node", t.origin_node}};
}

void from_json(const Json& j, SearchTask& t) {
  read_field(j, "id", t.id);
  read_field(j, "query_text", t.query_text);
  read_field(j, "intent", t.intent);
  t.origin_item = optional_field<std::string>(j, "origin_item");
  t.origin_node = optional_field<std::string>(j, "origin_node");
}

void to_json(Json& j, const ActionCode& a) {
  j = Json{{"tool", to_string(a.tool)},
           {"parameters", a.parameters},
           {"task_descriptor", a.task_descriptor}};
}

void from_json(const Json& j, ActionCode& a) {
  a.tool = tool_from_string(j.at("tool").get<std::string>());
  a.parameters = j.value("parameters", Json::object());
  read_field(j, "task_descriptor", a.task_descriptor);
}

}  // namespace groundwork
