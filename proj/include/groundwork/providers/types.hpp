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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "groundwork/core/json.hpp"

namespace groundwork {

/// One retrieval intent produced by planning.
struct SearchTask {
  std::string id;
  std::string query_text;
  std::string intent;
  std::optional<std::string> origin_item;
  std::optional<std::string> origin_node;

  /// Stable id over (query_text, origin_item).
  static std::string make_id(std::string_view query_text,
                             const std::optional<std::string>& origin_item);

  bool operator==(const SearchTask&) const = default;
};

enum class Tool { kPlan, kSearch, kDraft, kExtract, kWrite, kNoop };

std::string_view to_string(Tool tool);
Tool tool_from_string(std::string_view s);

/// Executable parameters of one step; `parameters` is tool specific.
struct ActionCode {
  Tool tool = Tool::kNoop;
  Json parameters = Json::object();
  std::string task_descriptor;

  bool operator==(const ActionCode&) const = default;
};

/// Prompt body with `{{name}}` placeholders.
struct PromptTemplate {
  std::string name;
  std::string body;
  int version = 1;

  std::vector<std::string> placeholders() const;
};

/// Todo-list entry recorded for a search query.
std::string search_todo_text(std::string_view query_text);

void to_json(Json& j, const SearchTask& t);
void from_json(const Json& j, SearchTask& t);
void to_json(Json& j, const ActionCode& a);
void from_json(const Json& j, ActionCode& a);

}  // namespace groundwork
