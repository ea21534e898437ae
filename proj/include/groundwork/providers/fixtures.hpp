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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "groundwork/checklist/types.hpp"
#include "groundwork/providers/llm.hpp"

namespace groundwork {

/// A canned search hit. `status` is "ok" or an error code such as "404".
struct FixtureDoc {
  std::string url;
  std::string title;
  std::string body;
  std::optional<std::string> published;  // ISO-8601 date
  std::string status = "ok";
};

/// A checklist item the mock policy returns, plus the queries it will issue
/// for it, one per planning round.
struct FixtureItem {
  ChecklistItem item;
  std::vector<std::string> queries;
};

struct ChecklistFixture {
  std::string query;
  std::vector<FixtureItem> items;

  /// Finds the fixture item for a subgoal by id (falling back to the id a
  /// split child was derived from), then by goal text.
  const FixtureItem* match(std::string_view item_id, std::string_view goal) const;
};

/// Offline fixture set. On disk:
///   manifest.json            index of every fixture file
///   checklist/<hash>.json    decomposition per query
///   search/<hash>.json       results per search query
///   llm/<template>-<hash>.txt completion per (template, bindings hash)
class FixtureSet {
 public:
  /// Throws Error(kFixtureMissing) if the directory or manifest is absent.
  static FixtureSet load(const std::string& dir);
  void save(const std::string& dir) const;

  void add_checklist(ChecklistFixture fixture);
  void add_search(std::string query, std::vector<FixtureDoc> docs);
  void remove_search(std::string_view query);
  void add_llm(std::string template_name, std::string hash, std::string text);

  const ChecklistFixture* checklist_for(std::string_view query) const;
  const std::vector<FixtureDoc>* search_for(std::string_view query) const;
  const std::string* llm_for(std::string_view template_name,
                             std::string_view hash) const;

  std::size_t search_count() const { return search_.size(); }

 private:
  std::map<std::string, ChecklistFixture, std::less<>> checklists_;
  std::map<std::string, std::vector<FixtureDoc>, std::less<>> search_;
  std::map<std::pair<std::string, std::string>, std::string> llm_;
};

/// Completions looked up by (template name, bindings hash). A missing key is
/// an error; there is no fallback text.
class FixtureLlmClient : public LlmClient {
 public:
  explicit FixtureLlmClient(const FixtureSet& fixtures) : fixtures_(fixtures) {}
  std::string complete(const LlmRequest& request) override;

 private:
  const FixtureSet& fixtures_;
};

void to_json(Json& j, const FixtureDoc& v);
void from_json(const Json& j, FixtureDoc& v);

}  // namespace groundwork
