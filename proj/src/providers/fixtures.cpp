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

#include "groundwork/providers/fixtures.hpp"

#include <filesystem>

#include "groundwork/core/error.hpp"
#include "groundwork/core/hash.hpp"

namespace fs = std::filesystem;

namespace groundwork {

const FixtureItem* ChecklistFixture::match(std::string_view item_id,
                                           std::string_view goal) const {
  std::string id(item_id);
  while (!id.empty()) {
    for (const auto& fi : items) {
      if (fi.item.id == id) return &fi;
    }
    const auto dot = id.rfind('.');
    if (dot == std::string::npos) break;
    id.resize(dot);
  }
  for (const auto& fi : items) {
    if (fi.item.goal == goal) return &fi;
  }
  return nullptr;
}

void to_json(Json& j, const FixtureDoc& v) {
  j = Json{{"url", v.url},
           {"title", v.title},
           {"body", v.body},
           {"published", v.published},
           {"status", v.status}};
}

void from_json(const Json& j, FixtureDoc& v) {
  read_field(j, "url", v.url);
  read_field(j, "title", v.title);
  read_field(j, "body", v.body);
  v.published = optional_field<std::string>(j, "published");
  read_field(j, "status", v.status);
}

namespace {

Json checklist_fixture_json(const ChecklistFixture& c) {
  Json items = Json::array();
  for (const auto& fi : c.items) {
    Json item = fi.item;
    item["queries"] = fi.queries;
    items.push_back(std::move(item));
  }
  return Json{{"query", c.query}, {"items", std::move(items)}};
}

ChecklistFixture checklist_fixture_from(const Json& j) {
  ChecklistFixture c;
  read_field(j, "query", c.query);
  for (const auto& item : j.at("items")) {
    FixtureItem fi;
    fi.item = item.get<ChecklistItem>();
    read_field(item, "queries", fi.queries);
    c.items.push_back(std::move(fi));
  }
  return c;
}

}  // namespace

FixtureSet FixtureSet::load(const std::string& dir) {
  const fs::path root(dir);
  const fs::path manifest = root / "manifest.json";
  if (!fs::exists(manifest)) {
    throw Error(ErrorCode::kFixtureMissing, "no fixture manifest at " + manifest.string());
  }
  FixtureSet set;
  const Json m = parse_json(read_file(manifest.string()));
  for (const auto& e : m.value("checklists", Json::array())) {
    const Json c = parse_json(read_file((root / e.at("file").get<std::string>()).string()));
    set.add_checklist(checklist_fixture_from(c));
  }
  for (const auto& e : m.value("search", Json::array())) {
    const Json s = parse_json(read_file((root / e.at("file").get<std::string>()).string()));
    set.add_search(e.at("query").get<std::string>(),
                   s.at("results").get<std::vector<FixtureDoc>>());
  }
  for (const auto& e : m.value("llm", Json::array())) {
    set.add_llm(e.at("template").get<std::string>(),
                e.at("bindings_hash").get<std::string>(),
                read_file((root / e.at("file").get<std::string>()).string()));
  }
  return set;
}

void FixtureSet::save(const std::string& dir) const {
  const fs::path root(dir);
  Json checklists = Json::array();
  for (const auto& [query, c] : checklists_) {
    const std::string file = "checklist/" + short_hash(query, 12) + ".json";
    write_file((root / file).string(), checklist_fixture_json(c).dump(2) + "\n");
    checklists.push_back(Json{{"query", query}, {"file", file}});
  }
  Json search = Json::array();
  for (const auto& [query, docs] : search_) {
    const std::string file = "search/" + short_hash(query, 12) + ".json";
    write_file((root / file).string(),
               Json{{"query", query}, {"results", docs}}.dump(2) + "\n");
    search.push_back(Json{{"query", query}, {"file", file}});
  }
  Json llm = Json::array();
  for (const auto& [key, text] : llm_) {
    const std::string file = "llm/" + key.first + "-" + key.second + ".txt";
    write_file((root / file).string(), text);
    llm.push_back(Json{{"template", key.first}, {"bindings_hash", key.second}, {"file", file}});
  }
  const Json manifest{{"schema", "fixtures/1"},
                      {"checklists", std::move(checklists)},
                      {"search", std::move(search)},
                      {"llm", std::move(llm)}};
  write_file((root / "manifest.json").string(), manifest.dump(2) + "\n");
}

void FixtureSet::add_checklist(ChecklistFixture fixture) {
  std::string key = fixture.query;
  checklists_[std::move(key)] = std::move(fixture);
}

void FixtureSet::add_search(std::string query, std::vector<FixtureDoc> docs) {
  search_[std::move(query)] = std::move(docs);
}

void FixtureSet::remove_search(std::string_view query) {
  if (auto it = search_.find(query); it != search_.end()) search_.erase(it);
}

void FixtureSet::add_llm(std::string template_name, std::string hash, std::string text) {
  llm_[{std::move(template_name), std::move(hash)}] = std::move(text);
}

const ChecklistFixture* FixtureSet::checklist_for(std::string_view query) const {
  auto it = checklists_.find(query);
  return it == checklists_.end() ? nullptr : &it->second;
}

const std::vector<FixtureDoc>* FixtureSet::search_for(std::string_view query) const {
  auto it = search_.find(query);
  return it == search_.end() ? nullptr : &it->second;
}

const std::string* FixtureSet::llm_for(std::string_view template_name,
                                       std::string_view hash) const {
  auto it = llm_.find({std::string(template_name), std::string(hash)});
  return it == llm_.end() ? nullptr : &it->second;
}

std::string FixtureLlmClient::complete(const LlmRequest& request) {
  const std::string* text = fixtures_.llm_for(request.template_name, request.bindings_hash);
  if (!text) {
    throw Error(ErrorCode::kFixtureMiss, "no completion fixture for (" +
                                             request.template_name + ", " +
                                             request.bindings_hash + ")");
  }
  return *text;
}

}  // namespace groundwork
