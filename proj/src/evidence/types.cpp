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

#include "groundwork/evidence/types.hpp"

namespace groundwork {

void to_json(Json& j, const RawResult& v) {
  j = Json{{"source", v.source},
           {"fetched_at", v.fetched_at},
           {"ok", v.ok},
           {"error_code", v.error_code},
           {"title", v.title},
           {"body", v.body},
           {"search_task_id", v.search_task_id},
           {"step_index", v.step_index},
           {"published", v.published}};
}

void from_json(const Json& j, RawResult& v) {
  read_field(j, "source", v.source);
  read_field(j, "fetched_at", v.fetched_at);
  read_field(j, "ok", v.ok);
  read_field(j, "error_code", v.error_code);
  v.title = optional_field<std::string>(j, "title");
  read_field(j, "body", v.body);
  read_field(j, "search_task_id", v.search_task_id);
  read_field(j, "step_index", v.step_index);
  v.published = optional_field<Timestamp>(j, "published");
}

void to_json(Json& j, const NormalizedDoc& v) {
  j = Json{{"source", v.source},
           {"source_type", v.source_type},
           {"title", v.title},
           {"text", v.text},
           {"fetched_at", v.fetched_at},
           {"published", v.published},
           {"search_task_id", v.search_task_id},
           {"step_index", v.step_index}};
}

void from_json(const Json& j, NormalizedDoc& v) {
  read_field(j, "source", v.source);
  read_field(j, "source_type", v.source_type);
  read_field(j, "title", v.title);
  read_field(j, "text", v.text);
  read_field(j, "fetched_at", v.fetched_at);
  v.published = optional_field<Timestamp>(j, "published");
  read_field(j, "search_task_id", v.search_task_id);
  read_field(j, "step_index", v.step_index);
}

void to_json(Json& j, const EvidenceUnit& v) {
  j = Json{{"id", v.id},
           {"source", v.source},
           {"title", v.title},
           {"timestamp", v.timestamp},
           {"confidence", v.confidence},
           {"summary", v.summary},
           {"excerpt", v.excerpt},
           {"bound_nodes", v.bound_nodes},
           {"provenance",
            Json{{"search_task_id", v.provenance.search_task_id},
                 {"step_index", v.provenance.step_index}}},
           {"summary_fallback", v.summary_fallback}};
}

void from_json(const Json& j, EvidenceUnit& v) {
  read_field(j, "id", v.id);
  read_field(j, "source", v.source);
  read_field(j, "title", v.title);
  read_field(j, "timestamp", v.timestamp);
  read_field(j, "confidence", v.confidence);
  read_field(j, "summary", v.summary);
  read_field(j, "excerpt", v.excerpt);
  read_field(j, "bound_nodes", v.bound_nodes);
  if (auto it = j.find("provenance"); it != j.end()) {
    read_field(*it, "search_task_id", v.provenance.search_task_id);
    read_field(*it, "step_index", v.provenance.step_index);
  }
  read_field(j, "summary_fallback", v.summary_fallback);
}

void to_json(Json& j, const EvidenceSummary& v) {
  j = Json{{"evidence_id", v.evidence_id},
           {"node_id", v.node_id},
           {"source", v.source},
           {"summary", v.summary}};
}

void from_json(const Json& j, EvidenceSummary& v) {
  read_field(j, "evidence_id", v.evidence_id);
  read_field(j, "node_id", v.node_id);
  read_field(j, "source", v.source);
  read_field(j, "summary", v.summary);
}

void to_json(Json& j, const IngestionLogEntry& v) {
  j = Json{{"source", v.source},
           {"search_task_id", v.search_task_id},
           {"code", v.code},
           {"message", v.message}};
}

void from_json(const Json& j, IngestionLogEntry& v) {
  read_field(j, "source", v.source);
  read_field(j, "search_task_id", v.search_task_id);
  read_field(j, "code", v.code);
  read_field(j, "message", v.message);
}

}  // namespace groundwork
