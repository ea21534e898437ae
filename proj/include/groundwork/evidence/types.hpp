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
#include <vector>

#include "groundwork/core/json.hpp"
#include "groundwork/core/time.hpp"

namespace groundwork {

/// One tool output before auditing. `error_code` is set iff !ok.
struct RawResult {
  std::string source;
  Timestamp fetched_at = 0;
  bool ok = true;
  std::string error_code;
  std::optional<std::string> title;
  std::string body;
  std::string search_task_id;
  int step_index = 0;
  std::optional<Timestamp> published;

  bool operator==(const RawResult&) const = default;
};

struct NormalizedDoc {
  std::string source;       // canonical URL or id
  std::string source_type;  // key into the confidence prior map
  std::string title;
  std::string text;
  Timestamp fetched_at = 0;
  std::optional<Timestamp> published;
  std::string search_task_id;
  int step_index = 0;

  bool operator==(const NormalizedDoc&) const = default;
};

struct Provenance {
  std::string search_task_id;
  int step_index = 0;

  bool operator==(const Provenance&) const = default;
};

/// Audited, deduplicated retrieval fragment. `id` hashes the normalized text.
struct EvidenceUnit {
  std::string id;
  std::string source;
  std::string title;
  Timestamp timestamp = 0;
  double confidence = 0.0;
  std::string summary;
  std::string excerpt;
  std::vector<std::string> bound_nodes;
  Provenance provenance;
  bool summary_fallback = false;

  bool operator==(const EvidenceUnit&) const = default;
};

/// Compressed view of a unit as it appears in a workspace.
struct EvidenceSummary {
  std::string evidence_id;
  std::string node_id;
  std::string source;
  std::string summary;

  bool operator==(const EvidenceSummary&) const = default;
};

struct IngestionLogEntry {
  std::string source;
  std::string search_task_id;
  std::string code;
  std::string message;

  bool operator==(const IngestionLogEntry&) const = default;
};

void to_json(Json& j, const RawResult& v);
void from_json(const Json& j, RawResult& v);
void to_json(Json& j, const NormalizedDoc& v);
void from_json(const Json& j, NormalizedDoc& v);
void to_json(Json& j, const EvidenceUnit& v);
void from_json(const Json& j, EvidenceUnit& v);
void to_json(Json& j, const EvidenceSummary& v);
void from_json(const Json& j, EvidenceSummary& v);
void to_json(Json& j, const IngestionLogEntry& v);
void from_json(const Json& j, IngestionLogEntry& v);

}  // namespace groundwork
