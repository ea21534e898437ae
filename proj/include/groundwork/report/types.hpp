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

/// A checkable assertion inside a drafted passage.
struct Claim {
  std::string id;
  std::string text;
  std::string category;  // cost, risk, temporal, quantitative, finding
  std::vector<std::string> evidence_ids;

  bool operator==(const Claim&) const = default;
};

struct Passage {
  std::string lead;
  std::vector<Claim> claims;
  bool gap = false;

  bool operator==(const Passage&) const = default;
};

enum class VizKind { kTable, kBar, kLine, kTimeline };

std::string_view to_string(VizKind k);
VizKind viz_kind_from_string(std::string_view s);

struct VizRow {
  std::string label;
  double value = 0.0;
  std::string unit;
  std::vector<std::string> evidence_ids;

  bool operator==(const VizRow&) const = default;
};

/// Declarative chart or table; every row must trace to evidence.
struct VizSpec {
  std::string node_id;
  VizKind kind = VizKind::kTable;
  std::vector<VizRow> data;
  std::vector<std::string> evidence_ids;
  std::string caption;

  bool operator==(const VizSpec&) const = default;
};

struct DraftSection {
  std::string node_id;
  std::string title;
  int depth = 0;
  std::vector<std::string> ancestors;  // titles between the root and this node
  std::vector<Passage> passages;
  std::vector<VizSpec> visualization_specs;
  std::vector<std::string> candidate_citations;

  bool operator==(const DraftSection&) const = default;
};

struct CitationEntry {
  int number = 0;  // assigned at write time, by first appearance
  std::string evidence_id;
  std::string source;
  std::string excerpt_hash;
  std::string formatted;
  std::vector<std::string> locators;

  bool operator==(const CitationEntry&) const = default;
};

/// Citations deduplicated by (source, excerpt hash).
struct CitationSet {
  std::vector<CitationEntry> entries;

  /// Adds `locator` to the entry for (source, excerpt_hash), creating it if
  /// needed. Returns the entry index.
  std::size_t add(std::string_view locator, std::string_view evidence_id,
                  std::string_view source, std::string_view excerpt_hash,
                  std::string_view formatted);
  const CitationEntry* find_evidence(std::string_view evidence_id) const;

  bool operator==(const CitationSet&) const = default;
};

struct ScoredCandidate {
  std::string evidence_id;
  double score = 0.0;

  bool operator==(const ScoredCandidate&) const = default;
};

struct AuditEntry {
  std::string claim_id;
  std::string node_id;
  std::string claim_text;
  std::optional<std::string> selected;
  double score = 0.0;
  bool unsupported = false;
  std::vector<ScoredCandidate> candidates;

  bool operator==(const AuditEntry&) const = default;
};

struct AuditBundle {
  double threshold = 0.0;
  std::vector<AuditEntry> entries;

  const AuditEntry* find(std::string_view claim_id) const;

  bool operator==(const AuditBundle&) const = default;
};

struct FinalClaim {
  std::string id;
  std::string text;
  std::string category;
  std::vector<int> citations;
  bool hedged = false;
  double score = 0.0;

  bool operator==(const FinalClaim&) const = default;
};

struct FinalSection {
  std::string node_id;
  std::string title;
  int depth = 0;
  std::vector<std::string> ancestors;
  std::string lead;
  std::vector<FinalClaim> claims;
  bool gap = false;

  bool operator==(const FinalSection&) const = default;
};

/// Finalized deliverable: sections, visuals and citations.
struct Report {
  std::string run_id;
  std::string query;
  int outline_version = 0;
  std::string stop_reason;
  std::vector<FinalSection> sections;
  std::vector<VizSpec> visuals;
  std::vector<CitationEntry> citations;
  std::vector<std::string> open_items;
  int dropped_claims = 0;

  bool operator==(const Report&) const = default;
};

void to_json(Json& j, const Claim& v);
void from_json(const Json& j, Claim& v);
void to_json(Json& j, const Passage& v);
void from_json(const Json& j, Passage& v);
void to_json(Json& j, const VizRow& v);
void from_json(const Json& j, VizRow& v);
void to_json(Json& j, const VizSpec& v);
void from_json(const Json& j, VizSpec& v);
void to_json(Json& j, const DraftSection& v);
void from_json(const Json& j, DraftSection& v);
void to_json(Json& j, const CitationEntry& v);
void from_json(const Json& j, CitationEntry& v);
void to_json(Json& j, const ScoredCandidate& v);
void from_json(const Json& j, ScoredCandidate& v);
void to_json(Json& j, const AuditEntry& v);
void from_json(const Json& j, AuditEntry& v);
void to_json(Json& j, const AuditBundle& v);
void from_json(const Json& j, AuditBundle& v);
void to_json(Json& j, const FinalClaim& v);
void from_json(const Json& j, FinalClaim& v);
void to_json(Json& j, const FinalSection& v);
void from_json(const Json& j, FinalSection& v);
void to_json(Json& j, const Report& v);
void from_json(const Json& j, Report& v);

}  // namespace groundwork
