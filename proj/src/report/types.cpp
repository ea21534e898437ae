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

#include "groundwork/report/types.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "groundwork/core/error.hpp"

namespace groundwork {

namespace {

constexpr std::array<std::pair<VizKind, std::string_view>, 4> kVizKinds{{
    {VizKind::kTable, "table"},
    {VizKind::kBar, "bar"},
    {VizKind::kLine, "line"},
    {VizKind::kTimeline, "timeline"},
}};

}  // namespace

std::string_view to_string(VizKind k) {
  for (const auto& [e, name] : kVizKinds) {
    if (e == k) return name;
  }
  return "table";
}

VizKind viz_kind_from_string(std::string_view s) {
  for (const auto& [e, name] : kVizKinds) {
    if (name == s) return e;
  }
  throw Error(ErrorCode::kUnparseableOutput, "unknown viz kind: " + std::string(s));
}

std::size_t CitationSet::add(std::string_view locator, std::string_view evidence_id,
                             std::string_view source, std::string_view excerpt_hash,
                             std::string_view formatted) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto& e = entries[i];
    if (e.source == source && e.excerpt_hash == excerpt_hash) {
      if (std::find(e.locators.begin(), e.locators.end(), locator) ==
          e.locators.end()) {
        e.locators.emplace_back(locator);
      }
      return i;
    }
  }
  CitationEntry e;
  e.evidence_id = std::string(evidence_id);
  e.source = std::string(source);
  e.excerpt_hash = std::string(excerpt_hash);
  e.formatted = std::string(formatted);
  e.locators.emplace_back(locator);
  entries.push_back(std::move(e));
  return entries.size() - 1;
}

const CitationEntry* CitationSet::find_evidence(std::string_view evidence_id) const {
  for (const auto& e : entries) {
    if (e.evidence_id == evidence_id) return &e;
  }
  return nullptr;
}

const AuditEntry* AuditBundle::find(std::string_view claim_id) const {
  for (const auto& e : entries) {
    if (e.claim_id == claim_id) return &e;
  }
  return nullptr;
}

void to_json(Json& j, const Claim& v) {
  j = Json{{"id", v.id},
           {"text", v.text},
           {"category", v.category},
           {"evidence_ids", v.evidence_ids}};
}

void from_json(const Json& j, Claim& v) {
  read_field(j, "id", v.id);
  read_field(j, "text", v.text);
  read_field(j, "category", v.category);
  read_field(j, "evidence_ids", v.evidence_ids);
}

void to_json(Json& j, const Passage& v) {
  j = Json{{"lead", v.lead}, {"claims", v.claims}, {"gap", v.gap}};
}

void from_json(const Json& j, Passage& v) {
  read_field(j, "lead", v.lead);
  read_field(j, "claims", v.claims);
  read_field(j, "gap", v.gap);
}

void to_json(Json& j, const VizRow& v) {
  j = Json{{"label", v.label},
           {"value", v.value},
           {"unit", v.unit},
           {"evidence_ids", v.evidence_ids}};
}

void from_json(const Json& j, VizRow& v) {
  read_field(j, "label", v.label);
  read_field(j, "value", v.value);
  read_field(j, "unit", v.unit);
  read_field(j, "evidence_ids", v.evidence_ids);
}

void to_json(Json& j, const VizSpec& v) {
  j = Json{{"node_id", v.node_id},
           {"kind", to_string(v.kind)},
           {"data", v.data},
           {"evidence_ids", v.evidence_ids},
           {"caption", v.caption}};
}

void from_json(const Json& j, VizSpec& v) {
  read_field(j, "node_id", v.node_id);
  v.kind = viz_kind_from_string(j.value("kind", std::string("table")));
  read_field(j, "data", v.data);
  read_field(j, "evidence_ids", v.evidence_ids);
  read_field(j, "caption", v.caption);
}

void to_json(Json& j, const DraftSection& v) {
  j = Json{{"node_id", v.node_id},
           {"title", v.title},
           {"depth", v.depth},
           {"ancestors", v.ancestors},
           {"passages", v.passages},
           {"visualization_specs", v.visualization_specs},
           {"candidate_citations", v.candidate_citations}};
}

void from_json(const Json& j, DraftSection& v) {
  read_field(j, "node_id", v.node_id);
  read_field(j, "title", v.title);
  read_field(j, "depth", v.depth);
  read_field(j, "ancestors", v.ancestors);
  read_field(j, "passages", v.passages);
  read_field(j, "visualization_specs", v.visualization_specs);
  read_field(j, "candidate_citations", v.candidate_citations);
}

void to_json(Json& j, const CitationEntry& v) {
  j = Json{{"number", v.number},
           {"evidence_id", v.evidence_id},
           {"source", v.source},
           {"excerpt_hash", v.excerpt_hash},
           {"formatted", v.formatted},
           {"locators", v.locators}};
}

void from_json(const Json& j, CitationEntry& v) {
  read_field(j, "number", v.number);
  read_field(j, "evidence_id", v.evidence_id);
  read_field(j, "source", v.source);
  read_field(j, "excerpt_hash", v.excerpt_hash);
  read_field(j, "formatted", v.formatted);
  read_field(j, "locators", v.locators);
}

void to_json(Json& j, const ScoredCandidate& v) {
  j = Json{{"evidence_id", v.evidence_id}, {"score", v.score}};
}

void from_json(const Json& j, ScoredCandidate& v) {
  read_field(j, "evidence_id", v.evidence_id);
  read_field(j, "score", v.score);
}

void to_json(Json& j, const AuditEntry& v) {
  j = Json{{"claim_id", v.claim_id},
           {"node_id", v.node_id},
           {"claim_text", v.claim_text},
           {"selected", v.selected},
           {"score", v.score},
           {"unsupported", v.unsupported},
           {"candidates", v.candidates}};
}

void from_json(const Json& j, AuditEntry& v) {
  read_field(j, "claim_id", v.claim_id);
  read_field(j, "node_id", v.node_id);
  read_field(j, "claim_text", v.claim_text);
  v.selected = optional_field<std::string>(j, "selected");
  read_field(j, "score", v.score);
  read_field(j, "unsupported", v.unsupported);
  read_field(j, "candidates", v.candidates);
}

void to_json(Json& j, const AuditBundle& v) {
  j = Json{{"threshold", v.threshold}, {"entries", v.entries}};
}

void from_json(const Json& j, AuditBundle& v) {
  read_field(j, "threshold", v.threshold);
  read_field(j, "entries", v.entries);
}

void to_json(Json& j, const FinalClaim& v) {
  j = Json{{"id", v.id},
           {"text", v.text},
           {"category", v.category},
           {"citations", v.citations},
           {"hedged", v.hedged},
           {"score", v.score}};
}

void from_json(const Json& j, FinalClaim& v) {
  read_field(j, "id", v.id);
  read_field(j, "text", v.text);
  read_field(j, "category", v.category);
  read_field(j, "citations", v.citations);
  read_field(j, "hedged", v.hedged);
  read_field(j, "score", v.score);
}

void to_json(Json& j, const FinalSection& v) {
  j = Json{{"node_id", v.node_id},
           {"title", v.title},
           {"depth", v.depth},
           {"ancestors", v.ancestors},
           {"lead", v.lead},
           {"claims", v.claims},
           {"gap", v.gap}};
}

void from_json(const Json& j, FinalSection& v) {
  read_field(j, "node_id", v.node_id);
  read_field(j, "title", v.title);
  read_field(j, "depth", v.depth);
  read_field(j, "ancestors", v.ancestors);
  read_field(j, "lead", v.lead);
  read_field(j, "claims", v.claims);
  read_field(j, "gap", v.gap);
}

void to_json(Json& j, const Report& v) {
  j = Json{{"schema", "report/1"},
           {"run_id", v.run_id},
           {"query", v.query},
           {"outline_version", v.outline_version},
           {"stop_reason", v.stop_reason},
           {"sections", v.sections},
           {"visuals", v.visuals},
           {"citations", v.citations},
           {"open_items", v.open_items},
           {"dropped_claims", v.dropped_claims}};
}

void from_json(const Json& j, Report& v) {
  read_field(j, "run_id", v.run_id);
  read_field(j, "query", v.query);
  read_field(j, "outline_version", v.outline_version);
  read_field(j, "stop_reason", v.stop_reason);
  read_field(j, "sections", v.sections);
  read_field(j, "visuals", v.visuals);
  read_field(j, "citations", v.citations);
  read_field(j, "open_items", v.open_items);
  read_field(j, "dropped_claims", v.dropped_claims);
}

}  // namespace groundwork
