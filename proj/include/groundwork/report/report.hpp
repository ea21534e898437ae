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

#include <string>
#include <vector>

#include "groundwork/agent/config.hpp"
#include "groundwork/checklist/types.hpp"
#include "groundwork/evidence/audit.hpp"
#include "groundwork/evidence/store.hpp"
#include "groundwork/providers/ports.hpp"
#include "groundwork/report/types.hpp"

namespace groundwork {

struct DraftResult {
  std::vector<DraftSection> sections;  // one per leaf, in DFS order
  CitationSet citations;               // candidates, numbered later
};

/// Formatted reference line for a unit.
std::string format_reference(const EvidenceUnit& unit);

/// Draft(O_t, L_t, M_t) with L_t taken to be the checklist. Claims get ids
/// "<node id>#c<n>"; evidence ids the store does not hold are discarded, and a
/// claim left with none is dropped from the draft.
DraftResult draft(const Outline& outline, const Checklist& checklist,
                  const EvidenceStore& store, PolicyPort& policy,
                  const ComposeOptions& options);

/// Re-ranks every claim's node evidence against the claim text. A claim
/// whose best score is below `threshold` (or that has no candidates) is
/// flagged unsupported.
AuditBundle extract_evidence(const std::vector<DraftSection>& sections,
                             const EvidenceStore& store, const Outline& outline,
                             const RankOptions& rank, double threshold);

struct WriteOptions {
  UnsupportedPolicy unsupported = UnsupportedPolicy::kHedge;
  std::string run_id;
  std::string query;
  int outline_version = 0;
  std::string stop_reason;
  std::vector<std::string> open_items;
};

/// Produces (T*, V*, C*). With an audit, supported claims cite their selected
/// unit and unsupported ones are hedged or dropped. Without one (evidence
/// audit disabled) claims cite the evidence they were drafted from.
/// Citations are numbered by first appearance; visual rows without
/// resolvable evidence are removed, as are visuals left empty.
Report write(const std::vector<DraftSection>& sections, const AuditBundle* audit,
             const EvidenceStore& store, PolicyPort& policy, const WriteOptions& options);

std::string render_markdown(const Report& report);
/// Lossless JSON form; parse_report(render_structured(r)) == r.
std::string render_structured(const Report& report);
Report parse_report(const std::string& structured);

struct LintResult {
  bool ok = true;
  int claims = 0;
  int cited = 0;
  int hedged = 0;
  std::vector<std::string> problems;
};

/// Checks the rendered markdown: every claim marker carries a citation that
/// appears in References, or the hedge marker.
LintResult lint_markdown(const std::string& markdown);

inline constexpr std::string_view kHedgeMarker = "*(unverified)*";

}  // namespace groundwork
