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
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "groundwork/checklist/types.hpp"
#include "groundwork/evidence/store.hpp"
#include "groundwork/evidence/types.hpp"
#include "groundwork/providers/ports.hpp"

namespace groundwork {

/// confidence = prior(source type) x factor(fetch status).
struct ConfidenceModel {
  std::map<std::string, double> priors{{"government", 0.9},   {"academic", 0.85},
                                       {"organization", 0.75}, {"commercial", 0.6},
                                       {"fixture", 0.7},       {"other", 0.5}};
  double default_prior = 0.5;
  std::map<std::string, double> status_factors{{"ok", 1.0}, {"summary-fallback", 0.8}};

  double prior(std::string_view source_type) const;
  double factor(std::string_view status) const;
};

/// "ev-" followed by a hash of the normalized text.
std::string evidence_id(std::string_view normalized_text);

/// One unit per distinct content id, in first-seen order. A summarizer that
/// throws or returns nothing leaves the excerpt as summary, sets
/// summary_fallback and logs the failure.
std::vector<EvidenceUnit> structure(const std::vector<NormalizedDoc>& docs, PolicyPort& policy,
                                    const ConfidenceModel& model = {},
                                    std::vector<IngestionLogEntry>* log = nullptr,
                                    std::size_t excerpt_chars = 1200);

inline constexpr std::string_view kHoldingTitle = "Unassigned evidence";

struct BindingOptions {
  /// Minimum share of a node title's terms that must appear in the unit.
  double threshold = 0.3;
};

/// Share of the node title's terms found in the unit's title and excerpt.
double binding_score(const OutlineNode& node, const EvidenceUnit& unit);

/// Binds each unit to the best-matching planned node (ties go to the node
/// earliest in DFS order). A section match gets a new evidence node under
/// it; no match above threshold sends the unit to the holding node. Units'
/// bound_nodes are filled in place and the outline version is bumped when
/// any unit is bound.
Outline refine_outline(const Outline& outline, std::vector<EvidenceUnit>& units,
                       const BindingOptions& options = {});

/// Units bound to `node_id` (and to its descendants if requested), by id.
std::vector<EvidenceUnit> retrieve(const EvidenceStore& store, const Outline& outline,
                                   std::string_view node_id, bool include_descendants = false);

struct RankWeights {
  double relevance = 0.4;
  double quality = 0.3;
  double timeliness = 0.15;
  double consistency = 0.15;

  /// Throws Error(kInvalidWeights) unless all weights are >= 0 and sum to 1.
  void validate() const;
};

struct RankOptions {
  RankWeights weights;
  double half_life_days = 180.0;
  double agreement_threshold = 0.3;  // Jaccard needed for two units to agree
  Timestamp now = 0;
};

struct RankComponents {
  double relevance = 0.0;
  double quality = 0.0;
  double timeliness = 0.0;
  double consistency = 0.0;
};

struct RankedUnit {
  EvidenceUnit unit;
  double score = 0.0;
  RankComponents components;
};

/// Terms a unit is compared on: title plus excerpt.
std::set<std::string> unit_terms(const EvidenceUnit& unit);

/// Scores every candidate against `context` and sorts by score descending,
/// ties by id ascending.
std::vector<RankedUnit> rank_critic(const std::vector<EvidenceUnit>& candidates,
                                    std::string_view context, const RankOptions& options);

/// Per-node input to drafting.
struct NodeContent {
  std::string node_id;
  bool gap = true;
  std::vector<std::string> evidence_ids;  // top_k, best first
  std::vector<double> scores;
  std::vector<EvidenceUnit> ranked;
  std::string context;
  std::vector<ChecklistItem> items;
};

struct ComposeOptions {
  std::size_t top_k = 5;
  bool include_descendants = false;
  RankOptions rank;
};

/// Checklist items anchoring `node_id`: its own, else the nearest ancestor's.
std::vector<ChecklistItem> items_for_node(const Outline& outline, const Checklist& checklist,
                                          std::string_view node_id);

/// Ranking context for a node: its title plus the goals of its items.
std::string node_context(const OutlineNode& node, const std::vector<ChecklistItem>& items);

/// One entry per leaf of the frozen outline, holding its top_k evidence or a
/// gap marker. Keys follow DFS order.
std::vector<NodeContent> compose(const Outline& outline, const EvidenceStore& store,
                                 const Checklist& checklist, const ComposeOptions& options);

}  // namespace groundwork
