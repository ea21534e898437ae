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

#include "groundwork/evidence/audit.hpp"

#include <algorithm>
#include <cmath>

#include "groundwork/core/error.hpp"
#include "groundwork/core/hash.hpp"
#include "groundwork/core/text.hpp"

namespace groundwork {

double ConfidenceModel::prior(std::string_view source_type) const {
  auto it = priors.find(std::string(source_type));
  return std::clamp(it == priors.end() ? default_prior : it->second, 0.0, 1.0);
}

double ConfidenceModel::factor(std::string_view status) const {
  auto it = status_factors.find(std::string(status));
  return std::clamp(it == status_factors.end() ? 1.0 : it->second, 0.0, 1.0);
}

std::string evidence_id(std::string_view normalized_text) {
  return "ev-" + short_hash(normalized_text);
}

std::vector<EvidenceUnit> structure(const std::vector<NormalizedDoc>& docs, PolicyPort& policy,
                                    const ConfidenceModel& model,
                                    std::vector<IngestionLogEntry>* log,
                                    std::size_t excerpt_chars) {
  std::vector<EvidenceUnit> units;
  std::set<std::string> seen;
  for (const auto& doc : docs) {
    const std::string id = evidence_id(doc.text);
    if (!seen.insert(id).second) continue;
    EvidenceUnit unit;
    unit.id = id;
    unit.source = doc.source;
    unit.title = doc.title;
    unit.timestamp = doc.published.value_or(doc.fetched_at);
    unit.excerpt = text::truncate_tail(doc.text, excerpt_chars);
    unit.provenance = {doc.search_task_id, doc.step_index};
    std::string failure;
    try {
      unit.summary = policy.summarize(doc);
      if (unit.summary.empty()) failure = "summarizer returned no text";
    } catch (const std::exception& e) {
      failure = e.what();
    }
    if (!failure.empty()) {
      unit.summary = unit.excerpt + " (source: " + unit.source + ")";
      unit.summary_fallback = true;
      if (log) log->push_back({doc.source, doc.search_task_id, "summarizer-failure", failure});
    }
    unit.confidence = model.prior(doc.source_type) *
                      model.factor(unit.summary_fallback ? "summary-fallback" : "ok");
    units.push_back(std::move(unit));
  }
  return units;
}

std::set<std::string> unit_terms(const EvidenceUnit& unit) {
  return text::term_set(unit.title + " " + unit.excerpt);
}

double binding_score(const OutlineNode& node, const EvidenceUnit& unit) {
  return text::term_coverage(text::term_set(node.title), unit_terms(unit));
}

Outline refine_outline(const Outline& outline, std::vector<EvidenceUnit>& units,
                       const BindingOptions& options) {
  Outline out = outline;
  if (units.empty()) return out;
  const OutlineNode* root = out.root();
  if (!root) throw Error(ErrorCode::kPrecondition, "outline has no root");
  const std::string root_id = root->id;

  // Candidates are planned nodes only, in DFS order so that ties resolve to
  // the earliest node.
  std::vector<std::string> candidates;
  for (const auto& id : out.dfs_order()) {
    const auto kind = out.find(id)->kind;
    if (kind == NodeKind::kLeaf || kind == NodeKind::kSection) candidates.push_back(id);
  }

  auto child_order = [&](const std::string& parent) {
    int next = 0;
    for (const auto* c : out.children(parent)) next = std::max(next, c->order + 1);
    return next;
  };
  auto bind = [&](const std::string& node_id, EvidenceUnit& unit) {
    auto* node = out.find(node_id);
    if (std::find(node->bound_evidence.begin(), node->bound_evidence.end(), unit.id) ==
        node->bound_evidence.end()) {
      node->bound_evidence.push_back(unit.id);
    }
    unit.bound_nodes = {node_id};
  };

  for (auto& unit : units) {
    const auto terms = unit_terms(unit);
    std::string best;
    double best_score = -1.0;
    for (const auto& id : candidates) {
      const double s = text::term_coverage(text::term_set(out.find(id)->title), terms);
      if (s > best_score) {
        best_score = s;
        best = id;
      }
    }
    if (best.empty() || best_score < options.threshold) {
      std::string holding_id;
      for (const auto* c : out.children(root_id)) {
        if (c->kind == NodeKind::kHolding) holding_id = c->id;
      }
      if (holding_id.empty()) {
        OutlineNode holding;
        holding.title = std::string(kHoldingTitle);
        holding.id = Outline::make_node_id(out.title_path(root_id), holding.title);
        holding.parent = root_id;
        holding.order = child_order(root_id);
        holding.depth = 1;
        holding.kind = NodeKind::kHolding;
        holding_id = holding.id;
        out.nodes.push_back(std::move(holding));
      }
      bind(holding_id, unit);
      continue;
    }
    const OutlineNode* target = out.find(best);
    if (target->kind == NodeKind::kLeaf) {
      bind(best, unit);
      continue;
    }
    // Section match: the unit gets its own evidence node under the section.
    const std::string title = unit.title.empty() ? unit.source : unit.title;
    const std::string node_id = Outline::make_node_id(out.title_path(best), title);
    if (!out.find(node_id)) {
      OutlineNode ev;
      ev.id = node_id;
      ev.title = title;
      ev.parent = best;
      ev.order = child_order(best);
      ev.depth = target->depth + 1;
      ev.kind = NodeKind::kEvidence;
      out.nodes.push_back(std::move(ev));
    }
    bind(node_id, unit);
  }
  ++out.version;
  return out;
}

std::vector<EvidenceUnit> retrieve(const EvidenceStore& store, const Outline& outline,
                                   std::string_view node_id, bool include_descendants) {
  std::set<std::string> ids;
  auto collect = [&](std::string_view id) {
    for (const auto& e : store.bound_to(id)) ids.insert(e);
  };
  collect(node_id);
  if (include_descendants) {
    for (const auto& d : outline.descendants(node_id)) collect(d);
  }
  std::vector<EvidenceUnit> out;
  for (const auto& id : ids) {
    if (const auto* u = store.find(id)) out.push_back(*u);
  }
  return out;
}

void RankWeights::validate() const {
  for (double w : {relevance, quality, timeliness, consistency}) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::kInvalidWeights, "rank weights must be non-negative");
    }
  }
  const double sum = relevance + quality + timeliness + consistency;
  if (std::abs(sum - 1.0) > 1e-6) {
    throw Error(ErrorCode::kInvalidWeights,
                "rank weights must sum to 1 (got " + std::to_string(sum) + ")");
  }
}

std::vector<RankedUnit> rank_critic(const std::vector<EvidenceUnit>& candidates,
                                    std::string_view context, const RankOptions& options) {
  options.weights.validate();
  const auto context_terms = text::term_set(context);
  std::vector<std::set<std::string>> terms;
  terms.reserve(candidates.size());
  for (const auto& c : candidates) terms.push_back(unit_terms(c));

  const auto n = candidates.size();
  std::vector<RankedUnit> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& unit = candidates[i];
    RankComponents c;
    c.relevance = text::term_coverage(context_terms, terms[i]);
    c.quality = std::clamp(unit.confidence, 0.0, 1.0);
    const double age_days =
        std::max<double>(0.0, static_cast<double>(options.now - unit.timestamp)) /
        static_cast<double>(kSecondsPerDay);
    c.timeliness = options.half_life_days > 0 ? std::pow(0.5, age_days / options.half_life_days)
                                              : 1.0;
    if (n > 1) {
      std::size_t agree = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || candidates[j].source == unit.source) continue;
        if (text::jaccard(terms[i], terms[j]) >= options.agreement_threshold) ++agree;
      }
      c.consistency = static_cast<double>(agree) / static_cast<double>(n - 1);
    }
    const auto& w = options.weights;
    const double score = w.relevance * c.relevance + w.quality * c.quality +
                         w.timeliness * c.timeliness + w.consistency * c.consistency;
    out.push_back({unit, score, c});
  }
  std::sort(out.begin(), out.end(), [](const RankedUnit& a, const RankedUnit& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.unit.id < b.unit.id;
  });
  return out;
}

std::vector<ChecklistItem> items_for_node(const Outline& outline, const Checklist& checklist,
                                          std::string_view node_id) {
  const OutlineNode* node = outline.find(node_id);
  while (node && node->bound_items.empty() && node->parent) node = outline.find(*node->parent);
  std::vector<ChecklistItem> out;
  if (!node) return out;
  for (const auto& id : node->bound_items) {
    if (const auto* item = checklist.find(id)) out.push_back(*item);
  }
  return out;
}

std::string node_context(const OutlineNode& node, const std::vector<ChecklistItem>& items) {
  std::string ctx = node.title;
  for (const auto& item : items) {
    if (item.goal != node.title) ctx += " " + item.goal;
  }
  return ctx;
}

std::vector<NodeContent> compose(const Outline& outline, const EvidenceStore& store,
                                 const Checklist& checklist, const ComposeOptions& options) {
  std::vector<NodeContent> out;
  for (const auto& leaf : outline.leaves()) {
    const OutlineNode* node = outline.find(leaf);
    NodeContent content;
    content.node_id = leaf;
    content.items = items_for_node(outline, checklist, leaf);
    content.context = node_context(*node, content.items);
    const auto candidates = retrieve(store, outline, leaf, options.include_descendants);
    auto ranked = rank_critic(candidates, content.context, options.rank);
    if (ranked.size() > options.top_k) ranked.resize(options.top_k);
    for (auto& r : ranked) {
      content.evidence_ids.push_back(r.unit.id);
      content.scores.push_back(r.score);
      content.ranked.push_back(std::move(r.unit));
    }
    content.gap = content.ranked.empty();
    out.push_back(std::move(content));
  }
  return out;
}

}  // namespace groundwork
