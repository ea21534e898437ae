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

#include "groundwork/report/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "groundwork/core/error.hpp"
#include "groundwork/core/hash.hpp"
#include "groundwork/core/text.hpp"

namespace groundwork {

namespace {

std::string excerpt_hash(const EvidenceUnit& unit) { return short_hash(unit.excerpt, 12); }

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.0f%%", v * 100.0);
  return buf;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string heading(int level, const std::string& title) {
  return std::string(static_cast<std::size_t>(std::clamp(level, 1, 6)), '#') + " " + title + "\n";
}

std::string cite_marks(const std::vector<int>& numbers) {
  std::string out;
  for (int n : numbers) out += "[" + std::to_string(n) + "]";
  return out;
}

}  // namespace

std::string format_reference(const EvidenceUnit& unit) {
  std::string out = unit.title.empty() ? unit.source : unit.title;
  out += ". " + unit.source;
  if (unit.timestamp > 0) out += " (" + format_iso8601(unit.timestamp).substr(0, 10) + ")";
  return out;
}

DraftResult draft(const Outline& outline, const Checklist& checklist,
                  const EvidenceStore& store, PolicyPort& policy,
                  const ComposeOptions& options) {
  DraftResult out;
  for (auto& content : compose(outline, store, checklist, options)) {
    const OutlineNode* node = outline.find(content.node_id);
    SectionDraft sd = policy.draft_section(*node, content.items, content.ranked);
    DraftSection section;
    section.node_id = node->id;
    section.title = node->title;
    section.depth = node->depth;
    auto path = outline.title_path(node->id);
    if (path.size() > 2) section.ancestors.assign(path.begin() + 1, path.end() - 1);
    section.candidate_citations = content.evidence_ids;
    int n = 0;
    for (auto& passage : sd.passages) {
      std::vector<Claim> kept;
      for (auto& claim : passage.claims) {
        std::erase_if(claim.evidence_ids,
                      [&](const std::string& id) { return !store.contains(id); });
        if (claim.evidence_ids.empty()) continue;
        claim.id = node->id + "#c" + std::to_string(++n);
        for (const auto& id : claim.evidence_ids) {
          const EvidenceUnit* u = store.find(id);
          out.citations.add(claim.id, id, u->source, excerpt_hash(*u), format_reference(*u));
        }
        kept.push_back(std::move(claim));
      }
      passage.claims = std::move(kept);
      if (passage.claims.empty() && !passage.gap && content.ranked.empty()) passage.gap = true;
      section.passages.push_back(std::move(passage));
    }
    if (section.passages.empty()) {
      Passage gap;
      gap.gap = true;
      gap.lead = "No audited evidence was found for \"" + node->title + "\".";
      section.passages.push_back(std::move(gap));
    }
    for (auto& viz : sd.visuals) {
      viz.node_id = node->id;
      section.visualization_specs.push_back(std::move(viz));
    }
    out.sections.push_back(std::move(section));
  }
  return out;
}

AuditBundle extract_evidence(const std::vector<DraftSection>& sections,
                             const EvidenceStore& store, const Outline& outline,
                             const RankOptions& rank, double threshold) {
  AuditBundle bundle;
  bundle.threshold = threshold;
  for (const auto& section : sections) {
    // Candidates: everything bound to the node or below it, not only top_k.
    const auto units = retrieve(store, outline, section.node_id, true);
    for (const auto& passage : section.passages) {
      for (const auto& claim : passage.claims) {
        AuditEntry entry;
        entry.claim_id = claim.id;
        entry.node_id = section.node_id;
        entry.claim_text = claim.text;
        const auto ranked = rank_critic(units, claim.text, rank);
        for (const auto& r : ranked) entry.candidates.push_back({r.unit.id, r.score});
        if (!ranked.empty()) {
          entry.selected = ranked.front().unit.id;
          entry.score = ranked.front().score;
        }
        entry.unsupported = ranked.empty() || entry.score < threshold;
        bundle.entries.push_back(std::move(entry));
      }
    }
  }
  return bundle;
}

Report write(const std::vector<DraftSection>& sections, const AuditBundle* audit,
             const EvidenceStore& store, PolicyPort& policy, const WriteOptions& options) {
  Report report;
  report.run_id = options.run_id;
  report.query = options.query;
  report.outline_version = options.outline_version;
  report.stop_reason = options.stop_reason;
  report.open_items = options.open_items;
  CitationSet final_citations;

  auto cite = [&](const std::string& locator, const std::string& evidence_id) -> int {
    const EvidenceUnit* u = store.find(evidence_id);
    if (!u) return 0;
    const auto idx = final_citations.add(locator, evidence_id, u->source, excerpt_hash(*u),
                                         format_reference(*u));
    return static_cast<int>(idx) + 1;
  };

  for (const auto& section : sections) {
    FinalSection fs;
    fs.node_id = section.node_id;
    fs.title = section.title;
    fs.depth = section.depth;
    fs.ancestors = section.ancestors;
    std::vector<std::string> leads;
    bool gap = !section.passages.empty();
    for (const auto& passage : section.passages) {
      if (!passage.lead.empty()) leads.push_back(passage.lead);
      gap = gap && passage.gap;
      for (const auto& claim : passage.claims) {
        FinalClaim fc;
        fc.id = claim.id;
        fc.category = claim.category;
        fc.text = claim.text;
        std::vector<std::string> evidence = claim.evidence_ids;
        if (audit) {
          const AuditEntry* entry = audit->find(claim.id);
          if (!entry || entry->unsupported) {
            if (options.unsupported == UnsupportedPolicy::kDrop) {
              ++report.dropped_claims;
              continue;
            }
            fc.text = policy.hedge(claim.text);
            fc.hedged = true;
            fc.score = entry ? entry->score : 0.0;
            fs.claims.push_back(std::move(fc));
            continue;
          }
          evidence = {*entry->selected};
          fc.score = entry->score;
        }
        for (const auto& id : evidence) {
          if (int n = cite(claim.id, id); n > 0 &&
              std::find(fc.citations.begin(), fc.citations.end(), n) == fc.citations.end()) {
            fc.citations.push_back(n);
          }
        }
        if (fc.citations.empty()) {
          fc.text = policy.hedge(claim.text);
          fc.hedged = true;
        }
        fs.claims.push_back(std::move(fc));
      }
    }
    fs.lead = text::join(leads, " ");
    fs.gap = gap;
    report.sections.push_back(std::move(fs));

    for (const auto& viz : section.visualization_specs) {
      VizSpec kept = viz;
      kept.data.clear();
      kept.evidence_ids.clear();
      for (const auto& row : viz.data) {
        VizRow r = row;
        std::erase_if(r.evidence_ids, [&](const std::string& id) { return !store.contains(id); });
        if (r.evidence_ids.empty()) continue;
        for (const auto& id : r.evidence_ids) {
          cite("viz:" + viz.node_id, id);
          if (std::find(kept.evidence_ids.begin(), kept.evidence_ids.end(), id) ==
              kept.evidence_ids.end()) {
            kept.evidence_ids.push_back(id);
          }
        }
        kept.data.push_back(std::move(r));
      }
      if (!kept.data.empty()) report.visuals.push_back(std::move(kept));
    }
  }
  for (std::size_t i = 0; i < final_citations.entries.size(); ++i) {
    final_citations.entries[i].number = static_cast<int>(i) + 1;
  }
  report.citations = std::move(final_citations.entries);
  return report;
}

std::string render_markdown(const Report& report) {
  std::ostringstream md;
  md << heading(1, report.query.empty() ? "Research Report" : report.query) << "\n";

  int claims = 0;
  int hedged = 0;
  int gaps = 0;
  for (const auto& s : report.sections) {
    claims += static_cast<int>(s.claims.size());
    for (const auto& c : s.claims) hedged += c.hedged ? 1 : 0;
    gaps += s.gap ? 1 : 0;
  }
  std::map<std::string, int> number_of;  // evidence id -> citation number
  for (const auto& c : report.citations) number_of[c.evidence_id] = c.number;

  md << heading(2, "Executive Summary");
  md << "This report covers " << report.sections.size() << " section(s) with " << claims
     << " claim(s) drawn from " << report.citations.size() << " cited source(s). ";
  if (hedged > 0) md << hedged << " claim(s) could not be verified and are marked as such. ";
  if (gaps > 0) md << gaps << " section(s) have no audited evidence. ";
  if (!report.stop_reason.empty()) md << "Research ended with: " << report.stop_reason << ".";
  md << "\n\n";

  md << heading(2, "Detailed Analysis");
  if (report.sections.empty()) {
    md << "> **Evidence gap:** the outline produced no sections.\n";
  }
  std::vector<std::string> open_headings;  // ancestor headings already emitted
  for (const auto& s : report.sections) {
    std::size_t shared = 0;
    while (shared < s.ancestors.size() && shared < open_headings.size() &&
           s.ancestors[shared] == open_headings[shared]) {
      ++shared;
    }
    open_headings.resize(shared);
    for (std::size_t i = shared; i < s.ancestors.size(); ++i) {
      md << "\n" << heading(3 + static_cast<int>(i), s.ancestors[i]);
      open_headings.push_back(s.ancestors[i]);
    }
    md << "\n" << heading(2 + std::max(1, s.depth), s.title);
    if (!s.lead.empty()) md << s.lead << "\n";
    if (s.gap) {
      md << "\n> **Evidence gap:** no audited evidence supports this section.\n";
    }
    if (!s.claims.empty()) md << "\n";
    for (const auto& c : s.claims) {
      md << "- <!-- claim:" << c.id << " -->";
      if (c.hedged) md << kHedgeMarker << " ";
      md << c.text;
      if (!c.citations.empty()) md << " " << cite_marks(c.citations);
      md << "\n";
    }
    for (const auto& viz : report.visuals) {
      if (viz.node_id != s.node_id) continue;
      md << "\n*" << viz.caption << "* (" << to_string(viz.kind) << ")\n\n";
      md << "| Label | Value | Unit | Sources |\n|---|---|---|---|\n";
      for (const auto& row : viz.data) {
        std::vector<int> nums;
        for (const auto& id : row.evidence_ids) {
          if (auto it = number_of.find(id); it != number_of.end()) nums.push_back(it->second);
        }
        md << "| " << row.label << " | " << format_value(row.value) << " | " << row.unit << " | "
           << cite_marks(nums) << " |\n";
      }
    }
  }
  md << "\n";

  md << heading(2, "Insights and Recommendations");
  bool any_insight = false;
  for (const auto& s : report.sections) {
    int supported = 0;
    for (const auto& c : s.claims) supported += c.hedged ? 0 : 1;
    if (supported == 0) continue;
    any_insight = true;
    md << "- " << s.title << ": " << supported
       << " supported finding(s); see the cited sources before acting on them.\n";
  }
  if (!any_insight) md << "- No supported findings are available to base recommendations on.\n";
  md << "\n";

  md << heading(2, "Confidence Assessment");
  // Tiers follow the audit score; hedged claims are always low confidence.
  auto tier_of = [](const FinalClaim& c) {
    if (c.hedged || c.score < 0.5) return 2;
    return c.score > 0.8 ? 0 : 1;
  };
  const char* tiers[] = {"High confidence (>80%)", "Medium confidence (50-80%)",
                         "Low confidence (<50%)"};
  for (int t = 0; t < 3; ++t) {
    md << "\n" << heading(3, tiers[t]);
    int count = 0;
    for (const auto& s : report.sections) {
      for (const auto& c : s.claims) {
        if (tier_of(c) != t) continue;
        md << "- " << c.id << " (" << percent(c.score) << ")\n";
        ++count;
      }
    }
    if (count == 0) md << "- none\n";
  }
  md << "\n";

  md << heading(2, "Knowledge Boundaries");
  bool any_boundary = false;
  for (const auto& s : report.sections) {
    if (s.gap) {
      md << "- Evidence gap: " << s.title << "\n";
      any_boundary = true;
    }
  }
  for (const auto& item : report.open_items) {
    md << "- Open checklist item: " << item << "\n";
    any_boundary = true;
  }
  if (hedged > 0) {
    md << "- " << hedged << " claim(s) lack sufficient supporting evidence.\n";
    any_boundary = true;
  }
  if (report.dropped_claims > 0) {
    md << "- " << report.dropped_claims << " unsupported claim(s) were removed.\n";
    any_boundary = true;
  }
  if (!any_boundary) md << "- No known gaps.\n";
  md << "\n";

  md << heading(2, "References");
  if (report.citations.empty()) md << "No sources were cited.\n";
  for (const auto& c : report.citations) {
    md << c.number << ". " << c.formatted << " <!-- evidence:" << c.evidence_id << " -->\n";
  }
  return md.str();
}

std::string render_structured(const Report& report) {
  return Json(report).dump(2) + "\n";
}

Report parse_report(const std::string& structured) {
  const Json j = parse_json(structured);
  if (j.value("schema", "") != "report/1") {
    throw Error(ErrorCode::kUnparseableOutput, "not a report/1 document");
  }
  return j.get<Report>();
}

LintResult lint_markdown(const std::string& markdown) {
  LintResult res;
  std::set<int> references;
  bool in_refs = false;
  std::istringstream in(markdown);
  std::string line;
  std::vector<std::pair<std::string, std::vector<int>>> cited;
  static const std::regex kClaim(R"(<!-- claim:([^ ]+) -->(.*)$)");
  static const std::regex kCite(R"(\[(\d+)\])");
  static const std::regex kRef(R"(^(\d+)\. )");
  while (std::getline(in, line)) {
    if (line.rfind("## ", 0) == 0) in_refs = line == "## References";
    std::smatch m;
    if (in_refs && std::regex_search(line, m, kRef)) {
      references.insert(std::stoi(m[1].str()));
      continue;
    }
    if (!std::regex_search(line, m, kClaim)) continue;
    ++res.claims;
    const std::string id = m[1].str();
    const std::string body = m[2].str();
    if (body.rfind(std::string(kHedgeMarker), 0) == 0) {
      ++res.hedged;
      continue;
    }
    std::vector<int> nums;
    for (auto it = std::sregex_iterator(body.begin(), body.end(), kCite);
         it != std::sregex_iterator(); ++it) {
      nums.push_back(std::stoi((*it)[1].str()));
    }
    if (nums.empty()) {
      res.problems.push_back("claim " + id + " has neither citation nor hedge marker");
      continue;
    }
    cited.emplace_back(id, nums);
  }
  for (const auto& [id, nums] : cited) {
    bool ok = true;
    for (int n : nums) {
      if (!references.count(n)) {
        res.problems.push_back("claim " + id + " cites [" + std::to_string(n) +
                               "] which is not in References");
        ok = false;
      }
    }
    if (ok) ++res.cited;
  }
  res.ok = res.problems.empty();
  return res;
}

}  // namespace groundwork
