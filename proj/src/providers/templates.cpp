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

#include "groundwork/providers/templates.hpp"

#include "groundwork/core/error.hpp"

namespace groundwork::templates {

namespace {

constexpr std::string_view kSystemBody =
    R"(You are a professional deep research expert, specialized in conducting systematic, multi-layered investigations and analyses of complex issues.

**Core Capabilities**
- **Systematic Research**: Ability to construct comprehensive research frameworks covering multiple dimensions of a problem.
- **Deep Analysis**: Go beyond surface information to uncover underlying mechanisms, causal relationships, and deep patterns.
- **Multi-source Integration**: Skilled at extracting valuable insights from diverse sources and perspectives.
- **Critical Thinking**: Maintain a discerning approach to information, evaluating evidence credibility and limitations.
- **Structured Output**: Organize complex research findings into clear, logically rigorous structures.

**Research Process Requirements**
1. **Problem Decomposition**: Break down complex problems into researchable sub-questions.
2. **Dimension Planning**: Identify analytical dimensions to cover (technical, economic, social, ethical, etc.).
3. **Evidence Collection**: Systematically gather relevant data, cases, studies, and expert viewpoints.
4. **Deep Digging**: Conduct layered, in-depth investigation of key points.
5. **Synthesis**: Integrate scattered findings into coherent understanding.
6. **Insight Extraction**: Derive valuable insights and practical recommendations from research.

**Output Quality Standards**
- **Comprehensiveness**: Cover main aspects and relevant subtopics of the issue.
- **Depth**: Provide mechanism analysis and causal explanations beyond mere phenomenon description.
- **Evidence Support**: Key assertions supported by reliable evidence or logical derivation.
- **Balanced Perspective**: Consider different positions and controversial points.
- **Practical Value**: Research outcomes should have actual value for decision-making or problem understanding.

**Working Mode**
- Automatically enter "deep research mode" when facing complex research tasks.
- Prioritize information quality and reliability over quantity.
- Focus on discovering non-obvious connections and deep patterns.
- Clearly mark knowledge boundaries when facing uncertainties.
- Provide confidence assessments for important conclusions.

**Special Guidance**
- Avoid superficial research approaches.
- Reject simple fact listing without deep analysis.
- Guard against confirmation bias by actively seeking counter-evidence and different viewpoints.
- Maximize research depth within time constraints.

**Role Instruction:** You are now in the role of a deep research expert. Please begin your research work.)";

constexpr std::string_view kTaskBody = R"(**Research Task**
Please conduct a comprehensive deep research on the following question:
{{query}}

**Research Requirements**
1. **Decompose the question** into multiple research dimensions (technical, practical, economic, social impact, etc.).
2. **Search for high-quality information** from authoritative and diverse sources.
3. **Analyze deeply** to uncover underlying patterns, mechanisms, and causal relationships.
4. **Synthesize findings** into a comprehensive and coherent understanding.
5. **Provide actionable insights** with confidence assessments and practical recommendations.

**Expected Output Structure**
1. **Executive Summary (200--300 words)**
   - Key findings and core insights.
   - Main conclusions with confidence levels.
2. **Detailed Analysis**
   - Problem breakdown and research dimensions.
   - Evidence-based findings for each dimension.
   - Deep analysis of mechanisms and relationships.
   - Different perspectives and controversial points.
3. **Insights and Recommendations**
   - Practical implications.
   - Actionable recommendations.
   - Risk factors and considerations.
4. **Confidence Assessment**
   - High confidence findings (>80% certainty).
   - Moderate confidence findings (50--80% certainty).
   - Areas of uncertainty (<50% certainty).
5. **Knowledge Boundaries**
   - Limitations of current research.
   - Areas requiring further investigation.
   - Unanswered questions.

Please begin your systematic research now, ensuring depth over breadth.)";

constexpr std::string_view kDecomposeBody =
    R"(Decompose the following research question into multiple research dimensions (technical, practical, economic, social impact). For each dimension, list several specific sub-questions to guide the research.
Research Question: "{{query}}"
Please format the output as a clear, structured list of dimensions and corresponding sub-questions.

Return only JSON of the form {"items": [{"id": "dim-1", "goal": "...", "inclusions": ["..."], "exclusions": ["..."], "acceptance_criteria": ["..."], "depends_on": [], "priority": 1}]}. Leave acceptance_criteria empty when you cannot state a checkable criterion.)";

constexpr std::string_view kDecideBody = R"({{task}}

Current workspace:
{{workspace}}

Recent steps:
{{recent}}

Pending search tasks: {{pending}}

Choose the next tool. Use "search" only when search tasks are pending, otherwise "plan".
Return only JSON: {"thought": "...", "action_thought": "...", "tool": "plan|search", "task_descriptor": "..."})";

constexpr std::string_view kPlanBody = R"(Research question: {{query}}

Current workspace:
{{workspace}}

Queries already issued: {{issued}}

For each active subgoal that still lacks evidence, propose new web search queries.
Return only JSON: {"tasks": [{"query_text": "...", "intent": "...", "origin_item": "<subgoal id>"}]})";

constexpr std::string_view kSummarizeBody = R"(Summarize the following source in at most three sentences. Keep numbers and dates exact. Do not add facts.
Title: {{title}}
Source: {{source}}

{{document}})";

constexpr std::string_view kDraftSectionBody = R"(Draft the report section "{{title}}".
Checklist items this section must satisfy:
{{items}}

Audited evidence (cite only these ids):
{{evidence}}

Return only JSON: {"passages": [{"lead": "...", "claims": [{"text": "...", "category": "finding|cost|risk|temporal|quantitative", "evidence_ids": ["..."]}]}], "visuals": [{"kind": "table", "caption": "...", "data": [{"label": "...", "value": 0, "unit": "...", "evidence_ids": ["..."]}]}]})";

constexpr std::string_view kHedgeBody = R"(The following claim could not be verified against audited evidence. Rewrite it as one explicitly hedged sentence that states the uncertainty. Return only the sentence.
Claim: {{claim}})";

constexpr std::string_view kCriticBody = R"(You are reviewing a research checklist before any searching starts. For each item decide: approve, edit, split, merge or waive. Items flagged by intents need their scope, definitions or acceptance criteria clarified; every approved or edited item must end with at least one checkable acceptance criterion.

Review document:
{{review}}

Return only JSON: {"schema": "checklist-decision/1", "checklist_version": <version>, "verdicts": [{"item_id": "...", "verdict": "approve|edit|split|merge|waive", "edit": {...}}]})";

}  // namespace

const std::vector<PromptTemplate>& defaults() {
  static const std::vector<PromptTemplate> kAll = {
      {std::string(kSystem), std::string(kSystemBody), 1},
      {std::string(kTask), std::string(kTaskBody), 1},
      {std::string(kDecompose), std::string(kDecomposeBody), 1},
      {std::string(kDecide), std::string(kDecideBody), 1},
      {std::string(kPlan), std::string(kPlanBody), 1},
      {std::string(kSummarize), std::string(kSummarizeBody), 1},
      {std::string(kDraftSection), std::string(kDraftSectionBody), 1},
      {std::string(kHedge), std::string(kHedgeBody), 1},
      {std::string(kCritic), std::string(kCriticBody), 1},
  };
  return kAll;
}

const PromptTemplate& get(std::string_view name) {
  for (const auto& t : defaults()) {
    if (t.name == name) return t;
  }
  throw Error(ErrorCode::kPrecondition, "unknown template " + std::string(name));
}

std::string render(const PromptTemplate& tmpl, const Json& bindings) {
  const auto names = tmpl.placeholders();
  for (const auto& name : names) {
    if (!bindings.contains(name)) {
      throw Error(ErrorCode::kUnboundPlaceholder,
                  tmpl.name + " placeholder {{" + name + "}} is unbound");
    }
  }
  std::string out;
  out.reserve(tmpl.body.size());
  std::size_t pos = 0;
  while (true) {
    const auto open = tmpl.body.find("{{", pos);
    const auto close =
        open == std::string::npos ? std::string::npos : tmpl.body.find("}}", open + 2);
    if (close == std::string::npos) {
      out.append(tmpl.body, pos, std::string::npos);
      break;
    }
    out.append(tmpl.body, pos, open - pos);
    const auto& value = bindings.at(tmpl.body.substr(open + 2, close - open - 2));
    out += value.is_string() ? value.get<std::string>() : canonical_dump(value);
    pos = close + 2;
  }
  return out;
}

}  // namespace groundwork::templates
