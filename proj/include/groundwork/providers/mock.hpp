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

#include <cstddef>
#include <string>
#include <string_view>

#include "groundwork/providers/fixtures.hpp"
#include "groundwork/providers/ports.hpp"

namespace groundwork {

struct MockPolicyOptions {
  std::size_t summary_sentences = 2;
};

/// Deterministic stand-in for a model policy. Decomposition and query plans
/// come from fixtures; everything else follows fixed rules. Stateless, so it
/// is a pure function of its inputs and the fixture set.
class MockPolicy : public PolicyPort {
 public:
  explicit MockPolicy(const FixtureSet& fixtures, MockPolicyOptions options = {})
      : fixtures_(fixtures), options_(options) {}

  std::vector<ChecklistItem> decompose(std::string_view query) override;
  Decision decide(const Workspace& workspace, const AgentState& state) override;
  PlanResult plan(std::string_view query, const Workspace& workspace,
                  const AgentState& state) override;
  std::string summarize(const NormalizedDoc& doc) override;
  SectionDraft draft_section(const OutlineNode& node,
                             const std::vector<ChecklistItem>& items,
                             const std::vector<EvidenceUnit>& ranked) override;
  std::string hedge(std::string_view claim_text) override;
  DecisionDocument critique(const ReviewDocument& review) override;

 private:
  const ChecklistFixture& checklist_fixture(std::string_view query) const;

  const FixtureSet& fixtures_;
  MockPolicyOptions options_;
};

/// Serves search results from fixtures; an unknown query yields a single
/// error(fixture-miss) result.
class MockEnvironment : public EnvironmentPort {
 public:
  explicit MockEnvironment(const FixtureSet& fixtures) : fixtures_(fixtures) {}
  std::vector<RawResult> search(const SearchTask& task, int step_index,
                                Timestamp now) override;

 private:
  const FixtureSet& fixtures_;
};

/// Claim category the mock drafter assigns from acceptance-criteria wording:
/// cost, risk, temporal, quantitative, else finding.
std::string claim_category(const std::vector<std::string>& acceptance_criteria);

/// Strips the trailing "(source: ...)" citation from a unit summary.
std::string summary_body(std::string_view summary);

}  // namespace groundwork
