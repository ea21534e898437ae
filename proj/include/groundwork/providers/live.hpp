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

#include "groundwork/providers/llm.hpp"
#include "groundwork/providers/ports.hpp"

namespace groundwork {

struct HttpEndpoint {
  std::string url;  // full URL, http:// or https://
  std::string api_key;
  std::string model;
  int timeout_seconds = 60;
};

/// OpenAI-compatible chat-completions client. 429, 5xx and connection
/// failures are reported as TransientError so llm_complete retries them.
class HttpLlmClient : public LlmClient {
 public:
  explicit HttpLlmClient(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}
  std::string complete(const LlmRequest& request) override;

 private:
  HttpEndpoint endpoint_;
};

/// Search over an HTTP endpoint that answers `GET <url>?q=...&format=json`
/// with {"results": [{"url", "title", "content", "publishedDate"}]}.
class HttpSearchEnvironment : public EnvironmentPort {
 public:
  explicit HttpSearchEnvironment(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}
  std::vector<RawResult> search(const SearchTask& task, int step_index,
                                Timestamp now) override;

 private:
  HttpEndpoint endpoint_;
};

/// Policy backed by prompt templates and an LlmClient. Model answers are
/// JSON; anything that does not parse raises Error(kUnparseableOutput).
class LlmPolicy : public PolicyPort {
 public:
  LlmPolicy(LlmClient& client, RetryPolicy retry = {})
      : client_(client), retry_(std::move(retry)) {}

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
  std::string ask(std::string_view template_name, const Json& bindings);

  LlmClient& client_;
  RetryPolicy retry_;
};

/// Extracts the outermost JSON object from model text (tolerates code
/// fences and preambles).
Json parse_model_json(std::string_view text);

}  // namespace groundwork
