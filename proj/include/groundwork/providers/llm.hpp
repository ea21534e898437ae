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

#include <chrono>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "groundwork/core/json.hpp"
#include "groundwork/providers/types.hpp"

namespace groundwork {

struct LlmRequest {
  std::string template_name;
  std::string system;
  std::string prompt;
  Json bindings;
  std::string bindings_hash;
};

/// Transport for completions. Throw TransientError for retryable failures.
class LlmClient {
 public:
  virtual ~LlmClient() = default;
  virtual std::string complete(const LlmRequest& request) = 0;
};

struct RetryPolicy {
  int attempts = 3;
  std::chrono::milliseconds base_backoff{200};
  double multiplier = 2.0;
  std::function<void(std::chrono::milliseconds)> sleep;  // defaults to sleep_for
};

struct AttemptRecord {
  int attempt = 0;
  bool ok = false;
  std::string error;
};

/// Hash of the bindings with keys sorted, so fixture keys do not depend on
/// insertion order.
std::string bindings_hash(const Json& bindings);

/// Renders `tmpl` (rejecting unbound placeholders before any call) and asks
/// `client`, retrying transient failures with exponential backoff.
std::string llm_complete(const PromptTemplate& tmpl, const Json& bindings,
                         LlmClient& client, const RetryPolicy& retry = {},
                         std::vector<AttemptRecord>* attempts = nullptr);

}  // namespace groundwork
