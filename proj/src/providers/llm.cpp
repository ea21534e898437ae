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

#include "groundwork/providers/llm.hpp"

#include <algorithm>
#include <thread>

#include "groundwork/core/error.hpp"
#include "groundwork/core/hash.hpp"
#include "groundwork/providers/templates.hpp"

namespace groundwork {

std::string bindings_hash(const Json& bindings) {
  // nlohmann::json (unordered) keeps object keys sorted
  const nlohmann::json sorted = nlohmann::json::parse(canonical_dump(bindings));
  return short_hash(sorted.dump(), 16);
}

std::string llm_complete(const PromptTemplate& tmpl, const Json& bindings,
                         LlmClient& client, const RetryPolicy& retry,
                         std::vector<AttemptRecord>* attempts) {
  LlmRequest request;
  request.template_name = tmpl.name;
  request.prompt = templates::render(tmpl, bindings);
  request.system = templates::get(templates::kSystem).body;
  request.bindings = bindings;
  request.bindings_hash = bindings_hash(bindings);

  auto backoff = retry.base_backoff;
  const int max_attempts = std::max(1, retry.attempts);
  for (int attempt = 1;; ++attempt) {
    try {
      std::string out = client.complete(request);
      if (attempts) attempts->push_back({attempt, true, ""});
      return out;
    } catch (const TransientError& e) {
      if (attempts) attempts->push_back({attempt, false, e.what()});
      if (attempt >= max_attempts) throw;
      if (retry.sleep) retry.sleep(backoff);
      else std::this_thread::sleep_for(backoff);
      backoff = std::chrono::milliseconds(
          static_cast<long long>(static_cast<double>(backoff.count()) * retry.multiplier));
    }
  }
}

}  // namespace groundwork
