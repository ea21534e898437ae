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

#include "groundwork/service/providers.hpp"

#include <cstdlib>

#include "groundwork/core/error.hpp"
#include "groundwork/providers/live.hpp"
#include "groundwork/providers/mock.hpp"

namespace groundwork {

namespace {

HttpEndpoint endpoint(const std::string& url, const LiveEndpoints& live) {
  HttpEndpoint e;
  e.url = url;
  e.model = live.llm_model;
  e.timeout_seconds = live.timeout_seconds;
  if (!live.llm_api_key_env.empty()) {
    if (const char* key = std::getenv(live.llm_api_key_env.c_str())) e.api_key = key;
  }
  return e;
}

}  // namespace

ProviderBundle::ProviderBundle(const RunConfig& config, ReviewChannel* channel) {
  if (config.mock) {
    fixtures_ = std::make_unique<FixtureSet>(FixtureSet::load(config.fixtures_dir));
    policy_ = std::make_unique<MockPolicy>(*fixtures_);
    environment_ = std::make_unique<MockEnvironment>(*fixtures_);
  } else {
    llm_ = std::make_unique<HttpLlmClient>(endpoint(config.live.llm_url, config.live));
    policy_ = std::make_unique<LlmPolicy>(*llm_);
    environment_ = std::make_unique<HttpSearchEnvironment>(
        endpoint(config.live.search_url, config.live));
  }
  switch (config.critic_mode) {
    case CriticMode::kNone:
      critic_ = std::make_unique<ApproveAllCritic>();
      break;
    case CriticMode::kLlm:
      critic_ = std::make_unique<PolicyCritic>(*policy_);
      break;
    case CriticMode::kHuman:
      if (channel == nullptr) {
        throw Error(ErrorCode::kConfigInvalid, "human critic needs a review channel");
      }
      critic_ = std::make_unique<HumanCritic>(
          *channel, std::chrono::milliseconds(
                        static_cast<long long>(config.review_timeout_seconds) * 1000));
      if (config.review_fallback_llm) fallback_ = std::make_unique<PolicyCritic>(*policy_);
      break;
  }
}

ProviderBundle::~ProviderBundle() = default;

Providers ProviderBundle::providers() {
  return Providers{*policy_, *environment_, *critic_, fallback_.get()};
}

}  // namespace groundwork
