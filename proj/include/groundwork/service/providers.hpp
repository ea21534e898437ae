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

#include <memory>
#include <string_view>

#include "groundwork/agent/config.hpp"
#include "groundwork/agent/engine.hpp"
#include "groundwork/checklist/critics.hpp"
#include "groundwork/providers/fixtures.hpp"
#include "groundwork/providers/ports.hpp"

namespace groundwork {

/// Owns the policy, environment and critics for one run.
/// Construct from a config; `providers()` hands out the ports.
class ProviderBundle {
 public:
  /// `channel` is required when the config asks for a human critic.
  ProviderBundle(const RunConfig& config, ReviewChannel* channel = nullptr);
  ~ProviderBundle();
  ProviderBundle(const ProviderBundle&) = delete;
  ProviderBundle& operator=(const ProviderBundle&) = delete;

  Providers providers();
  PolicyPort& policy() { return *policy_; }
  const FixtureSet* fixtures() const { return fixtures_.get(); }

 private:
  std::unique_ptr<FixtureSet> fixtures_;
  std::unique_ptr<LlmClient> llm_;
  std::unique_ptr<PolicyPort> policy_;
  std::unique_ptr<EnvironmentPort> environment_;
  std::unique_ptr<CriticPort> critic_;
  std::unique_ptr<CriticPort> fallback_;
};

}  // namespace groundwork
