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
#include <map>
#include <optional>
#include <string>

#include "groundwork/core/json.hpp"
#include "groundwork/core/time.hpp"
#include "groundwork/evidence/audit.hpp"

namespace groundwork {

enum class CriticMode { kHuman, kLlm, kNone };
enum class UnsupportedPolicy { kHedge, kDrop };

std::string_view to_string(CriticMode m);
CriticMode critic_mode_from_string(std::string_view s);
std::string_view to_string(UnsupportedPolicy p);
UnsupportedPolicy unsupported_policy_from_string(std::string_view s);

struct LiveEndpoints {
  std::string llm_url;            // OpenAI-compatible base URL
  std::string llm_model;
  std::string llm_api_key_env = "GROUNDWORK_LLM_API_KEY";
  std::string search_url;         // SearXNG-compatible search endpoint
  int timeout_seconds = 60;
};

/// Everything that shapes a run. Serialized verbatim into the run directory.
struct RunConfig {
  std::string query;
  bool mock = true;
  std::string fixtures_dir;

  int max_steps = 20;
  int retention = 5;
  std::size_t workspace_budget = 32000;
  std::size_t max_active = 8;
  std::size_t memory_top_k = 3;
  std::size_t digest_chars = 2000;

  CriticMode critic_mode = CriticMode::kLlm;
  int max_rounds = 3;
  int review_timeout_seconds = 1800;
  bool review_fallback_llm = true;  // false: abort on review timeout
  int max_depth = 3;

  bool vcm_enabled = true;
  bool eam_enabled = true;

  int min_evidence_per_leaf = 2;
  int max_search_calls = 0;  // 0 = unlimited
  int fanout = 4;

  RankWeights weights;
  double half_life_days = 180.0;
  double binding_threshold = 0.3;
  std::size_t top_k = 5;
  bool include_descendants = false;
  std::map<std::string, double> source_priors = ConfidenceModel{}.priors;

  double audit_threshold = 0.35;
  UnsupportedPolicy unsupported_policy = UnsupportedPolicy::kHedge;

  /// Logical clock: step k starts at clock_base + k * clock_step seconds.
  /// Used in mock mode so that timestamps (and thus traces) are reproducible.
  Timestamp clock_base = 1767225600;  // 2026-01-01T00:00:00Z
  Timestamp clock_step = 60;

  LiveEndpoints live;

  /// Throws Error(kConfigInvalid) naming the first offending field.
  void validate() const;
};

void to_json(Json& j, const LiveEndpoints& v);
void from_json(const Json& j, LiveEndpoints& v);
void to_json(Json& j, const RunConfig& v);
/// Unknown keys are rejected so that typos do not silently fall back to
/// defaults.
void from_json(const Json& j, RunConfig& v);

/// Reads and validates a config file. Relative fixture paths resolve against
/// the file's directory.
RunConfig load_config(const std::string& path);

/// Deterministic run id: hash of the query and the serialized config.
std::string make_run_id(const RunConfig& config);

}  // namespace groundwork
