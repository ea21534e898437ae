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

#include "groundwork/agent/config.hpp"

#include <filesystem>
#include <set>

#include "groundwork/core/error.hpp"
#include "groundwork/core/hash.hpp"

namespace groundwork {

std::string_view to_string(CriticMode m) {
  switch (m) {
    case CriticMode::kHuman: return "human";
    case CriticMode::kLlm: return "llm";
    case CriticMode::kNone: return "none";
  }
  return "none";
}

CriticMode critic_mode_from_string(std::string_view s) {
  if (s == "human") return CriticMode::kHuman;
  if (s == "llm") return CriticMode::kLlm;
  if (s == "none") return CriticMode::kNone;
  throw Error(ErrorCode::kConfigInvalid, "critic_mode must be human, llm or none");
}

std::string_view to_string(UnsupportedPolicy p) {
  return p == UnsupportedPolicy::kDrop ? "drop" : "hedge";
}

UnsupportedPolicy unsupported_policy_from_string(std::string_view s) {
  if (s == "hedge") return UnsupportedPolicy::kHedge;
  if (s == "drop") return UnsupportedPolicy::kDrop;
  throw Error(ErrorCode::kConfigInvalid, "unsupported_policy must be hedge or drop");
}

void to_json(Json& j, const LiveEndpoints& v) {
  j = Json{{"llm_url", v.llm_url},
           {"llm_model", v.llm_model},
           {"llm_api_key_env", v.llm_api_key_env},
           {"search_url", v.search_url},
           {"timeout_seconds", v.timeout_seconds}};
}

void from_json(const Json& j, LiveEndpoints& v) {
  read_field(j, "llm_url", v.llm_url);
  read_field(j, "llm_model", v.llm_model);
  read_field(j, "llm_api_key_env", v.llm_api_key_env);
  read_field(j, "search_url", v.search_url);
  read_field(j, "timeout_seconds", v.timeout_seconds);
}

void to_json(Json& j, const RunConfig& v) {
  j = Json{{"query", v.query},
           {"mock", v.mock},
           {"fixtures_dir", v.fixtures_dir},
           {"max_steps", v.max_steps},
           {"retention", v.retention},
           {"workspace_budget", v.workspace_budget},
           {"max_active", v.max_active},
           {"memory_top_k", v.memory_top_k},
           {"digest_chars", v.digest_chars},
           {"critic_mode", to_string(v.critic_mode)},
           {"max_rounds", v.max_rounds},
           {"review_timeout_seconds", v.review_timeout_seconds},
           {"review_fallback_llm", v.review_fallback_llm},
           {"max_depth", v.max_depth},
           {"vcm_enabled", v.vcm_enabled},
           {"eam_enabled", v.eam_enabled},
           {"min_evidence_per_leaf", v.min_evidence_per_leaf},
           {"max_search_calls", v.max_search_calls},
           {"fanout", v.fanout},
           {"weights",
            {{"relevance", v.weights.relevance},
             {"quality", v.weights.quality},
             {"timeliness", v.weights.timeliness},
             {"consistency", v.weights.consistency}}},
           {"half_life_days", v.half_life_days},
           {"binding_threshold", v.binding_threshold},
           {"top_k", v.top_k},
           {"include_descendants", v.include_descendants},
           {"source_priors", v.source_priors},
           {"audit_threshold", v.audit_threshold},
           {"unsupported_policy", to_string(v.unsupported_policy)},
           {"clock_base", v.clock_base},
           {"clock_step", v.clock_step},
           {"live", v.live}};
}

void from_json(const Json& j, RunConfig& v) {
  if (!j.is_object()) throw Error(ErrorCode::kConfigInvalid, "config must be a JSON object");
  static const std::set<std::string> kKnown = {
      "query", "mock", "fixtures_dir", "max_steps", "retention", "workspace_budget",
      "max_active", "memory_top_k", "digest_chars", "critic_mode", "max_rounds",
      "review_timeout_seconds", "review_fallback_llm", "max_depth", "vcm_enabled",
      "eam_enabled", "min_evidence_per_leaf", "max_search_calls", "fanout", "weights",
      "half_life_days", "binding_threshold", "top_k", "include_descendants",
      "source_priors", "audit_threshold", "unsupported_policy", "clock_base",
      "clock_step", "live"};
  for (const auto& [key, _] : j.items()) {
    if (!kKnown.count(key)) throw Error(ErrorCode::kConfigInvalid, "unknown config key: " + key);
  }
  try {
    read_field(j, "query", v.query);
    read_field(j, "mock", v.mock);
    read_field(j, "fixtures_dir", v.fixtures_dir);
    read_field(j, "max_steps", v.max_steps);
    read_field(j, "retention", v.retention);
    read_field(j, "workspace_budget", v.workspace_budget);
    read_field(j, "max_active", v.max_active);
    read_field(j, "memory_top_k", v.memory_top_k);
    read_field(j, "digest_chars", v.digest_chars);
    if (j.contains("critic_mode")) {
      v.critic_mode = critic_mode_from_string(j.at("critic_mode").get<std::string>());
    }
    read_field(j, "max_rounds", v.max_rounds);
    read_field(j, "review_timeout_seconds", v.review_timeout_seconds);
    read_field(j, "review_fallback_llm", v.review_fallback_llm);
    read_field(j, "max_depth", v.max_depth);
    read_field(j, "vcm_enabled", v.vcm_enabled);
    read_field(j, "eam_enabled", v.eam_enabled);
    read_field(j, "min_evidence_per_leaf", v.min_evidence_per_leaf);
    read_field(j, "max_search_calls", v.max_search_calls);
    read_field(j, "fanout", v.fanout);
    if (auto it = j.find("weights"); it != j.end()) {
      read_field(*it, "relevance", v.weights.relevance);
      read_field(*it, "quality", v.weights.quality);
      read_field(*it, "timeliness", v.weights.timeliness);
      read_field(*it, "consistency", v.weights.consistency);
    }
    read_field(j, "half_life_days", v.half_life_days);
    read_field(j, "binding_threshold", v.binding_threshold);
    read_field(j, "top_k", v.top_k);
    read_field(j, "include_descendants", v.include_descendants);
    read_field(j, "source_priors", v.source_priors);
    read_field(j, "audit_threshold", v.audit_threshold);
    if (j.contains("unsupported_policy")) {
      v.unsupported_policy =
          unsupported_policy_from_string(j.at("unsupported_policy").get<std::string>());
    }
    read_field(j, "clock_base", v.clock_base);
    read_field(j, "clock_step", v.clock_step);
    read_field(j, "live", v.live);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigInvalid, std::string("config has a field of the wrong type: ") +
                                               e.what());
  }
}

void RunConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kConfigInvalid, msg); };
  if (max_steps < 0) fail("max_steps must be >= 0");
  if (retention < 0) fail("retention must be >= 0");
  if (workspace_budget < 256) fail("workspace_budget must be at least 256 characters");
  if (max_active == 0) fail("max_active must be >= 1");
  if (digest_chars < 16) fail("digest_chars must be >= 16");
  if (max_rounds < 1) fail("max_rounds must be >= 1");
  if (review_timeout_seconds < 0) fail("review_timeout_seconds must be >= 0");
  if (max_depth < 1) fail("max_depth must be >= 1");
  if (min_evidence_per_leaf < 0) fail("min_evidence_per_leaf must be >= 0");
  if (max_search_calls < 0) fail("max_search_calls must be >= 0");
  if (fanout < 1) fail("fanout must be >= 1");
  if (top_k == 0) fail("top_k must be >= 1");
  if (!(half_life_days > 0)) fail("half_life_days must be > 0");
  if (binding_threshold < 0 || binding_threshold > 1) fail("binding_threshold must be in [0,1]");
  if (audit_threshold < 0 || audit_threshold > 1) fail("audit_threshold must be in [0,1]");
  if (clock_step < 1) fail("clock_step must be >= 1");
  for (const auto& [type, prior] : source_priors) {
    if (prior < 0 || prior > 1) fail("source prior for " + type + " must be in [0,1]");
  }
  try {
    weights.validate();
  } catch (const Error& e) {
    fail(e.what());
  }
  if (mock && fixtures_dir.empty()) fail("mock mode needs fixtures_dir");
  if (!mock && (live.llm_url.empty() || live.search_url.empty())) {
    fail("live mode needs live.llm_url and live.search_url");
  }
}

RunConfig load_config(const std::string& path) {
  RunConfig config;
  const Json j = [&] {
    try {
      return parse_json(read_file(path));
    } catch (const Error& e) {
      throw Error(ErrorCode::kConfigInvalid, "cannot read config " + path + ": " + e.what());
    }
  }();
  from_json(j, config);
  if (!config.fixtures_dir.empty()) {
    std::filesystem::path p(config.fixtures_dir);
    if (p.is_relative()) {
      config.fixtures_dir =
          (std::filesystem::path(path).parent_path() / p).lexically_normal().string();
    }
  }
  config.validate();
  return config;
}

std::string make_run_id(const RunConfig& config) {
  Json j = config;
  j.erase("fixtures_dir");  // where fixtures live does not change the run
  return "run-" + short_hash(config.query + "\n" + canonical_dump(j), 12);
}

}  // namespace groundwork
