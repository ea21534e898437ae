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
#include <string_view>
#include <vector>

#include "groundwork/core/json.hpp"
#include "groundwork/providers/types.hpp"

namespace groundwork::templates {

inline constexpr std::string_view kSystem = "system";
inline constexpr std::string_view kTask = "task";
inline constexpr std::string_view kDecompose = "decompose";
inline constexpr std::string_view kDecide = "decide";
inline constexpr std::string_view kPlan = "plan";
inline constexpr std::string_view kSummarize = "summarize";
inline constexpr std::string_view kDraftSection = "draft_section";
inline constexpr std::string_view kHedge = "hedge";
inline constexpr std::string_view kCritic = "critic";

/// The shipped template set. The system and task prompts reproduce the
/// reference deep-research prompts; the rest add JSON output contracts.
const std::vector<PromptTemplate>& defaults();

/// Throws Error(kPrecondition) for an unknown name.
const PromptTemplate& get(std::string_view name);

/// Substitutes every `{{name}}` with bindings[name] (strings verbatim, other
/// values as compact JSON). Throws Error(kUnboundPlaceholder) before doing
/// any work if a placeholder has no binding.
std::string render(const PromptTemplate& tmpl, const Json& bindings);

}  // namespace groundwork::templates
