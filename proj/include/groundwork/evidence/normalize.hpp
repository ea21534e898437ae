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

#include "groundwork/evidence/types.hpp"

namespace groundwork {

// Ingestion, stage one: turn raw tool output into clean, comparable text.

/// Lowercases scheme and host, drops default ports, fragments and tracking
/// parameters (utm_*, gclid, fbclid, ...). Ids without a scheme pass through
/// trimmed.
std::string canonicalize_url(std::string_view url);

/// Coarse source type used as a key into the confidence prior map:
/// government, academic, organization, commercial, fixture, other.
std::string classify_source(std::string_view canonical_url);

/// Removes tags, comments and script/style blocks; decodes common entities.
std::string strip_markup(std::string_view html);

/// Markup stripped, encoding repaired, whitespace collapsed.
std::string normalize_text(std::string_view body);

struct NormalizeResult {
  std::vector<NormalizedDoc> docs;
  std::vector<IngestionLogEntry> log;
};

/// Error results and results with no text left are logged, not returned.
NormalizeResult normalize(const std::vector<RawResult>& raw);

}  // namespace groundwork
