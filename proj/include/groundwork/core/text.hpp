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
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace groundwork::text {

inline constexpr std::string_view kEllipsis = " [...]";

std::string to_lower_ascii(std::string_view s);

/// Collapses runs of ASCII whitespace (and U+00A0) to one space and trims.
std::string collapse_whitespace(std::string_view s);

/// Replaces invalid UTF-8 sequences with U+FFFD.
std::string sanitize_utf8(std::string_view s);

/// Content terms: lowercased alphanumeric tokens of length >= 2 that are not
/// stopwords. Non-ASCII bytes are kept inside tokens.
std::vector<std::string> terms(std::string_view s);
std::set<std::string> term_set(std::string_view s);

/// Fraction of `reference` terms present in `candidate`; 0 when reference is
/// empty.
double term_coverage(const std::set<std::string>& reference,
                     const std::set<std::string>& candidate);

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

/// Splits on '.', '!' or '?' followed by whitespace or end of text.
std::vector<std::string> sentences(std::string_view s);

/// Keeps the head of `s`; when it does not fit in `max_len` bytes the tail is
/// replaced by kEllipsis. Never splits a UTF-8 sequence. Result size <= max_len.
std::string truncate_tail(std::string_view s, std::size_t max_len);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace groundwork::text
