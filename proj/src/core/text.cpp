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

#include "groundwork/core/text.hpp"

#include <algorithm>
#include <unordered_set>

namespace groundwork::text {

namespace {

const std::unordered_set<std::string>& stopwords() {
  static const std::unordered_set<std::string> kWords = {
      "a",     "an",    "and",   "are",   "as",    "at",    "be",    "by",
      "for",   "from",  "has",   "have",  "how",   "in",    "into",  "is",
      "it",    "its",   "of",    "on",    "or",    "that",  "the",   "their",
      "this",  "to",    "was",   "were",  "what",  "when",  "which", "who",
      "will",  "with",  "would", "can",   "could", "do",    "does",  "than",
      "then",  "there", "these", "they",  "those", "we",    "our",   "not",
      "no",    "but",   "if",    "so",    "such",  "also",  "about", "over",
      "under", "all",   "any",   "each",  "more",  "most",  "other", "some",
      "been",  "being", "may",   "might", "should", "you",  "your",  "his",
      "her",   "them",  "he",    "she",   "i",     "me",    "my",    "via"};
  return kWords;
}

bool is_word_byte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z') || c >= 0x80;
}

bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Length of the UTF-8 sequence starting at `s[i]`, or 0 when invalid.
std::size_t utf8_sequence_length(std::string_view s, std::size_t i) {
  const auto c = static_cast<unsigned char>(s[i]);
  std::size_t n = 0;
  if (c < 0x80) return 1;
  if ((c & 0xE0) == 0xC0 && c >= 0xC2) n = 2;
  else if ((c & 0xF0) == 0xE0) n = 3;
  else if ((c & 0xF8) == 0xF0 && c <= 0xF4) n = 4;
  else return 0;
  if (i + n > s.size()) return 0;
  for (std::size_t k = 1; k < n; ++k) {
    if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return 0;
  }
  return n;
}

}  // namespace

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(c >= 'A' && c <= 'Z' ? c + 32 : c);
  });
  return out;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto c = static_cast<unsigned char>(s[i]);
    bool space = is_space(c);
    std::size_t skip = 0;
    // U+00A0 no-break space
    if (c == 0xC2 && i + 1 < s.size() &&
        static_cast<unsigned char>(s[i + 1]) == 0xA0) {
      space = true;
      skip = 1;
    }
    if (space) {
      pending_space = !out.empty();
      i += skip;
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(c));
  }
  return out;
}

std::string sanitize_utf8(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const std::size_t n = utf8_sequence_length(s, i);
    if (n == 0) {
      out += "\xEF\xBF\xBD";
      ++i;
    } else {
      out.append(s.substr(i, n));
      i += n;
    }
  }
  return out;
}

std::vector<std::string> terms(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (cur.size() >= 2 && !stopwords().count(cur)) out.push_back(cur);
    cur.clear();
  };
  for (const char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_word_byte(c)) {
      cur.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c + 32 : c));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

std::set<std::string> term_set(std::string_view s) {
  auto t = terms(s);
  return {t.begin(), t.end()};
}

double term_coverage(const std::set<std::string>& reference,
                     const std::set<std::string>& candidate) {
  if (reference.empty()) return 0.0;
  std::size_t hit = 0;
  for (const auto& t : reference) hit += candidate.count(t);
  return static_cast<double>(hit) / static_cast<double>(reference.size());
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t inter = 0;
  for (const auto& t : a) inter += b.count(t);
  const std::size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<std::string> sentences(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if ((c == '.' || c == '!' || c == '?') &&
        (i + 1 == s.size() || is_space(static_cast<unsigned char>(s[i + 1])))) {
      auto piece = collapse_whitespace(s.substr(start, i + 1 - start));
      if (!piece.empty()) out.push_back(std::move(piece));
      start = i + 1;
    }
  }
  if (start < s.size()) {
    auto piece = collapse_whitespace(s.substr(start));
    if (!piece.empty()) out.push_back(std::move(piece));
  }
  return out;
}

std::string truncate_tail(std::string_view s, std::size_t max_len) {
  if (s.size() <= max_len) return std::string(s);
  if (max_len < kEllipsis.size()) return std::string(kEllipsis.substr(0, max_len));
  std::size_t keep = max_len - kEllipsis.size();
  // back off continuation bytes so a code point is never split
  while (keep > 0 && (static_cast<unsigned char>(s[keep]) & 0xC0) == 0x80) {
    --keep;
  }
  std::string out(s.substr(0, keep));
  out += kEllipsis;
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace groundwork::text
