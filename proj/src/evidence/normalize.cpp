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

#include "groundwork/evidence/normalize.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdint>

#include "groundwork/core/text.hpp"

namespace groundwork {

namespace {

bool is_tracking_param(std::string_view key) {
  static constexpr std::array<std::string_view, 8> kExact = {
      "gclid", "fbclid", "ref", "mc_cid", "mc_eid", "yclid", "_ga", "igshid"};
  if (key.substr(0, 4) == "utm_") return true;
  for (auto k : kExact) {
    if (key == k) return true;
  }
  return false;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

// Decodes the entity starting at s[i] == '&'. Returns the number of bytes
// consumed, or 0 when the text is not a recognised entity.
std::size_t decode_entity(std::string_view s, std::size_t i, std::string& out) {
  const auto semi = s.find(';', i);
  if (semi == std::string_view::npos || semi - i > 10) return 0;
  const auto name = s.substr(i + 1, semi - i - 1);
  if (name.empty()) return 0;
  if (name[0] == '#') {
    std::uint32_t cp = 0;
    const bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
    const auto digits = name.substr(hex ? 2 : 1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp,
                                     hex ? 16 : 10);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) return 0;
    append_utf8(out, cp);
    return semi - i + 1;
  }
  struct Named {
    std::string_view name;
    std::uint32_t cp;
  };
  static constexpr std::array<Named, 12> kNamed = {{{"amp", '&'},
                                                    {"lt", '<'},
                                                    {"gt", '>'},
                                                    {"quot", '"'},
                                                    {"apos", '\''},
                                                    {"nbsp", 0xA0},
                                                    {"mdash", 0x2014},
                                                    {"ndash", 0x2013},
                                                    {"hellip", 0x2026},
                                                    {"rsquo", 0x2019},
                                                    {"lsquo", 0x2018},
                                                    {"copy", 0xA9}}};
  for (const auto& e : kNamed) {
    if (name == e.name) {
      append_utf8(out, e.cp);
      return semi - i + 1;
    }
  }
  return 0;
}

bool iequals_prefix(std::string_view s, std::size_t pos, std::string_view prefix) {
  if (s.size() - pos < prefix.size()) return false;
  return text::to_lower_ascii(s.substr(pos, prefix.size())) == prefix;
}

}  // namespace

std::string canonicalize_url(std::string_view url) {
  std::string u = trim(url);
  const auto scheme_end = u.find("://");
  if (scheme_end == std::string::npos) return u;
  const std::string scheme = text::to_lower_ascii(u.substr(0, scheme_end));
  std::string rest = u.substr(scheme_end + 3);
  if (const auto hash = rest.find('#'); hash != std::string::npos) rest.resize(hash);

  const auto path_start = rest.find_first_of("/?");
  std::string authority = rest.substr(0, path_start);
  std::string path_query = path_start == std::string::npos ? "" : rest.substr(path_start);

  std::string userinfo;
  if (const auto at = authority.rfind('@'); at != std::string::npos) {
    userinfo = authority.substr(0, at + 1);
    authority = authority.substr(at + 1);
  }
  std::string host = text::to_lower_ascii(authority);
  if (const auto colon = host.rfind(':');
      colon != std::string::npos && host.find(']', colon) == std::string::npos) {
    const std::string port = host.substr(colon + 1);
    if ((scheme == "http" && port == "80") || (scheme == "https" && port == "443") ||
        port.empty()) {
      host.resize(colon);
    }
  }
  if (!host.empty() && host.back() == '.') host.pop_back();

  std::string path = path_query;
  std::string query;
  if (const auto q = path_query.find('?'); q != std::string::npos) {
    path = path_query.substr(0, q);
    query = path_query.substr(q + 1);
  }
  if (path.empty()) path = "/";

  std::vector<std::string> kept;
  std::size_t pos = 0;
  while (pos <= query.size() && !query.empty()) {
    const auto amp = query.find('&', pos);
    const std::string param = query.substr(pos, amp == std::string::npos ? amp : amp - pos);
    const std::string key = text::to_lower_ascii(param.substr(0, param.find('=')));
    if (!param.empty() && !is_tracking_param(key)) kept.push_back(param);
    if (amp == std::string::npos) break;
    pos = amp + 1;
  }
  std::string out = scheme + "://" + userinfo + host + path;
  if (!kept.empty()) out += "?" + text::join(kept, "&");
  return out;
}

std::string classify_source(std::string_view canonical_url) {
  const auto scheme_end = canonical_url.find("://");
  if (scheme_end == std::string_view::npos) {
    return canonical_url.substr(0, 8) == "fixture:" ? "fixture" : "other";
  }
  auto host = canonical_url.substr(scheme_end + 3);
  host = host.substr(0, host.find_first_of("/?:"));
  auto ends_with = [&](std::string_view suffix) {
    return host.size() >= suffix.size() &&
           host.substr(host.size() - suffix.size()) == suffix;
  };
  auto contains = [&](std::string_view part) {
    return host.find(part) != std::string_view::npos;
  };
  if (ends_with(".gov") || contains(".gov.") || ends_with(".mil") || contains(".europa.eu") ||
      ends_with("europa.eu")) {
    return "government";
  }
  if (ends_with(".edu") || contains(".edu.") || contains(".ac.")) return "academic";
  if (ends_with(".org") || contains(".org.")) return "organization";
  if (ends_with(".com") || contains(".com.") || ends_with(".net") || ends_with(".io")) {
    return "commercial";
  }
  return "other";
}

std::string strip_markup(std::string_view html) {
  std::string out;
  out.reserve(html.size());
  std::size_t i = 0;
  while (i < html.size()) {
    const char c = html[i];
    if (c == '<') {
      if (html.compare(i, 4, "<!--") == 0) {
        const auto end = html.find("-->", i + 4);
        i = end == std::string_view::npos ? html.size() : end + 3;
        out += ' ';
        continue;
      }
      bool skipped_block = false;
      for (std::string_view block : {std::string_view("script"), std::string_view("style")}) {
        if (iequals_prefix(html, i + 1, block)) {
          const std::string close = "</" + std::string(block);
          auto lower = text::to_lower_ascii(html.substr(i));
          const auto end = lower.find(close);
          if (end == std::string::npos) {
            i = html.size();
          } else {
            const auto gt = html.find('>', i + end);
            i = gt == std::string_view::npos ? html.size() : gt + 1;
          }
          skipped_block = true;
          break;
        }
      }
      if (skipped_block) {
        out += ' ';
        continue;
      }
      // Only treat '<' as a tag when it opens one: letter, '/', '!' or '?'.
      const char next = i + 1 < html.size() ? html[i + 1] : '\0';
      const bool tag = std::isalpha(static_cast<unsigned char>(next)) || next == '/' ||
                       next == '!' || next == '?';
      if (tag) {
        const auto gt = html.find('>', i);
        i = gt == std::string_view::npos ? html.size() : gt + 1;
        out += ' ';
        continue;
      }
    }
    if (c == '&') {
      if (const auto used = decode_entity(html, i, out); used > 0) {
        i += used;
        continue;
      }
    }
    out += c;
    ++i;
  }
  return out;
}

std::string normalize_text(std::string_view body) {
  return text::collapse_whitespace(text::sanitize_utf8(strip_markup(text::sanitize_utf8(body))));
}

NormalizeResult normalize(const std::vector<RawResult>& raw) {
  NormalizeResult result;
  for (const auto& r : raw) {
    const std::string source = canonicalize_url(r.source);
    if (!r.ok) {
      result.log.push_back({source, r.search_task_id,
                            r.error_code.empty() ? "error" : r.error_code,
                            "tool returned an error result"});
      continue;
    }
    NormalizedDoc doc;
    doc.source = source;
    doc.source_type = classify_source(source);
    doc.title = r.title ? normalize_text(*r.title) : std::string();
    doc.text = normalize_text(r.body);
    doc.fetched_at = r.fetched_at;
    doc.published = r.published;
    doc.search_task_id = r.search_task_id;
    doc.step_index = r.step_index;
    if (doc.text.empty()) {
      result.log.push_back({source, r.search_task_id, "empty-body",
                            "no text left after normalization"});
      continue;
    }
    result.docs.push_back(std::move(doc));
  }
  return result;
}

}  // namespace groundwork
