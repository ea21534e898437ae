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

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace nlohmann {

template <typename T>
struct adl_serializer<std::optional<T>> {
  template <typename BasicJson>
  static void to_json(BasicJson& j, const std::optional<T>& v) {
    if (v) j = *v;
    else j = nullptr;
  }
  template <typename BasicJson>
  static void from_json(const BasicJson& j, std::optional<T>& v) {
    if (j.is_null()) v.reset();
    else v = j.template get<T>();
  }
};

}  // namespace nlohmann

namespace groundwork {

// Insertion-ordered so serialized records have a stable field order.
using Json = nlohmann::ordered_json;

/// Compact single-line serialization used for hashing and trace lines.
inline std::string canonical_dump(const Json& j) {
  return j.dump(-1, ' ', false, Json::error_handler_t::replace);
}

Json parse_json(std::string_view text);

/// Reads a whole file; throws Error(kStorageIo) if it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);
void append_line(const std::string& path, std::string_view line);

/// Reads `key` into `out` when present; leaves `out` untouched otherwise.
template <typename T>
void read_field(const Json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) {
    out = it->template get<T>();
  }
}

template <typename T>
std::optional<T> optional_field(const Json& j, const char* key) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) {
    return it->template get<T>();
  }
  return std::nullopt;
}

}  // namespace groundwork
