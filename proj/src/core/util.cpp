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

#include "groundwork/core/error.hpp"
#include "groundwork/core/hash.hpp"
#include "groundwork/core/json.hpp"
#include "groundwork/core/time.hpp"

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace groundwork {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kConfigInvalid: return "config-invalid";
    case ErrorCode::kFixtureMiss: return "fixture-miss";
    case ErrorCode::kFixtureMissing: return "fixture-missing";
    case ErrorCode::kProviderError: return "provider-error";
    case ErrorCode::kProviderUnreachable: return "provider-unreachable";
    case ErrorCode::kTimeout: return "timeout";
    case ErrorCode::kUnparseableOutput: return "unparseable-policy-output";
    case ErrorCode::kUnboundPlaceholder: return "unbound-placeholder";
    case ErrorCode::kStaleState: return "stale-state";
    case ErrorCode::kBudgetTooSmall: return "budget-too-small";
    case ErrorCode::kInvalidWeights: return "invalid-weights";
    case ErrorCode::kInvalidDecision: return "invalid-decision";
    case ErrorCode::kCriticTimeout: return "critic-timeout";
    case ErrorCode::kMaxRoundsExceeded: return "max-rounds-exceeded";
    case ErrorCode::kChainBroken: return "chain-broken";
    case ErrorCode::kStorageIo: return "storage-io";
    case ErrorCode::kUnknownRun: return "unknown-run";
    case ErrorCode::kWrongPhase: return "wrong-phase";
    case ErrorCode::kAborted: return "aborted";
  }
  return "unknown";
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(),
                 nullptr) != 1) {
    throw Error(ErrorCode::kPrecondition, "sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0x0f]);
  }
  return out;
}

std::string short_hash(std::string_view data, std::size_t length) {
  return sha256_hex(data).substr(0, length);
}

std::string format_iso8601(Timestamp ts) {
  std::time_t t = static_cast<std::time_t>(ts);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

namespace {

// Days since 1970-01-01 for a proleptic Gregorian date.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

int parse_digits(std::string_view s, std::size_t pos, std::size_t n) {
  if (pos + n > s.size()) throw Error(ErrorCode::kPrecondition, "bad timestamp");
  int v = 0;
  for (std::size_t i = pos; i < pos + n; ++i) {
    if (s[i] < '0' || s[i] > '9') {
      throw Error(ErrorCode::kPrecondition, "bad timestamp: " + std::string(s));
    }
    v = v * 10 + (s[i] - '0');
  }
  return v;
}

}  // namespace

Timestamp parse_iso8601(std::string_view s) {
  if (s.size() < 10 || s[4] != '-' || s[7] != '-') {
    throw Error(ErrorCode::kPrecondition, "bad timestamp: " + std::string(s));
  }
  const int year = parse_digits(s, 0, 4);
  const int month = parse_digits(s, 5, 2);
  const int day = parse_digits(s, 8, 2);
  if (month < 1 || month > 12 || day < 1 || day > 31) {
    throw Error(ErrorCode::kPrecondition, "bad timestamp: " + std::string(s));
  }
  int hh = 0, mm = 0, ss = 0;
  if (s.size() > 10) {
    if ((s[10] != 'T' && s[10] != ' ') || s.size() < 19) {
      throw Error(ErrorCode::kPrecondition, "bad timestamp: " + std::string(s));
    }
    hh = parse_digits(s, 11, 2);
    mm = parse_digits(s, 14, 2);
    ss = parse_digits(s, 17, 2);
  }
  return days_from_civil(year, static_cast<unsigned>(month),
                         static_cast<unsigned>(day)) *
             kSecondsPerDay +
         hh * 3600 + mm * 60 + ss;
}

Timestamp wall_clock_now() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kUnparseableOutput, e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kStorageIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kStorageIo, "cannot write " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::kStorageIo, "short write " + path);
  }
  std::filesystem::rename(tmp, p);
}

void append_line(const std::string& path, std::string_view line) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw Error(ErrorCode::kStorageIo, "cannot append " + path);
  std::string buf(line);
  buf.push_back('\n');
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::kStorageIo, "short append " + path);
}

}  // namespace groundwork
