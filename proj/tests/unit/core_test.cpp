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

#include <doctest.h>

#include "groundwork/core/error.hpp"
#include "groundwork/core/hash.hpp"
#include "groundwork/core/json.hpp"
#include "groundwork/core/text.hpp"
#include "groundwork/core/time.hpp"

using namespace groundwork;

TEST_CASE("sha256 matches published test vectors") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(short_hash("abc", 8) == "ba7816bf");
}

TEST_CASE("iso8601 round trip") {
  // 56 years of 365 days plus 14 leap days.
  CHECK(parse_iso8601("2026-01-01") == (56 * 365 + 14) * kSecondsPerDay);
  CHECK(parse_iso8601("2026-01-01T00:01:00Z") == parse_iso8601("2026-01-01") + 60);
  CHECK(parse_iso8601("2024-02-29 12:00:00") == parse_iso8601("2024-02-29") + 43200);
  CHECK(format_iso8601(1767225600) == "2026-01-01T00:00:00Z");
  CHECK_THROWS_AS(parse_iso8601("yesterday"), Error);
}

TEST_CASE("whitespace collapse and terms") {
  CHECK(text::collapse_whitespace("A  B\n\nC") == "A B C");
  CHECK(text::collapse_whitespace("  x\t ") == "x");
  const auto t = text::terms("The Cost of a ban, in 2025!");
  CHECK(t == std::vector<std::string>{"cost", "ban", "2025"});
  CHECK(text::term_coverage({"a1", "b1"}, {"a1"}) == doctest::Approx(0.5));
  CHECK(text::term_coverage({}, {"a1"}) == 0.0);
  CHECK(text::jaccard({"x1", "y1"}, {"y1", "z1"}) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("sentences split on terminal punctuation followed by space") {
  const auto s = text::sentences("Rates rose 12.5 percent. Then fell! Why? end");
  REQUIRE(s.size() == 4);
  CHECK(s[0] == "Rates rose 12.5 percent.");
  CHECK(s[3] == "end");
}

TEST_CASE("truncate_tail keeps the head and respects the limit") {
  CHECK(text::truncate_tail("short", 10) == "short");
  const std::string cut = text::truncate_tail(std::string(100, 'x'), 20);
  CHECK(cut.size() <= 20);
  CHECK(cut.substr(cut.size() - text::kEllipsis.size()) == text::kEllipsis);
  // A multi-byte character at the cut point is not split.
  const std::string utf = std::string(12, 'a') + "\xC3\xA9\xC3\xA9\xC3\xA9" + std::string(20, 'b');
  const std::string cut2 = text::truncate_tail(utf, 20);
  CHECK(text::sanitize_utf8(cut2) == cut2);
}

TEST_CASE("sanitize_utf8 replaces invalid bytes") {
  CHECK(text::sanitize_utf8("ok\xFFok") == "ok\xEF\xBF\xBDok");
}

TEST_CASE("error codes render in kebab case") {
  CHECK(to_string(ErrorCode::kChainBroken) == "chain-broken");
  CHECK(to_string(ErrorCode::kWrongPhase) == "wrong-phase");
  const Error e(ErrorCode::kConfigInvalid, "bad");
  CHECK(std::string(e.what()) == "config-invalid: bad");
}

TEST_CASE("canonical_dump is compact and ordered") {
  Json j;
  j["b"] = 1;
  j["a"] = "x";
  CHECK(canonical_dump(j) == R"({"b":1,"a":"x"})");
}
