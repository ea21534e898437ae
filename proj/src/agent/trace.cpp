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

#include "groundwork/agent/trace.hpp"

#include <filesystem>
#include <sstream>

#include "groundwork/agent/state.hpp"
#include "groundwork/core/error.hpp"
#include "groundwork/core/hash.hpp"
#include "groundwork/core/json.hpp"

namespace groundwork {

namespace {

constexpr const char* kKinds[kLinesPerStep] = {"thought", "action_thought", "action_code",
                                               "observation", "state"};

std::vector<std::string> read_lines(const std::string& path) {
  std::vector<std::string> lines;
  if (!std::filesystem::exists(path)) return lines;
  const std::string content = read_file(path);
  std::size_t pos = 0;
  while (pos < content.size()) {
    const auto nl = content.find('\n', pos);
    if (nl == std::string::npos) {
      lines.push_back(content.substr(pos) + '\x01');  // no newline: torn write
      break;
    }
    lines.push_back(content.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

bool torn(const std::string& line) { return !line.empty() && line.back() == '\x01'; }

// The chain field is the last one on the line, so it can be read without a
// full parse; this keeps a damaged payload from masking the chain check.
std::optional<std::string> tail_prev_hash(const std::string& line) {
  static const std::string kKey = "\"prev_hash\":\"";
  const auto pos = line.rfind(kKey);
  if (pos == std::string::npos) return std::nullopt;
  const auto start = pos + kKey.size();
  const auto end = line.find('"', start);
  if (end == std::string::npos) return std::nullopt;
  return line.substr(start, end - start);
}

}  // namespace

std::string genesis_hash(const std::string& run_id, const std::string& query,
                         const std::string& initial_state_id) {
  return sha256_hex("genesis\n" + run_id + "\n" + query + "\n" + initial_state_id);
}

std::vector<std::string> step_lines(const std::string& run_id, const StepRecord& r,
                                    const AgentState* initial_state) {
  Json state_payload = {{"snapshot_id", r.state_snapshot_id}, {"state", r.state}};
  if (initial_state) state_payload["initial_state"] = *initial_state;
  const Json payloads[kLinesPerStep] = {Json(r.thought), Json(r.action_thought),
                                        Json(r.action_code), Json(r.observation),
                                        state_payload};
  std::vector<std::string> out;
  for (int i = 0; i < kLinesPerStep; ++i) {
    Json line;
    line["run_id"] = run_id;
    line["step"] = r.step_index;
    line["kind"] = kKinds[i];
    line["payload"] = payloads[i];
    line["timestamp"] = r.wall_time + i;
    line["prev_hash"] = r.prev_hash;
    out.push_back(canonical_dump(line));
  }
  return out;
}

std::string chain_hash(const std::vector<std::string>& lines) {
  std::string joined;
  for (const auto& l : lines) {
    joined += l;
    joined += '\n';
  }
  return sha256_hex(joined);
}

TraceWriter::TraceWriter(std::string path, std::string run_id, std::string prev_hash)
    : path_(std::move(path)), run_id_(std::move(run_id)), prev_hash_(std::move(prev_hash)) {}

std::vector<std::string> TraceWriter::append(StepRecord& record,
                                             const AgentState* initial_state) {
  record.prev_hash = prev_hash_;
  auto lines = step_lines(run_id_, record, initial_state);
  for (const auto& l : lines) append_line(path_, l);
  prev_hash_ = chain_hash(lines);
  return lines;
}

ParsedTrace read_trace(const std::string& path) {
  ParsedTrace out;
  auto lines = read_lines(path);
  std::size_t complete = lines.size() / kLinesPerStep;
  if (!lines.empty() && torn(lines.back())) {
    complete = (lines.size() - 1) / kLinesPerStep;
  }
  out.torn_lines = lines.size() - complete * kLinesPerStep;
  for (std::size_t k = 0; k < complete; ++k) {
    std::vector<std::string> group(lines.begin() + static_cast<std::ptrdiff_t>(k * kLinesPerStep),
                                   lines.begin() +
                                       static_cast<std::ptrdiff_t>((k + 1) * kLinesPerStep));
    StepRecord r;
    try {
      for (int i = 0; i < kLinesPerStep; ++i) {
        const Json j = parse_json(group[static_cast<std::size_t>(i)]);
        if (j.at("kind").get<std::string>() != kKinds[i] ||
            j.at("step").get<int>() != static_cast<int>(k)) {
          throw Error(ErrorCode::kChainBroken, "unexpected line order");
        }
        if (k == 0 && i == 0) out.run_id = j.at("run_id").get<std::string>();
        const Json& p = j.at("payload");
        switch (i) {
          case 0:
            r.step_index = static_cast<int>(k);
            r.thought = p.get<std::string>();
            r.wall_time = j.at("timestamp").get<Timestamp>();
            r.prev_hash = j.at("prev_hash").get<std::string>();
            break;
          case 1: r.action_thought = p.get<std::string>(); break;
          case 2: r.action_code = p.get<ActionCode>(); break;
          case 3: r.observation = p.get<Observation>(); break;
          case 4:
            r.state_snapshot_id = p.at("snapshot_id").get<std::string>();
            r.state = p.at("state").get<AgentState>();
            if (k == 0 && p.contains("initial_state")) {
              out.initial_state = p.at("initial_state").get<AgentState>();
            }
            break;
        }
      }
    } catch (const Error& e) {
      throw Error(ErrorCode::kChainBroken,
                  "step " + std::to_string(k) + " is malformed: " + e.what());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kChainBroken,
                  "step " + std::to_string(k) + " is malformed: " + e.what());
    }
    out.records.push_back(std::move(r));
    out.raw.push_back(std::move(group));
  }
  return out;
}

VerifyResult verify_trace(const std::string& path, const std::string& query) {
  VerifyResult res;
  if (!std::filesystem::exists(path)) {
    res.message = "trace not found: " + path;
    return res;
  }
  auto lines = read_lines(path);
  const bool has_torn = !lines.empty() && torn(lines.back());
  if (has_torn) lines.pop_back();
  const std::size_t steps = lines.size() / kLinesPerStep;
  auto fail = [&](int step, std::string msg) {
    res.ok = false;
    res.failed_step = step;
    res.message = "chain broken at step " + std::to_string(step) + ": " + msg;
    return res;
  };

  // Pass 1: chain over raw bytes.
  for (std::size_t k = 1; k < steps; ++k) {
    std::vector<std::string> prev(lines.begin() + static_cast<std::ptrdiff_t>((k - 1) * kLinesPerStep),
                                  lines.begin() + static_cast<std::ptrdiff_t>(k * kLinesPerStep));
    const std::string expected = chain_hash(prev);
    for (int i = 0; i < kLinesPerStep; ++i) {
      const auto got = tail_prev_hash(lines[k * kLinesPerStep + static_cast<std::size_t>(i)]);
      if (!got || *got != expected) {
        return fail(static_cast<int>(k), "prev_hash does not match step " + std::to_string(k - 1));
      }
    }
  }
  if (lines.size() % kLinesPerStep != 0 || has_torn) {
    return fail(static_cast<int>(steps), "incomplete step at end of trace");
  }

  // Pass 2: structure and state re-derivation.
  ParsedTrace trace;
  try {
    trace = read_trace(path);
  } catch (const Error& e) {
    const std::string msg = e.what();
    int step = 0;
    if (auto pos = msg.find("step "); pos != std::string::npos) {
      step = std::atoi(msg.c_str() + pos + 5);
    }
    return fail(step, msg);
  }
  if (trace.records.empty()) {
    res.ok = true;
    res.message = "verified, 0 steps";
    return res;
  }
  if (!trace.initial_state) return fail(0, "initial state missing");
  const std::string initial_id = trace.initial_state->snapshot_id();
  if (!query.empty() &&
      trace.records.front().prev_hash != genesis_hash(trace.run_id, query, initial_id)) {
    return fail(0, "genesis hash does not match run id, query and initial state");
  }
  AgentState prev = *trace.initial_state;
  for (const auto& r : trace.records) {
    for (const auto& l : trace.raw[static_cast<std::size_t>(r.step_index)]) {
      if (parse_json(l).at("run_id").get<std::string>() != trace.run_id) {
        return fail(r.step_index, "run id changes inside the trace");
      }
    }
    const Timestamp at = r.wall_time + kLinesPerStep - 1;
    AgentState derived = update_state(prev, r.thought, r.action_thought, r.action_code,
                                      r.observation, r.state.retention, at);
    if (derived != r.state || derived.snapshot_id() != r.state_snapshot_id) {
      return fail(r.step_index, "recorded state differs from the re-derived state");
    }
    prev = std::move(derived);
  }
  res.ok = true;
  res.steps = static_cast<int>(trace.records.size());
  res.final_state_id = prev.snapshot_id();
  res.message = "verified, " + std::to_string(res.steps) + " steps";
  return res;
}

int truncate_trace(const std::string& path, int keep_steps) {
  auto lines = read_lines(path);
  if (!lines.empty() && torn(lines.back())) lines.pop_back();
  const std::size_t keep =
      std::min(lines.size() / kLinesPerStep, static_cast<std::size_t>(std::max(0, keep_steps)));
  std::string content;
  for (std::size_t i = 0; i < keep * kLinesPerStep; ++i) content += lines[i] + "\n";
  write_file(path, content);
  return static_cast<int>(keep);
}

}  // namespace groundwork
