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
#include <vector>

#include "groundwork/agent/types.hpp"

namespace groundwork {

// Trace file: five JSON lines per step, one per component, in commit order
// thought, action_thought, action_code, observation, state. Every line has
// the fields run_id, step, kind, payload, timestamp, prev_hash, in that order.
// prev_hash on all lines of step k is the SHA-256 of the five raw lines of
// step k-1 (each followed by '\n'); step 0 chains to a genesis hash over the
// run id, query and initial state id. Step 0's state payload also carries the
// initial state so the whole run can be re-derived from the file alone.

inline constexpr int kLinesPerStep = 5;

std::string genesis_hash(const std::string& run_id, const std::string& query,
                         const std::string& initial_state_id);

/// The five trace lines for one record, without trailing newlines.
std::vector<std::string> step_lines(const std::string& run_id, const StepRecord& record,
                                    const AgentState* initial_state);

/// Hash that the next step's lines carry as prev_hash.
std::string chain_hash(const std::vector<std::string>& lines);

class TraceWriter {
 public:
  /// Starts a new trace, or continues one whose last complete step hashed to
  /// `prev_hash`.
  TraceWriter(std::string path, std::string run_id, std::string prev_hash);

  /// Appends the record's five lines; record.prev_hash is filled in. Returns
  /// the lines written.
  std::vector<std::string> append(StepRecord& record, const AgentState* initial_state);
  const std::string& prev_hash() const { return prev_hash_; }

 private:
  std::string path_;
  std::string run_id_;
  std::string prev_hash_;
};

struct ParsedTrace {
  std::string run_id;
  std::optional<AgentState> initial_state;
  std::vector<StepRecord> records;
  std::vector<std::vector<std::string>> raw;  // raw lines per complete step
  std::size_t torn_lines = 0;                 // trailing lines of an incomplete step
};

/// Splits the file into complete steps and parses them. Throws
/// Error(kChainBroken) on malformed lines inside complete steps.
ParsedTrace read_trace(const std::string& path);

struct VerifyResult {
  bool ok = false;
  int steps = 0;
  std::optional<int> failed_step;
  std::string message;
  std::string final_state_id;
};

/// Checks the hash chain over the raw bytes first (so damage in step k shows
/// up at step k+1), then parses each step and re-derives every state with
/// update_state. `query` seeds the genesis check; leave empty to skip it.
VerifyResult verify_trace(const std::string& path, const std::string& query = {});

/// Truncates the file to its complete steps; returns how many remain.
int truncate_trace(const std::string& path, int keep_steps);

}  // namespace groundwork
