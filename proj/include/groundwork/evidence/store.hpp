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

#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "groundwork/evidence/types.hpp"

namespace groundwork {

/// Append-only evidence memory. Units are keyed by content id; a snapshot id
/// names the set of ids present after a persist call.
///
/// With a directory the store mirrors itself to disk:
///   units.jsonl      one unit per line, in insertion order
///   snapshots.jsonl  {"snapshot", "count"}: the prefix of units.jsonl it covers
///   index.json       node id -> unit ids, rebuilt on every persist
class EvidenceStore {
 public:
  EvidenceStore() = default;
  /// Opens (or creates) an on-disk store. A torn last line in either log is
  /// discarded. Throws Error(kStorageIo).
  explicit EvidenceStore(std::string dir);

  EvidenceStore(const EvidenceStore&) = delete;
  EvidenceStore& operator=(const EvidenceStore&) = delete;

  /// E_{t+1} = E_t ∪ units. Ids already present are ignored. Returns the new
  /// snapshot id (equal to the previous one when nothing was added).
  std::string persist(const std::vector<EvidenceUnit>& units);

  /// Rolls the store back to the state recorded under `snapshot_id`. Used only
  /// on resume, to discard units written after the last committed step.
  void truncate_to(std::string_view snapshot_id);

  /// The pointer stays valid until the next persist or truncate.
  const EvidenceUnit* find(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }
  std::size_t size() const;
  /// Units in insertion order.
  std::vector<EvidenceUnit> units() const;
  std::set<std::string> ids() const;
  std::string current_snapshot() const;
  std::vector<std::string> snapshots() const;
  /// Ids of the units covered by a snapshot.
  std::set<std::string> snapshot_ids(std::string_view snapshot_id) const;
  /// Unit ids bound to `node_id`, sorted.
  std::vector<std::string> bound_to(std::string_view node_id) const;

  /// Content id of an id set; the empty set has a fixed id.
  static std::string snapshot_id_of(const std::set<std::string>& ids);

 private:
  struct SnapshotMark {
    std::string id;
    std::size_t count = 0;
  };

  void add_locked(const EvidenceUnit& unit);
  void write_index_locked() const;
  void truncate_locked(std::string_view snapshot_id);
  bool on_disk() const { return !dir_.empty(); }

  mutable std::mutex mu_;
  std::string dir_;
  std::vector<EvidenceUnit> units_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
  std::map<std::string, std::set<std::string>, std::less<>> index_;
  std::vector<SnapshotMark> snapshots_;
};

}  // namespace groundwork
