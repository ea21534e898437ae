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

#include "groundwork/evidence/store.hpp"

#include <filesystem>
#include <sstream>

#include "groundwork/core/error.hpp"
#include "groundwork/core/hash.hpp"
#include "groundwork/core/json.hpp"

namespace groundwork {

namespace fs = std::filesystem;

namespace {

// Parses complete JSONL lines; a torn final line (from a crash) is dropped.
std::vector<Json> read_jsonl(const std::string& path) {
  std::vector<Json> out;
  if (!fs::exists(path)) return out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      out.push_back(parse_json(line));
    } catch (const Error&) {
      if (in.peek() != EOF) {
        throw Error(ErrorCode::kStorageIo, "corrupt line in " + path);
      }
    }
  }
  return out;
}

}  // namespace

std::string EvidenceStore::snapshot_id_of(const std::set<std::string>& ids) {
  std::string joined;
  for (const auto& id : ids) {
    joined += id;
    joined += '\n';
  }
  return "snap-" + short_hash(joined);
}

EvidenceStore::EvidenceStore(std::string dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw Error(ErrorCode::kStorageIo, "cannot create " + dir_ + ": " + ec.message());
  for (const auto& j : read_jsonl(dir_ + "/units.jsonl")) add_locked(j.get<EvidenceUnit>());
  for (const auto& j : read_jsonl(dir_ + "/snapshots.jsonl")) {
    snapshots_.push_back({j.at("snapshot").get<std::string>(), j.at("count").get<std::size_t>()});
  }
  // Units beyond the last recorded snapshot were never committed.
  const std::size_t committed = snapshots_.empty() ? 0 : snapshots_.back().count;
  if (units_.size() > committed) {
    truncate_locked(snapshots_.empty() ? snapshot_id_of({}) : snapshots_.back().id);
  }
}

void EvidenceStore::add_locked(const EvidenceUnit& unit) {
  by_id_.emplace(unit.id, units_.size());
  units_.push_back(unit);
  for (const auto& node : unit.bound_nodes) index_[node].insert(unit.id);
}

void EvidenceStore::write_index_locked() const {
  Json index = Json::object();
  for (const auto& [node, ids] : index_) index[node] = ids;
  write_file(dir_ + "/index.json", index.dump(2) + "\n");
}

std::string EvidenceStore::persist(const std::vector<EvidenceUnit>& units) {
  std::lock_guard lock(mu_);
  std::vector<const EvidenceUnit*> fresh;
  std::set<std::string> seen;
  for (const auto& u : units) {
    if (by_id_.count(u.id) || !seen.insert(u.id).second) continue;
    fresh.push_back(&u);
  }
  std::set<std::string> all;
  for (const auto& u : units_) all.insert(u.id);
  for (const auto* u : fresh) all.insert(u->id);
  const std::string snap = snapshot_id_of(all);

  if (on_disk()) {
    for (const auto* u : fresh) append_line(dir_ + "/units.jsonl", canonical_dump(Json(*u)));
  }
  for (const auto* u : fresh) add_locked(*u);
  if (snapshots_.empty() || snapshots_.back().id != snap) {
    snapshots_.push_back({snap, units_.size()});
    if (on_disk()) {
      Json mark = {{"snapshot", snap}, {"count", units_.size()}};
      append_line(dir_ + "/snapshots.jsonl", canonical_dump(mark));
    }
  }
  if (on_disk() && !fresh.empty()) write_index_locked();
  return snap;
}

void EvidenceStore::truncate_to(std::string_view snapshot_id) {
  std::lock_guard lock(mu_);
  truncate_locked(snapshot_id);
}

void EvidenceStore::truncate_locked(std::string_view snapshot_id) {
  std::size_t keep_units = 0;
  std::size_t keep_marks = 0;
  if (snapshot_id != snapshot_id_of({})) {
    bool found = false;
    for (std::size_t i = snapshots_.size(); i-- > 0;) {
      if (snapshots_[i].id == snapshot_id) {
        keep_units = snapshots_[i].count;
        keep_marks = i + 1;
        found = true;
        break;
      }
    }
    if (!found) {
      throw Error(ErrorCode::kStorageIo,
                  "snapshot " + std::string(snapshot_id) + " not found in store");
    }
  } else {
    while (keep_marks < snapshots_.size() && snapshots_[keep_marks].count == 0) ++keep_marks;
  }
  std::vector<EvidenceUnit> kept(units_.begin(),
                                 units_.begin() + static_cast<std::ptrdiff_t>(keep_units));
  snapshots_.resize(keep_marks);
  units_.clear();
  by_id_.clear();
  index_.clear();
  for (const auto& u : kept) add_locked(u);
  if (on_disk()) {
    std::string units_text;
    for (const auto& u : units_) units_text += canonical_dump(Json(u)) + "\n";
    write_file(dir_ + "/units.jsonl", units_text);
    std::string marks;
    for (const auto& m : snapshots_) {
      marks += canonical_dump(Json{{"snapshot", m.id}, {"count", m.count}}) + "\n";
    }
    write_file(dir_ + "/snapshots.jsonl", marks);
    write_index_locked();
  }
}

const EvidenceUnit* EvidenceStore::find(std::string_view id) const {
  std::lock_guard lock(mu_);
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &units_[it->second];
}

std::size_t EvidenceStore::size() const {
  std::lock_guard lock(mu_);
  return units_.size();
}

std::vector<EvidenceUnit> EvidenceStore::units() const {
  std::lock_guard lock(mu_);
  return units_;
}

std::set<std::string> EvidenceStore::ids() const {
  std::lock_guard lock(mu_);
  std::set<std::string> out;
  for (const auto& [id, _] : by_id_) out.insert(id);
  return out;
}

std::string EvidenceStore::current_snapshot() const {
  std::lock_guard lock(mu_);
  return snapshots_.empty() ? snapshot_id_of({}) : snapshots_.back().id;
}

std::vector<std::string> EvidenceStore::snapshots() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> out;
  for (const auto& m : snapshots_) out.push_back(m.id);
  return out;
}

std::set<std::string> EvidenceStore::snapshot_ids(std::string_view snapshot_id) const {
  std::lock_guard lock(mu_);
  for (const auto& m : snapshots_) {
    if (m.id != snapshot_id) continue;
    std::set<std::string> out;
    for (std::size_t i = 0; i < m.count; ++i) out.insert(units_[i].id);
    return out;
  }
  if (snapshot_id == snapshot_id_of({})) return {};
  throw Error(ErrorCode::kPrecondition, "unknown snapshot " + std::string(snapshot_id));
}

std::vector<std::string> EvidenceStore::bound_to(std::string_view node_id) const {
  std::lock_guard lock(mu_);
  auto it = index_.find(node_id);
  if (it == index_.end()) return {};
  return {it->second.begin(), it->second.end()};
}

}  // namespace groundwork
