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

#include "groundwork/checklist/critics.hpp"

#include "groundwork/core/error.hpp"

namespace groundwork {

DecisionDocument ApproveAllCritic::review(const ReviewDocument& review) {
  DecisionDocument d;
  d.checklist_version = review.checklist_version;
  d.approve_all = true;
  d.reviewer = name();
  return d;
}

DecisionDocument PolicyCritic::review(const ReviewDocument& review) {
  DecisionDocument d = policy_.critique(review);
  d.checklist_version = review.checklist_version;
  if (d.reviewer.empty()) d.reviewer = name();
  return d;
}

std::string_view to_string(PostResult r) {
  switch (r) {
    case PostResult::kAccepted: return "accepted";
    case PostResult::kDuplicate: return "duplicate";
    case PostResult::kNoPending: return "no-pending";
    case PostResult::kVersionMismatch: return "version-mismatch";
  }
  return "unknown";
}

void ReviewChannel::set_on_open(OpenHook hook) {
  std::lock_guard lock(mu_);
  on_open_ = std::move(hook);
}

void ReviewChannel::set_on_decision(DecisionHook hook) {
  std::lock_guard lock(mu_);
  on_decision_ = std::move(hook);
}

void ReviewChannel::open(ReviewDocument doc) {
  OpenHook hook;
  {
    std::lock_guard lock(mu_);
    pending_ = doc;
    decision_.reset();
    hook = on_open_;
  }
  if (hook) hook(doc);
}

std::optional<ReviewDocument> ReviewChannel::pending() const {
  std::lock_guard lock(mu_);
  return pending_;
}

std::optional<int> ReviewChannel::last_decided_version() const {
  std::lock_guard lock(mu_);
  return decided_version_;
}

PostResult ReviewChannel::post(const DecisionDocument& decision) {
  DecisionHook hook;
  ReviewDocument doc;
  {
    std::lock_guard lock(mu_);
    if (decided_version_ && *decided_version_ == decision.checklist_version &&
        (!pending_ || pending_->checklist_version != decision.checklist_version)) {
      return PostResult::kDuplicate;
    }
    if (!pending_) return PostResult::kNoPending;
    if (pending_->checklist_version != decision.checklist_version) {
      return PostResult::kVersionMismatch;
    }
    if (decision_) return PostResult::kDuplicate;
    decision_ = decision;
    decided_version_ = decision.checklist_version;
    doc = *pending_;
    hook = on_decision_;
  }
  cv_.notify_all();
  if (hook) hook(doc, decision);
  return PostResult::kAccepted;
}

DecisionDocument ReviewChannel::wait(std::chrono::milliseconds timeout) {
  std::unique_lock lock(mu_);
  const bool ready =
      cv_.wait_for(lock, timeout, [&] { return decision_.has_value() || cancelled_; });
  if (cancelled_) throw Error(ErrorCode::kAborted, "review cancelled");
  if (!ready) {
    pending_.reset();
    throw Error(ErrorCode::kCriticTimeout, "no checklist decision within " +
                                               std::to_string(timeout.count()) + " ms");
  }
  DecisionDocument d = std::move(*decision_);
  decision_.reset();
  pending_.reset();
  return d;
}

void ReviewChannel::cancel() {
  {
    std::lock_guard lock(mu_);
    cancelled_ = true;
  }
  cv_.notify_all();
}

bool ReviewChannel::cancelled() const {
  std::lock_guard lock(mu_);
  return cancelled_;
}

DecisionDocument HumanCritic::review(const ReviewDocument& review) {
  channel_.open(review);
  DecisionDocument d = channel_.wait(timeout_);
  if (d.reviewer.empty()) d.reviewer = name();
  return d;
}

}  // namespace groundwork
