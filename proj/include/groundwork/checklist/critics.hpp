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

#include <chrono>
#include <condition_variable>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "groundwork/providers/ports.hpp"

namespace groundwork {

/// Approves every item as proposed. Used when refinement is switched off.
class ApproveAllCritic : public CriticPort {
 public:
  DecisionDocument review(const ReviewDocument& review) override;
  std::string name() const override { return "approve-all"; }
};

/// Delegates to the policy's critique, i.e. a model reviewing the checklist.
class PolicyCritic : public CriticPort {
 public:
  explicit PolicyCritic(PolicyPort& policy) : policy_(policy) {}
  DecisionDocument review(const ReviewDocument& review) override;
  std::string name() const override { return "llm"; }

 private:
  PolicyPort& policy_;
};

/// Wraps a callable; handy for scripted reviewers in tests.
class FunctionCritic : public CriticPort {
 public:
  using Fn = std::function<DecisionDocument(const ReviewDocument&)>;
  explicit FunctionCritic(Fn fn, std::string name = "function")
      : fn_(std::move(fn)), name_(std::move(name)) {}
  DecisionDocument review(const ReviewDocument& review) override { return fn_(review); }
  std::string name() const override { return name_; }

 private:
  Fn fn_;
  std::string name_;
};

enum class PostResult { kAccepted, kDuplicate, kNoPending, kVersionMismatch };

std::string_view to_string(PostResult r);

/// Rendezvous between a run waiting for a checklist decision and whoever
/// supplies it (HTTP handler, CLI prompt, test). Thread-safe.
class ReviewChannel {
 public:
  using OpenHook = std::function<void(const ReviewDocument&)>;
  using DecisionHook = std::function<void(const ReviewDocument&, const DecisionDocument&)>;

  void set_on_open(OpenHook hook);
  void set_on_decision(DecisionHook hook);

  /// Publishes a review document; replaces any earlier, unanswered one.
  void open(ReviewDocument doc);
  /// The document currently awaiting a decision.
  std::optional<ReviewDocument> pending() const;
  /// The last review that received a decision, for duplicate detection.
  std::optional<int> last_decided_version() const;

  /// Idempotent by checklist version: re-posting for an already decided
  /// version reports kDuplicate and changes nothing.
  PostResult post(const DecisionDocument& decision);

  /// Blocks until a decision is posted. Throws Error(kCriticTimeout) after
  /// `timeout` and Error(kAborted) if the channel is cancelled.
  DecisionDocument wait(std::chrono::milliseconds timeout);
  void cancel();
  bool cancelled() const;

 private:
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::optional<ReviewDocument> pending_;
  std::optional<DecisionDocument> decision_;
  std::optional<int> decided_version_;
  bool cancelled_ = false;
  OpenHook on_open_;
  DecisionHook on_decision_;
};

/// Critic backed by a ReviewChannel: each round opens a review and waits for
/// an external decision.
class HumanCritic : public CriticPort {
 public:
  HumanCritic(ReviewChannel& channel, std::chrono::milliseconds timeout)
      : channel_(channel), timeout_(timeout) {}
  DecisionDocument review(const ReviewDocument& review) override;
  std::string name() const override { return "human"; }

 private:
  ReviewChannel& channel_;
  std::chrono::milliseconds timeout_;
};

}  // namespace groundwork
