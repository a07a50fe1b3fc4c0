// Copyright 2026 The fairassign Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "fairassign/model.hpp"

namespace fairassign {

// Source of tie-breaking decisions. pick(k) returns an index in [0, k) into
// the contested applicants, which are always listed in increasing agent index.
class TieBreaker {
 public:
  virtual ~TieBreaker() = default;
  virtual std::size_t pick(std::size_t choices) = 0;
};

// Seeded 64-bit Mersenne Twister; a draw is `engine() % choices`, which is
// identical on every platform.
class SeededTieBreaker final : public TieBreaker {
 public:
  explicit SeededTieBreaker(std::uint64_t seed) : engine_(seed) {}
  std::size_t pick(std::size_t choices) override;

 private:
  std::mt19937_64 engine_;
};

// Replays an explicit choice sequence, then falls back to 0 and records the
// branching factor of every decision it was asked for.
class ScriptedTieBreaker final : public TieBreaker {
 public:
  explicit ScriptedTieBreaker(std::vector<std::size_t> script = {}) : script_(std::move(script)) {}
  std::size_t pick(std::size_t choices) override;

  const std::vector<std::size_t>& choices() const { return taken_; }
  const std::vector<std::size_t>& branching() const { return branching_; }

 private:
  std::vector<std::size_t> script_;
  std::vector<std::size_t> taken_;
  std::vector<std::size_t> branching_;
};

enum class Mechanism { kGebm, kGpbm, kRsdq };

std::string_view mechanism_name(Mechanism mechanism);
// Throws InputError for an unknown name.
Mechanism parse_mechanism(std::string_view name);

// Eager Boston matching over `available`: every unmatched agent applies to its
// top remaining item, all applicant sets are formed against the same state,
// each contested item goes to a uniformly drawn applicant, and applied-for
// items and winners leave together. Contested items are resolved in item
// index order.
Assignment ebm(const Instance& instance, const ItemSet& available, TieBreaker& ties);

struct GebmOutcome {
  Assignment total;
  std::vector<Assignment> rounds;     // A^c
  std::vector<ItemSet> remaining;     // M^c, items available at round start
};

GebmOutcome gebm(const Instance& instance, TieBreaker& ties);
GebmOutcome gebm_sample(const Instance& instance, std::uint64_t seed);

inline constexpr std::uint64_t kDefaultMaxBranches = 1'000'000;

// Every tie-break branch with its exact probability, identical totals merged.
// Throws SizeError once more than `max_branches` leaves are reached.
Lottery gebm_lottery(const Instance& instance, std::uint64_t max_branches = kDefaultMaxBranches);
RandomAssignment gebm_expected(const Instance& instance,
                               std::uint64_t max_branches = kDefaultMaxBranches);

struct ConsumptionEvent {
  std::size_t round;              // c, 1-based
  std::size_t consumption_round;  // r, 1-based
  ItemIndex item;
  std::vector<AgentIndex> consumers;
  std::vector<Rational> amounts;  // parallel to consumers
};

struct GpbmOutcome {
  RandomAssignment total;
  std::vector<RandomAssignment> rounds;  // P^c
  std::vector<ConsumptionEvent> trace;   // empty unless requested
};

// Round-structured eating: one unit of budget per agent per round, consumers
// of item o in consumption round r are the agents ranking o r-th globally.
GpbmOutcome gpbm(const Instance& instance, bool record_trace = false);

// Splits `supply` among consumers eating at equal rates, each capped by its
// own budget. Returns the amount each consumer takes.
std::vector<Rational> waterfill(std::span<const Rational> budgets, const Rational& supply);

// Block serial dictatorship: in `priority` order, each agent takes its
// `quota` most preferred remaining items.
Assignment rsdq(const Instance& instance, std::span<const AgentIndex> priority, std::size_t quota);
// Uniform mixture over all n! priority orders. Throws SizeError if n! exceeds
// `max_orders`.
Lottery rsdq_lottery(const Instance& instance, std::size_t quota,
                     std::uint64_t max_orders = kDefaultMaxBranches);

}  // namespace fairassign
