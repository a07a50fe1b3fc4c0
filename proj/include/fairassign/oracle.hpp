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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairassign/mechanisms.hpp"
#include "fairassign/model.hpp"
#include "fairassign/properties.hpp"

namespace fairassign {

struct OracleLimits {
  std::uint64_t max_enum = 1'000'000;           // assignments or profiles enumerated
  std::uint64_t max_branches = kDefaultMaxBranches;
  std::size_t max_misreport_items = 6;          // m! misreports per agent
};

// Visits all n^m maps items -> agents (agent 0 holds everything first, then
// counting in base n with item 0 fastest). With `balanced_only`, only bundles
// of size floor(m/n) or ceil(m/n) are visited. `visit` returns false to stop.
void for_each_assignment(const Instance& instance, bool balanced_only,
                         const std::function<bool(const Assignment&)>& visit,
                         std::uint64_t max_enum = OracleLimits{}.max_enum);
std::vector<Assignment> enumerate_assignments(const Instance& instance, bool balanced_only,
                                              std::uint64_t max_enum = OracleLimits{}.max_enum);

// No complete A' lex-improves a nonempty set of agents while leaving every
// other bundle untouched.
bool pe_bruteforce(const Instance& instance, const Assignment& assignment,
                   std::uint64_t max_enum = OracleLimits{}.max_enum);
// Maximum of fcm_count over every complete assignment.
std::size_t fcm_max_bruteforce(const Instance& instance,
                               std::uint64_t max_enum = OracleLimits{}.max_enum);

// Exact ex-ante outcome: the GEBM mean over all tie-breaks, the GPBM matrix,
// or the RSDQ mean over all priority orders with quota ceil(m/n).
RandomAssignment exact_outcome(Mechanism mechanism, const Instance& instance,
                               const OracleLimits& limits = {});

struct SpWitness {
  Mechanism mechanism;
  Instance true_profile;
  AgentIndex agent;
  PreferenceOrder misreport;
  ShareVector truthful;
  ShareVector manipulated;

  Instance misreport_profile() const { return true_profile.with_preferences(agent, misreport); }
};

struct DominanceStep {
  ItemIndex item;
  Rational truthful_cumulative;
  Rational manipulated_cumulative;
};

// Cumulative shares of both rows along the agent's true order.
std::vector<DominanceStep> dominance_trace(const SpWitness& witness);

// Witness iff the misreport yields a different row that sd-dominates the
// truthful one under the true order.
std::optional<SpWitness> check_misreport(Mechanism mechanism, const Instance& instance,
                                         AgentIndex agent, const PreferenceOrder& misreport,
                                         const OracleLimits& limits = {});

// Agents in index order, misreports in lexicographic order of item indices;
// returns the first witness.
std::optional<SpWitness> sd_wsp_audit(Mechanism mechanism, const Instance& instance,
                                      const OracleLimits& limits = {});

// Recomputes both rows and the dominance relation from scratch.
bool replay_sp_witness(const SpWitness& witness, const OracleLimits& limits = {});

// f(pi(R)) == pi(f(R)), compared as exact lotteries (GEBM, RSDQ) or as the
// total and per-round matrices (GPBM).
PropertyReport neutrality_audit(Mechanism mechanism, const Instance& instance,
                                const ItemPermutation& perm, const OracleLimits& limits = {});
// Same over every permutation of the items; the witness names the first
// failing permutation.
PropertyReport neutrality_audit_all(Mechanism mechanism, const Instance& instance,
                                    const OracleLimits& limits = {});

struct Remark1Witness {
  Instance profile;
  std::string property;  // "sde" or "sdef"
};

// Enumerates every profile with n <= bound_n agents and m <= bound_m items
// (smaller sizes first) and returns the first whose exact GEBM mean fails one
// of `properties` (checked in the given order).
std::optional<Remark1Witness> remark1_search(std::size_t bound_n, std::size_t bound_m,
                                             std::span<const Property> properties,
                                             const OracleLimits& limits = {});
std::optional<Remark1Witness> remark1_search(std::size_t bound_n, std::size_t bound_m,
                                             const OracleLimits& limits = {});

}  // namespace fairassign
