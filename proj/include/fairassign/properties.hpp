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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairassign/model.hpp"

namespace fairassign {

// Counterexample attached to a failed check. Which fields are filled depends
// on the property: an envy pair (judge, envied), a preference cycle of items,
// an offending item, and for lotteries the index of the failing atom.
struct Witness {
  std::vector<AgentIndex> agents;
  std::vector<ItemIndex> items;
  std::optional<std::size_t> atom;
  std::string detail;

  bool operator==(const Witness&) const = default;
};

struct PropertyReport {
  std::string property;
  bool verdict = true;
  std::optional<Witness> witness;  // present iff verdict is false

  bool operator==(const PropertyReport&) const = default;
};

enum class Property { kPe, kSde, kFcm, kEf1, kSdWef, kSdEf, kFhr, kFeri };

std::string_view property_name(Property property);
Property parse_property(std::string_view name);

// Pareto efficiency via acyclicity of o -> o' whenever a holder of o prefers
// o'. The witness lists the cycle in edge order. Requires a complete A.
PropertyReport check_pe_acyclic(const Instance& instance, const Assignment& assignment);

// sd-efficiency via acyclicity of o -> o' whenever some j with P(j,o) > 0
// prefers o'. Requires a fully allocating P.
PropertyReport check_sde_acyclic(const Instance& instance, const RandomAssignment& shares);

// Every item that is someone's first choice is held by an agent ranking it
// first.
PropertyReport check_fcm(const Instance& instance, const Assignment& assignment);
// Agents holding their own first choice.
std::size_t fcm_count(const Instance& instance, const Assignment& assignment);
// Distinct items ranked first by someone; the maximum achievable fcm_count.
std::size_t fcm_max(const Instance& instance);

PropertyReport check_ef1(const Instance& instance, const Assignment& assignment);
// True iff removing some single item from `envied` leaves a bundle that
// `judge` weakly sd-prefers its own bundle to. Vacuously true for empty `envied`.
bool ef1_pair(const Instance& instance, const Assignment& assignment, AgentIndex judge,
              AgentIndex envied);

PropertyReport check_sd_wef(const Instance& instance, const RandomAssignment& shares);
PropertyReport check_sd_ef(const Instance& instance, const RandomAssignment& shares);

// Favoring higher ranks, with ranks taken inside `domain`. Throws InputError if
// an allocated item lies outside `domain`.
PropertyReport check_fhr(const Instance& instance, const Assignment& assignment,
                         const ItemSet& domain);
PropertyReport check_fhr(const Instance& instance, const Assignment& assignment);

// Favoring eagerness for remaining items on a one-to-one matching over
// `domain`, following the tier sets T^1, T^2, ...
PropertyReport check_feri(const Instance& instance, const Assignment& matching,
                          const ItemSet& domain);

// Every item an agent receives in round c is strictly preferred by that agent
// to every item anyone receives in round c + 1.
PropertyReport check_round_ordering(const Instance& instance, std::span<const Assignment> rounds);

// Dispatch for the deterministic properties (pe, fcm, ef1, fhr).
PropertyReport check_deterministic(const Instance& instance, const Assignment& assignment,
                                   Property property);

// Runs each deterministic checker on every atom; the first failing atom is
// reported together with its inner witness.
std::vector<PropertyReport> check_lottery_expost(const Instance& instance, const Lottery& lottery,
                                                 std::span<const Property> properties);

}  // namespace fairassign
