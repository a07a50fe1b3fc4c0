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
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fairassign/decomposition.hpp"
#include "fairassign/model.hpp"
#include "fairassign/oracle.hpp"
#include "fairassign/properties.hpp"

namespace fairassign {

using Json = nlohmann::ordered_json;

// Parses JSON text, turning syntax errors into InputError.
Json parse_json(std::string_view text);

// {"items": [...], "agents": [{"name": ..., "prefs": [...]}, ...]}
Json instance_to_json(const Instance& instance);
Instance instance_from_json(const Json& doc);
std::string serialize_instance(const Instance& instance);
Instance parse_instance(std::string_view text);

// {"<agent>": ["<item>", ...], ...} in agent order; unallocated items omitted.
Json assignment_to_json(const Instance& instance, const Assignment& assignment);
Assignment assignment_from_json(const Instance& instance, const Json& doc);

// Rows in agent order, columns in item order, entries as "p/q" strings.
Json matrix_to_json(const RandomAssignment& shares);
RandomAssignment matrix_from_json(const Instance& instance, const Json& doc);

// {"<item>": "p/q", ...}
Json row_to_json(const Instance& instance, std::span<const Rational> row);
ShareVector row_from_json(const Instance& instance, const Json& doc);

// [{"prob": "p/q", "assignment": {...}}, ...]
Json lottery_to_json(const Instance& instance, const Lottery& lottery);
Lottery lottery_from_json(const Instance& instance, const Json& doc);

// [{"prob": "p/q", "assignment": {...}, "rounds": [{...}, ...]}, ...]
Json decomposed_to_json(const Instance& instance, const DecomposedLottery& lottery);

Json item_set_to_json(const Instance& instance, const ItemSet& set);

// {"property": name, "verdict": bool, "witness": {...} | null}
Json report_to_json(const Instance& instance, const PropertyReport& report);
PropertyReport report_from_json(const Instance& instance, const Json& doc);

Json sp_witness_to_json(const SpWitness& witness);
SpWitness sp_witness_from_json(const Json& doc);

// A mechanism output document as written by `run` and read by `check`.
struct OutcomeDocument {
  enum class Kind { kDeterministic, kRandom, kLottery };
  Kind kind;
  std::optional<Assignment> assignment;
  std::optional<RandomAssignment> matrix;
  std::optional<Lottery> lottery;
  std::vector<Assignment> rounds;      // per-round matchings, when present
  std::vector<ItemSet> remaining;      // M^c, when present
};

OutcomeDocument outcome_from_json(const Instance& instance, const Json& doc);

}  // namespace fairassign
