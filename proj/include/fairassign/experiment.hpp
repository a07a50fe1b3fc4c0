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
#include <string>
#include <utility>
#include <vector>

#include "fairassign/mechanisms.hpp"
#include "fairassign/properties.hpp"
#include "fairassign/serialize.hpp"

namespace fairassign {

struct ExperimentConfig {
  std::vector<Mechanism> mechanisms{Mechanism::kGebm, Mechanism::kGpbm};
  std::vector<std::pair<std::size_t, std::size_t>> sizes{{3, 6}};  // (agents, items)
  std::string culture = "impartial";
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::vector<Property> properties{Property::kFcm, Property::kPe, Property::kEf1};
  bool timing = true;
  std::size_t threads = 0;  // 0 = hardware concurrency
  std::string out;
};

// Reads {"mechanisms", "agents"+"items" (grid) or "sizes", "culture",
// "trials", "seed", "properties", "timing", "threads", "out"}; throws
// InputError on anything invalid.
ExperimentConfig experiment_config_from_json(const Json& doc);
void validate(const ExperimentConfig& config);

inline constexpr const char* kExperimentCsvHeader =
    "mechanism,agents,items,culture,trials,first_choice_share,first_choice_share_float,"
    "rank_histogram,fcm_violations,pe_violations,ef1_violations,mean_ms,max_ms";

// One CSV row per (mechanism, size) cell, header first. Trials in a cell run
// on the same instances for every mechanism; results do not depend on the
// thread count.
std::string run_experiment(const ExperimentConfig& config);

// SplitMix64 finalizer, used to derive per-trial seeds.
std::uint64_t mix_seed(std::uint64_t value);

}  // namespace fairassign
