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
#include <optional>
#include <string>
#include <vector>

#include "fairassign/mechanisms.hpp"
#include "fairassign/oracle.hpp"
#include "fairassign/serialize.hpp"

// Document-level operations behind the command-line subcommands. Each takes
// parsed inputs and returns the JSON document the command writes.
namespace fairassign {

struct RunOptions {
  Mechanism mechanism = Mechanism::kGebm;
  std::string mode;                   // empty selects the mechanism's default
  std::uint64_t seed = 0;
  std::size_t quota = 0;              // 0 selects ceil(m/n)
  std::vector<std::string> priority;  // agent names; empty draws one from `seed`
  std::uint64_t max_branches = kDefaultMaxBranches;
  bool trace = false;
};

// gebm: sample | expected | lottery; gpbm: fractional | lottery;
// rsdq: sample | expected | lottery.
Json run_mechanism(const Instance& instance, const RunOptions& options);

struct CheckResult {
  Json document;
  bool all_pass = true;
};

// Properties: pe, sde, fcm, ef1, sdwef, sdef, fhr, feri, expost-pe,
// expost-fcm, expost-ef1. A property that does not apply to the document's
// kind is an InputError.
CheckResult check_outcome(const Instance& instance, const Json& outcome,
                          const std::vector<std::string>& properties);

// GPBM followed by subagent expansion and decomposition; with a seed, one
// realization is drawn as well.
Json decompose_document(const Instance& instance, std::optional<std::uint64_t> seed);

struct AuditOptions {
  Mechanism mechanism = Mechanism::kGebm;
  OracleLimits limits;
  std::optional<std::string> agent;                     // sp: restrict to one misreport
  std::optional<std::vector<std::string>> misreport;
  std::optional<std::string> permutation;               // neutrality: "c:d,d:c"
  std::size_t max_size = 3;                             // remark1: n, m bounds
};

struct AuditResult {
  Json document;
  bool found = false;     // sp/remark1: witness found; neutrality: equal
  bool replayed = true;   // reproducibility self-check
};

AuditResult audit_sp(const Instance& instance, const AuditOptions& options);
AuditResult audit_neutrality(const Instance& instance, const AuditOptions& options);
AuditResult audit_remark1(const AuditOptions& options);

// "c:d,d:c": c becomes d and d becomes c; unmentioned items stay fixed.
ItemPermutation parse_permutation(const Instance& instance, const std::string& text);

}  // namespace fairassign
