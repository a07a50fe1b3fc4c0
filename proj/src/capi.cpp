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

#include "fairassign/fairassign.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "fairassign/culture.hpp"
#include "fairassign/errors.hpp"
#include "fairassign/experiment.hpp"
#include "fairassign/service.hpp"

struct fa_instance {
  fairassign::Instance value;
};

namespace {

thread_local std::string last_error;

std::vector<std::string> split_csv(const char* text) {
  std::vector<std::string> parts;
  if (text == nullptr) return parts;
  std::string current;
  for (const char* p = text;; ++p) {
    if (*p == ',' || *p == '\0') {
      if (!current.empty()) parts.push_back(current);
      current.clear();
      if (*p == '\0') break;
    } else if (*p != ' ') {
      current += *p;
    }
  }
  return parts;
}

char* duplicate(const std::string& s) {
  char* copy = static_cast<char*>(std::malloc(s.size() + 1));
  if (copy == nullptr) throw std::bad_alloc();
  std::memcpy(copy, s.c_str(), s.size() + 1);
  return copy;
}

std::string dump(const fairassign::Json& doc) { return doc.dump(2) + "\n"; }

template <typename F>
fa_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return FA_OK;
  } catch (const fairassign::InputError& e) {
    last_error = e.what();
    return FA_ERR_INPUT;
  } catch (const fairassign::SizeError& e) {
    last_error = e.what();
    return FA_ERR_SIZE;
  } catch (const fairassign::InvariantError& e) {
    last_error = e.what();
    return FA_ERR_INVARIANT;
  } catch (const nlohmann::json::exception& e) {
    last_error = e.what();
    return FA_ERR_INPUT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FA_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return FA_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw fairassign::InputError(std::string(what) + " must not be null");
}

fairassign::AuditOptions audit_options(const fa_audit_options* options) {
  require(options, "options");
  fairassign::AuditOptions result;
  if (options->mechanism != nullptr) result.mechanism = fairassign::parse_mechanism(options->mechanism);
  result.limits.max_branches = options->max_branches;
  result.limits.max_enum = options->max_enum;
  if (options->permutation != nullptr) result.permutation = std::string(options->permutation);
  result.max_size = options->max_size;
  if (options->agent != nullptr) result.agent = std::string(options->agent);
  if (options->misreport != nullptr) result.misreport = split_csv(options->misreport);
  return result;
}

}  // namespace

extern "C" {

const char* fa_version(void) { return "0.1.0"; }

const char* fa_last_error(void) { return last_error.c_str(); }

void fa_string_free(char* s) { std::free(s); }

fa_status fa_instance_parse(const char* json, fa_instance** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new fa_instance{fairassign::parse_instance(json)};
  });
}

fa_status fa_instance_generate(size_t agents, size_t items, uint64_t seed, fa_instance** out) {
  return guarded([&] {
    require(out, "out");
    *out = new fa_instance{fairassign::impartial_culture(agents, items, seed)};
  });
}

fa_status fa_instance_serialize(const fa_instance* inst, char** out) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    *out = duplicate(fairassign::serialize_instance(inst->value));
  });
}

size_t fa_instance_agent_count(const fa_instance* inst) { return inst ? inst->value.n() : 0; }

size_t fa_instance_item_count(const fa_instance* inst) { return inst ? inst->value.m() : 0; }

void fa_instance_free(fa_instance* inst) { delete inst; }

void fa_run_options_init(fa_run_options* options) {
  if (options == nullptr) return;
  *options = fa_run_options{};
  options->mechanism = "gebm";
  options->max_branches = fairassign::kDefaultMaxBranches;
}

fa_status fa_run(const fa_instance* inst, const fa_run_options* options, char** out) {
  return guarded([&] {
    require(inst, "instance");
    require(options, "options");
    require(out, "out");
    fairassign::RunOptions run;
    run.mechanism = fairassign::parse_mechanism(options->mechanism ? options->mechanism : "");
    if (options->mode != nullptr) run.mode = options->mode;
    run.seed = options->seed;
    run.quota = options->quota;
    run.priority = split_csv(options->priority);
    run.max_branches = options->max_branches;
    run.trace = options->trace != 0;
    *out = duplicate(dump(fairassign::run_mechanism(inst->value, run)));
  });
}

fa_status fa_check(const fa_instance* inst, const char* outcome_json, const char* properties,
                   int* all_pass, char** out) {
  return guarded([&] {
    require(inst, "instance");
    require(outcome_json, "outcome");
    require(out, "out");
    auto result = fairassign::check_outcome(inst->value, fairassign::parse_json(outcome_json),
                                            split_csv(properties));
    if (all_pass != nullptr) *all_pass = result.all_pass ? 1 : 0;
    *out = duplicate(dump(result.document));
  });
}

fa_status fa_decompose(const fa_instance* inst, int has_seed, uint64_t seed, char** out) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    std::optional<std::uint64_t> s;
    if (has_seed) s = seed;
    *out = duplicate(dump(fairassign::decompose_document(inst->value, s)));
  });
}

void fa_audit_options_init(fa_audit_options* options) {
  if (options == nullptr) return;
  const fairassign::AuditOptions defaults;
  *options = fa_audit_options{};
  options->mechanism = "gebm";
  options->max_branches = defaults.limits.max_branches;
  options->max_enum = defaults.limits.max_enum;
  options->max_size = defaults.max_size;
}

fa_status fa_audit_sp(const fa_instance* inst, const fa_audit_options* options, int* found,
                      int* replayed, char** out) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    auto result = fairassign::audit_sp(inst->value, audit_options(options));
    if (found != nullptr) *found = result.found ? 1 : 0;
    if (replayed != nullptr) *replayed = result.replayed ? 1 : 0;
    *out = duplicate(dump(result.document));
  });
}

fa_status fa_audit_neutrality(const fa_instance* inst, const fa_audit_options* options, int* equal,
                              char** out) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    auto result = fairassign::audit_neutrality(inst->value, audit_options(options));
    if (equal != nullptr) *equal = result.found ? 1 : 0;
    *out = duplicate(dump(result.document));
  });
}

fa_status fa_audit_remark1(const fa_audit_options* options, int* found, int* replayed, char** out) {
  return guarded([&] {
    require(out, "out");
    auto result = fairassign::audit_remark1(audit_options(options));
    if (found != nullptr) *found = result.found ? 1 : 0;
    if (replayed != nullptr) *replayed = result.replayed ? 1 : 0;
    *out = duplicate(dump(result.document));
  });
}

fa_status fa_experiment(const char* config_json, char** csv) {
  return guarded([&] {
    require(config_json, "config");
    require(csv, "csv");
    auto config = fairassign::experiment_config_from_json(fairassign::parse_json(config_json));
    *csv = duplicate(fairassign::run_experiment(config));
  });
}

}  // extern "C"
