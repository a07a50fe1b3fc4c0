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

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "fairassign/fairassign.h"

// Exit codes: 0 success, 1 strict-mode violation or failed self-check,
// 2 input or size error, 3 internal error.
namespace {

constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct Failure {
  int code;
  std::string message;
};

void ensure(fa_status status) {
  if (status == FA_OK) return;
  const int code = (status == FA_ERR_INPUT || status == FA_ERR_SIZE) ? kExitInput : kExitInternal;
  throw Failure{code, fa_last_error()};
}

class OwnedString {
 public:
  ~OwnedString() { fa_string_free(ptr_); }
  char** out() { return &ptr_; }
  std::string str() const { return ptr_ ? ptr_ : ""; }

 private:
  char* ptr_ = nullptr;
};

class InstanceHandle {
 public:
  ~InstanceHandle() { fa_instance_free(ptr_); }
  fa_instance** out() { return &ptr_; }
  const fa_instance* get() const { return ptr_; }

 private:
  fa_instance* ptr_ = nullptr;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitInput, "cannot read '" + path + "'"};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file || !(file << text)) throw Failure{kExitInput, "cannot write '" + out + "'"};
}

void load_instance(const std::string& path, InstanceHandle& handle) {
  ensure(fa_instance_parse(read_file(path).c_str(), handle.out()));
}

const char* or_null(const std::optional<std::string>& s) { return s ? s->c_str() : nullptr; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Round-based random assignment mechanisms with exact property checks"};
  app.require_subcommand(1);

  std::string out;
  std::string instance_path;
  std::string mechanism = "gebm";
  std::uint64_t seed = 0;

  auto* gen = app.add_subcommand("gen", "Draw an impartial-culture instance");
  std::size_t agents = 0, items = 0;
  gen->add_option("--agents", agents, "Number of agents")->required();
  gen->add_option("--items", items, "Number of items")->required();
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--out", out, "Output path (default stdout)");

  auto* run = app.add_subcommand("run", "Run a mechanism on an instance");
  std::string mode;
  std::size_t quota = 0;
  std::optional<std::string> priority;
  std::uint64_t max_branch = 0;
  bool trace = false;
  run->add_option("--instance", instance_path)->required();
  run->add_option("--mechanism", mechanism, "gebm | gpbm | rsdq");
  run->add_option("--mode", mode, "gebm/rsdq: sample | expected | lottery; gpbm: fractional | lottery");
  run->add_option("--seed", seed);
  run->add_option("--quota", quota, "rsdq items per turn (default ceil(m/n))");
  run->add_option("--priority", priority, "rsdq priority, comma-separated agent names");
  run->add_option("--max-branch", max_branch, "Cap on enumerated tie-break branches");
  run->add_flag("--trace", trace, "gpbm: record consumption events");
  run->add_option("--out", out);

  auto* check = app.add_subcommand("check", "Check properties of an outcome file");
  std::string input_path;
  std::string properties;
  bool strict = false;
  check->add_option("--instance", instance_path)->required();
  check->add_option("--input", input_path, "Outcome file written by run/decompose")->required();
  check->add_option("--properties", properties, "Comma-separated property names")->required();
  check->add_flag("--strict", strict, "Exit 1 if any verdict is false");
  check->add_option("--out", out);

  auto* decompose = app.add_subcommand("decompose", "Decompose GPBM into a lottery");
  std::optional<std::uint64_t> sample_seed;
  decompose->add_option("--instance", instance_path)->required();
  decompose->add_option("--seed", sample_seed, "Also draw one realization");
  decompose->add_option("--out", out);

  auto* audit = app.add_subcommand("audit", "Exhaustive audits");
  audit->require_subcommand(1);
  std::uint64_t max_enum = 0;
  std::optional<std::string> agent, misreport, permutation;
  std::size_t max_size = 3;
  auto* sp = audit->add_subcommand("sp", "Search for an sd-profitable misreport");
  auto* neutrality = audit->add_subcommand("neutrality", "Compare outcomes under item relabeling");
  auto* remark1 = audit->add_subcommand("remark1", "Search small profiles for a GEBM sd-E failure");
  for (auto* sub : {sp, neutrality}) {
    sub->add_option("--instance", instance_path)->required();
    sub->add_option("--mechanism", mechanism);
  }
  for (auto* sub : {sp, neutrality, remark1}) {
    sub->add_option("--max-branch", max_branch);
    sub->add_option("--max-enum", max_enum);
    sub->add_option("--out", out);
  }
  sp->add_option("--agent", agent, "Test one misreport for this agent");
  sp->add_option("--misreport", misreport, "Comma-separated item order");
  neutrality->add_option("--permutation", permutation, "e.g. c:d,d:c (default: every relabeling)");
  remark1->add_option("--max", max_size, "Largest n and m searched");

  auto* experiment = app.add_subcommand("experiment", "Monte Carlo report as CSV");
  std::string config_path;
  experiment->add_option("--config", config_path)->required();
  experiment->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    OwnedString result;
    if (gen->parsed()) {
      InstanceHandle inst;
      ensure(fa_instance_generate(agents, items, seed, inst.out()));
      ensure(fa_instance_serialize(inst.get(), result.out()));
      emit(result.str(), out);
      return 0;
    }
    if (experiment->parsed()) {
      const std::string config = read_file(config_path);
      if (out.empty()) {
        const auto doc = nlohmann::json::parse(config, nullptr, false);
        if (doc.is_object() && doc.contains("out") && doc["out"].is_string()) out = doc["out"];
      }
      ensure(fa_experiment(config.c_str(), result.out()));
      emit(result.str(), out);
      return 0;
    }

    fa_audit_options audit_opts;
    fa_audit_options_init(&audit_opts);
    audit_opts.mechanism = mechanism.c_str();
    if (max_branch > 0) audit_opts.max_branches = max_branch;
    if (max_enum > 0) audit_opts.max_enum = max_enum;
    audit_opts.agent = or_null(agent);
    audit_opts.misreport = or_null(misreport);
    audit_opts.permutation = or_null(permutation);
    audit_opts.max_size = max_size;

    if (remark1->parsed()) {
      int found = 0, replayed = 1;
      ensure(fa_audit_remark1(&audit_opts, &found, &replayed, result.out()));
      emit(result.str(), out);
      return replayed ? 0 : kExitViolation;
    }

    InstanceHandle inst;
    load_instance(instance_path, inst);
    int code = 0;
    if (run->parsed()) {
      fa_run_options opts;
      fa_run_options_init(&opts);
      opts.mechanism = mechanism.c_str();
      opts.mode = mode.c_str();
      opts.seed = seed;
      opts.quota = quota;
      opts.priority = or_null(priority);
      if (max_branch > 0) opts.max_branches = max_branch;
      opts.trace = trace ? 1 : 0;
      ensure(fa_run(inst.get(), &opts, result.out()));
    } else if (check->parsed()) {
      int all_pass = 1;
      ensure(fa_check(inst.get(), read_file(input_path).c_str(), properties.c_str(), &all_pass,
                      result.out()));
      if (strict && !all_pass) code = kExitViolation;
    } else if (decompose->parsed()) {
      ensure(fa_decompose(inst.get(), sample_seed ? 1 : 0, sample_seed.value_or(0), result.out()));
    } else if (sp->parsed()) {
      int found = 0, replayed = 1;
      ensure(fa_audit_sp(inst.get(), &audit_opts, &found, &replayed, result.out()));
      if (!replayed) code = kExitViolation;
    } else if (neutrality->parsed()) {
      int equal = 0;
      ensure(fa_audit_neutrality(inst.get(), &audit_opts, &equal, result.out()));
    }
    emit(result.str(), out);
    return code;
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  }
}
