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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include "fairassign/fairassign.h"

namespace {

const char* kExample =
    R"({"items":["a","b","c","d"],"agents":[{"name":"1","prefs":["a","b","c","d"]},)"
    R"({"name":"2","prefs":["a","c","b","d"]}]})";

std::string take(char* s) {
  std::string out = s ? s : "";
  fa_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("instances cross the boundary as opaque handles") {
  fa_instance* inst = nullptr;
  REQUIRE(fa_instance_parse(kExample, &inst) == FA_OK);
  CHECK(fa_instance_agent_count(inst) == 2);
  CHECK(fa_instance_item_count(inst) == 4);
  char* text = nullptr;
  REQUIRE(fa_instance_serialize(inst, &text) == FA_OK);
  const std::string doc = take(text);
  fa_instance* again = nullptr;
  REQUIRE(fa_instance_parse(doc.c_str(), &again) == FA_OK);
  REQUIRE(fa_instance_serialize(again, &text) == FA_OK);
  CHECK(take(text) == doc);
  fa_instance_free(again);
  fa_instance_free(inst);
  fa_instance_free(nullptr);
  CHECK(std::strlen(fa_version()) > 0);
}

TEST_CASE("errors map to status codes with a message") {
  fa_instance* inst = nullptr;
  CHECK(fa_instance_parse("{", &inst) == FA_ERR_INPUT);
  CHECK(std::strlen(fa_last_error()) > 0);
  CHECK(fa_instance_parse(R"({"items":["a"],"agents":[{"name":"1","prefs":["b"]}]})", &inst) == FA_ERR_INPUT);
  CHECK(fa_instance_generate(0, 3, 1, &inst) == FA_ERR_INPUT);
  CHECK(fa_instance_parse(nullptr, &inst) == FA_ERR_INPUT);
  CHECK(inst == nullptr);

  REQUIRE(fa_instance_generate(6, 12, 1, &inst) == FA_OK);
  fa_run_options opts;
  fa_run_options_init(&opts);
  opts.mode = "lottery";
  opts.max_branches = 10;
  char* out = nullptr;
  CHECK(fa_run(inst, &opts, &out) == FA_ERR_SIZE);
  opts.mechanism = "boston";
  CHECK(fa_run(inst, &opts, &out) == FA_ERR_INPUT);
  CHECK(out == nullptr);
  fa_instance_free(inst);
}

TEST_CASE("run, check and decompose") {
  fa_instance* inst = nullptr;
  REQUIRE(fa_instance_parse(kExample, &inst) == FA_OK);
  fa_run_options opts;
  fa_run_options_init(&opts);
  opts.mechanism = "gpbm";
  char* out = nullptr;
  REQUIRE(fa_run(inst, &opts, &out) == FA_OK);
  const std::string matrix = take(out);
  CHECK(matrix.find("\"3/4\"") == std::string::npos);
  CHECK(matrix.find("\"1/2\"") != std::string::npos);

  int all_pass = 0;
  REQUIRE(fa_check(inst, matrix.c_str(), "sde,sdwef", &all_pass, &out) == FA_OK);
  take(out);
  CHECK(all_pass == 1);
  CHECK(fa_check(inst, matrix.c_str(), "pe", &all_pass, &out) == FA_ERR_INPUT);

  REQUIRE(fa_decompose(inst, 1, 5, &out) == FA_OK);
  CHECK(take(out).find("\"sample\"") != std::string::npos);
  fa_instance_free(inst);
}

TEST_CASE("audits and experiments") {
  fa_instance* inst = nullptr;
  REQUIRE(fa_instance_parse(
              R"({"items":["a","b","c","d"],"agents":[{"name":"1","prefs":["a","b","c","d"]},)"
              R"({"name":"2","prefs":["d","a","b","c"]}]})",
              &inst) == FA_OK);
  fa_audit_options opts;
  fa_audit_options_init(&opts);
  int found = 0, replayed = 0;
  char* out = nullptr;
  REQUIRE(fa_audit_sp(inst, &opts, &found, &replayed, &out) == FA_OK);
  take(out);
  CHECK(found == 1);
  CHECK(replayed == 1);

  int equal = 0;
  opts.mechanism = "gpbm";
  REQUIRE(fa_audit_neutrality(inst, &opts, &equal, &out) == FA_OK);
  take(out);
  CHECK(equal == 1);

  opts.max_size = 2;
  REQUIRE(fa_audit_remark1(&opts, &found, &replayed, &out) == FA_OK);
  take(out);
  fa_instance_free(inst);

  REQUIRE(fa_experiment(R"({"mechanisms":["gebm"],"trials":3})", &out) == FA_OK);
  CHECK(take(out).rfind("mechanism,agents", 0) == 0);
  CHECK(fa_experiment(R"({"trials":0})", &out) == FA_ERR_INPUT);
}
