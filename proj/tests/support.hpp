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
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fairassign/model.hpp"

// Fixtures and reference implementations shared by the test binaries. The
// reference code works on raw index vectors and shares nothing with the
// library beyond the Instance accessors.
namespace fa_test {

using fairassign::Instance;
using fairassign::Rational;

Rational q(const char* text);
std::vector<Rational> qs(std::initializer_list<const char*> texts);

Instance example1();   // 1: a b c d; 2: a c b d
Instance prop2_r();    // 1: a b c d; 2: d a b c
Instance remark2();    // 1,2: a b c d; 3: a d b c; 4: d a b c
Instance prop_a1();    // 1,2: a b c d
Instance prop_a2();    // 1-3: a..h; 4: c d a b e f g h

// Uniform strict orders drawn with std::shuffle; names follow a, b, ... and 1, 2, ...
Instance random_instance(std::mt19937_64& rng, std::size_t n, std::size_t m);

fairassign::Assignment bundles(const Instance& instance,
                               std::initializer_list<std::pair<const char*, const char*>> agent_items);

namespace ref {

using Matrix = std::vector<std::vector<Rational>>;
using Holders = std::vector<int>;  // holder per item, -1 if unassigned

std::vector<std::vector<int>> orders(const Instance& instance);

bool sd(const std::vector<int>& order, const std::vector<Rational>& p, const std::vector<Rational>& q);
bool lex(const std::vector<int>& order, const std::vector<Rational>& p, const std::vector<Rational>& q);

// Every GEBM tie-break branch, enumerated recursively; identical totals merged.
std::map<Holders, Rational> gebm_lottery(const Instance& instance);
Matrix expected(const std::map<Holders, Rational>& lottery, std::size_t n, std::size_t m);

// GPBM per-round matrices by direct simulation with closed-form waterfilling.
std::vector<Matrix> gpbm_rounds(const Instance& instance);
Matrix sum(const std::vector<Matrix>& rounds);

bool pe(const Instance& instance, const Holders& holders);   // brute force, lex improvements
bool ef1(const Instance& instance, const Holders& holders);
bool fcm(const Instance& instance, const Holders& holders);

Matrix to_matrix(const fairassign::RandomAssignment& p);
Holders to_holders(const fairassign::Assignment& a);

}  // namespace ref
}  // namespace fa_test
