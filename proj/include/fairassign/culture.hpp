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
#include <vector>

#include "fairassign/model.hpp"

namespace fairassign {

// "a".."z" for up to 26 items, "o1".."om" beyond.
std::vector<std::string> default_item_names(std::size_t m);
// "1".."n".
std::vector<std::string> default_agent_names(std::size_t n);

// Impartial culture: independent uniform strict orders drawn with a seeded
// Fisher-Yates shuffle (index drawn as engine() % (i + 1)).
Instance impartial_culture(std::size_t n, std::size_t m, std::uint64_t seed);

}  // namespace fairassign
