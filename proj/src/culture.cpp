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

#include "fairassign/culture.hpp"

#include <numeric>
#include <random>

#include "fairassign/errors.hpp"

namespace fairassign {

std::vector<std::string> default_item_names(std::size_t m) {
  std::vector<std::string> names;
  names.reserve(m);
  for (std::size_t o = 0; o < m; ++o) {
    names.push_back(m <= 26 ? std::string(1, static_cast<char>('a' + o))
                            : "o" + std::to_string(o + 1));
  }
  return names;
}

std::vector<std::string> default_agent_names(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t j = 0; j < n; ++j) names.push_back(std::to_string(j + 1));
  return names;
}

Instance impartial_culture(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n == 0 || m == 0) throw InputError("need at least one agent and one item");
  std::mt19937_64 engine(seed);
  std::vector<Agent> agents;
  agents.reserve(n);
  for (const auto& name : default_agent_names(n)) {
    std::vector<ItemIndex> ranking(m);
    std::iota(ranking.begin(), ranking.end(), ItemIndex{0});
    for (std::size_t i = m; i-- > 1;) {
      std::swap(ranking[i], ranking[static_cast<std::size_t>(engine() % (i + 1))]);
    }
    agents.push_back(Agent{name, PreferenceOrder(std::move(ranking))});
  }
  return Instance(default_item_names(m), std::move(agents));
}

}  // namespace fairassign
