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
#include <span>
#include <vector>

#include "fairassign/mechanisms.hpp"
#include "fairassign/model.hpp"

namespace fairassign {

// Row-stochastic matrix over subagents (j, c), c = 0..C-1, with one column per
// item plus a trailing nil column. Row (j, c) restricted to the real items is
// agent j's share vector in round c; only last-round rows may carry nil share.
class SubagentMatrix {
 public:
  SubagentMatrix(std::size_t agents, std::size_t rounds, std::size_t items);

  std::size_t agents() const { return agents_; }
  std::size_t rounds() const { return rounds_; }
  std::size_t items() const { return items_; }
  std::size_t row_count() const { return agents_ * rounds_; }
  std::size_t column_count() const { return items_ + 1; }
  std::size_t nil_column() const { return items_; }
  std::size_t row_of(AgentIndex j, std::size_t round) const { return j * rounds_ + round; }

  Rational& at(std::size_t row, std::size_t column) { return data_.at(row * (items_ + 1) + column); }
  const Rational& at(std::size_t row, std::size_t column) const {
    return data_.at(row * (items_ + 1) + column);
  }

  // Rows sum to 1, item columns to 1, the nil column to n*C - m.
  bool is_valid() const;

  bool operator==(const SubagentMatrix&) const = default;

 private:
  std::size_t agents_;
  std::size_t rounds_;
  std::size_t items_;
  std::vector<Rational> data_;
};

// Throws InvariantError if a row exceeds 1 or an earlier-round row falls
// short of 1.
SubagentMatrix expand_subagents(std::span<const RandomAssignment> per_round);

// The deterministic assignment realized by one subagent matching, its
// per-round matchings A^c and the item sets M^c available at each round.
struct Realization {
  Assignment total;
  std::vector<Assignment> rounds;
  std::vector<ItemSet> remaining;
};

struct DecomposedAtom {
  Rational coefficient;
  // subagent_item[row_of(j, c)] is the item matched to subagent (j, c), or
  // nullopt for nil.
  std::vector<std::optional<ItemIndex>> subagent_item;

  bool operator==(const DecomposedAtom&) const = default;
};

struct DecomposedLottery {
  std::size_t agents = 0;
  std::size_t rounds = 0;
  std::size_t items = 0;
  std::vector<DecomposedAtom> atoms;
  Lottery projected;

  Realization realize(std::size_t atom) const;
  // Coefficient-weighted sum of the subagent matchings.
  SubagentMatrix reconstruct() const;
};

// Birkhoff-von Neumann decomposition of the squared subagent matrix. The nil
// column is split greedily into n*C - m unit columns; perfect matchings on the
// positive support are found by augmenting paths in fixed vertex order.
DecomposedLottery birkhoff_decompose(const SubagentMatrix& matrix);

// Draws an atom with probability equal to its coefficient.
Realization sample_realization(const DecomposedLottery& lottery, std::uint64_t seed);
std::size_t sample_atom(const DecomposedLottery& lottery, std::uint64_t seed);

struct GpbmLottery {
  GpbmOutcome outcome;
  SubagentMatrix subagents;
  DecomposedLottery decomposed;
};

GpbmLottery gpbm_lottery(const Instance& instance);

}  // namespace fairassign
