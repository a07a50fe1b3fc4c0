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

#include "fairassign/decomposition.hpp"

#include <map>
#include <random>

#include "fairassign/errors.hpp"

namespace fairassign {

SubagentMatrix::SubagentMatrix(std::size_t agents, std::size_t rounds, std::size_t items)
    : agents_(agents), rounds_(rounds), items_(items),
      data_(agents * rounds * (items + 1), Rational(0)) {}

bool SubagentMatrix::is_valid() const {
  for (std::size_t row = 0; row < row_count(); ++row) {
    Rational total = 0;
    for (std::size_t col = 0; col < column_count(); ++col) {
      if (at(row, col) < 0 || at(row, col) > 1) return false;
      total += at(row, col);
    }
    if (total != 1) return false;
  }
  for (std::size_t col = 0; col < column_count(); ++col) {
    Rational total = 0;
    for (std::size_t row = 0; row < row_count(); ++row) total += at(row, col);
    const Rational expected =
        col == nil_column() ? Rational(static_cast<long>(row_count()) - static_cast<long>(items_))
                            : Rational(1);
    if (total != expected) return false;
  }
  return true;
}

SubagentMatrix expand_subagents(std::span<const RandomAssignment> per_round) {
  if (per_round.empty()) throw InputError("no rounds to expand");
  const std::size_t n = per_round.front().n();
  const std::size_t m = per_round.front().m();
  const std::size_t rounds = per_round.size();
  SubagentMatrix matrix(n, rounds, m);
  for (std::size_t c = 0; c < rounds; ++c) {
    const auto& shares = per_round[c];
    if (shares.n() != n || shares.m() != m) throw InputError("round matrices differ in shape");
    for (AgentIndex j = 0; j < n; ++j) {
      const std::size_t row = matrix.row_of(j, c);
      Rational total = 0;
      for (ItemIndex o = 0; o < m; ++o) {
        if (shares.at(j, o) < 0) throw InvariantError("negative share in round matrix");
        matrix.at(row, o) = shares.at(j, o);
        total += shares.at(j, o);
      }
      if (total > 1) {
        throw InvariantError("agent row exceeds one unit in round " + std::to_string(c + 1));
      }
      if (total < 1) {
        if (c + 1 != rounds) {
          throw InvariantError("agent row below one unit before the last round");
        }
        matrix.at(row, matrix.nil_column()) = 1 - total;
      }
    }
  }
  return matrix;
}

namespace {

using Square = std::vector<std::vector<Rational>>;

bool augment(const Square& square, std::size_t row, std::vector<bool>& visited,
             std::vector<std::size_t>& column_owner) {
  constexpr std::size_t kFree = static_cast<std::size_t>(-1);
  for (std::size_t col = 0; col < square.size(); ++col) {
    if (visited[col] || square[row][col] <= 0) continue;
    visited[col] = true;
    if (column_owner[col] == kFree || augment(square, column_owner[col], visited, column_owner)) {
      column_owner[col] = row;
      return true;
    }
  }
  return false;
}

// row -> column perfect matching on the positive support, or empty if none.
std::vector<std::size_t> perfect_matching(const Square& square) {
  const std::size_t size = square.size();
  std::vector<std::size_t> column_owner(size, static_cast<std::size_t>(-1));
  for (std::size_t row = 0; row < size; ++row) {
    std::vector<bool> visited(size, false);
    if (!augment(square, row, visited, column_owner)) return {};
  }
  std::vector<std::size_t> row_to_column(size);
  for (std::size_t col = 0; col < size; ++col) row_to_column[column_owner[col]] = col;
  return row_to_column;
}

}  // namespace

DecomposedLottery birkhoff_decompose(const SubagentMatrix& matrix) {
  if (!matrix.is_valid()) throw InvariantError("subagent matrix is not row/column stochastic");
  const std::size_t size = matrix.row_count();
  const std::size_t m = matrix.items();

  Square square(size, std::vector<Rational>(size, Rational(0)));
  std::size_t virtual_column = m;
  Rational capacity = 1;
  for (std::size_t row = 0; row < size; ++row) {
    for (ItemIndex o = 0; o < m; ++o) square[row][o] = matrix.at(row, o);
    Rational nil = matrix.at(row, matrix.nil_column());
    while (nil > 0) {
      const Rational take = std::min(nil, capacity);
      square[row][virtual_column] += take;
      nil -= take;
      capacity -= take;
      if (capacity == 0) {
        ++virtual_column;
        capacity = 1;
      }
    }
  }

  std::vector<DecomposedAtom> atoms;
  std::map<std::vector<std::optional<ItemIndex>>, std::size_t> seen;
  Rational remaining = 1;
  while (remaining > 0) {
    const auto matched = perfect_matching(square);
    if (matched.empty()) throw InvariantError("no perfect matching on the positive support");
    Rational coefficient = square[0][matched[0]];
    for (std::size_t row = 1; row < size; ++row) {
      coefficient = std::min(coefficient, square[row][matched[row]]);
    }
    std::vector<std::optional<ItemIndex>> subagent_item(size);
    for (std::size_t row = 0; row < size; ++row) {
      square[row][matched[row]] -= coefficient;
      if (matched[row] < m) subagent_item[row] = matched[row];
    }
    remaining -= coefficient;
    auto [it, inserted] = seen.emplace(subagent_item, atoms.size());
    if (inserted) {
      atoms.push_back(DecomposedAtom{coefficient, std::move(subagent_item)});
    } else {
      atoms[it->second].coefficient += coefficient;
    }
  }

  DecomposedLottery lottery;
  lottery.agents = matrix.agents();
  lottery.rounds = matrix.rounds();
  lottery.items = m;
  lottery.atoms = std::move(atoms);
  std::vector<LotteryAtom> projected;
  for (std::size_t a = 0; a < lottery.atoms.size(); ++a) {
    projected.push_back(LotteryAtom{lottery.atoms[a].coefficient, lottery.realize(a).total});
  }
  lottery.projected = Lottery::from_atoms(std::move(projected));
  return lottery;
}

Realization DecomposedLottery::realize(std::size_t atom) const {
  const auto& matching = atoms.at(atom).subagent_item;
  Realization out{Assignment(agents, items), {}, {}};
  ItemSet available(items, true);
  for (std::size_t c = 0; c < rounds; ++c) {
    out.remaining.push_back(available);
    Assignment round(agents, items);
    for (AgentIndex j = 0; j < agents; ++j) {
      const auto& item = matching[j * rounds + c];
      if (!item) continue;
      round.assign(*item, j);
      out.total.assign(*item, j);
    }
    for (ItemIndex o = 0; o < items; ++o) {
      if (round.is_assigned(o)) available.erase(o);
    }
    out.rounds.push_back(std::move(round));
  }
  return out;
}

SubagentMatrix DecomposedLottery::reconstruct() const {
  SubagentMatrix matrix(agents, rounds, items);
  for (const auto& atom : atoms) {
    for (std::size_t row = 0; row < atom.subagent_item.size(); ++row) {
      const std::size_t col = atom.subagent_item[row] ? *atom.subagent_item[row] : items;
      matrix.at(row, col) += atom.coefficient;
    }
  }
  return matrix;
}

std::size_t sample_atom(const DecomposedLottery& lottery, std::uint64_t seed) {
  if (lottery.atoms.empty()) throw InputError("empty lottery");
  std::mt19937_64 engine(seed);
  // u / 2^64 compared exactly against the cumulative coefficients.
  Rational draw(mpz_class(std::to_string(engine())), mpz_class(1) << 64);
  draw.canonicalize();
  Rational cumulative = 0;
  for (std::size_t a = 0; a < lottery.atoms.size(); ++a) {
    cumulative += lottery.atoms[a].coefficient;
    if (draw < cumulative) return a;
  }
  return lottery.atoms.size() - 1;
}

Realization sample_realization(const DecomposedLottery& lottery, std::uint64_t seed) {
  return lottery.realize(sample_atom(lottery, seed));
}

GpbmLottery gpbm_lottery(const Instance& instance) {
  GpbmOutcome outcome = gpbm(instance);
  SubagentMatrix subagents = expand_subagents(outcome.rounds);
  DecomposedLottery decomposed = birkhoff_decompose(subagents);
  return GpbmLottery{std::move(outcome), std::move(subagents), std::move(decomposed)};
}

}  // namespace fairassign
