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

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fairassign/rational.hpp"

namespace fairassign {

// Agents and items are dense indices in file order.
using AgentIndex = std::size_t;
using ItemIndex = std::size_t;

// A subset of the item universe {0, ..., m-1}.
class ItemSet {
 public:
  ItemSet() = default;
  explicit ItemSet(std::size_t universe, bool full = false);
  static ItemSet of(std::size_t universe, std::initializer_list<ItemIndex> members);
  static ItemSet of(std::size_t universe, std::span<const ItemIndex> members);

  std::size_t universe() const { return bits_.size(); }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  bool contains(ItemIndex item) const { return item < bits_.size() && bits_[item]; }

  void insert(ItemIndex item);
  void erase(ItemIndex item);

  // Members in increasing index order.
  std::vector<ItemIndex> items() const;

  bool operator==(const ItemSet&) const = default;

 private:
  std::vector<bool> bits_;
  std::size_t count_ = 0;
};

// A strict linear order over all m items, most preferred first.
class PreferenceOrder {
 public:
  PreferenceOrder() = default;
  // Throws InputError unless `ranking` is a permutation of 0..m-1.
  explicit PreferenceOrder(std::vector<ItemIndex> ranking);

  std::size_t size() const { return ranking_.size(); }
  const std::vector<ItemIndex>& ranking() const { return ranking_; }

  // 1-based global rank.
  std::size_t rank(ItemIndex item) const;
  // 1-based rank of `item` among the members of `subset`.
  std::size_t rank(ItemIndex item, const ItemSet& subset) const;
  ItemIndex at_rank(std::size_t rank) const;
  ItemIndex top(const ItemSet& subset) const;
  bool prefers(ItemIndex a, ItemIndex b) const { return rank(a) < rank(b); }
  // Items weakly preferred to `item`.
  ItemSet upper_contour(ItemIndex item) const;

  bool operator==(const PreferenceOrder& other) const { return ranking_ == other.ranking_; }

 private:
  std::vector<ItemIndex> ranking_;
  std::vector<std::size_t> position_;  // position_[item] = rank - 1
};

struct Agent {
  std::string name;
  PreferenceOrder prefs;

  bool operator==(const Agent&) const = default;
};

// A permutation of item labels: image[o] is the label that replaces o.
using ItemPermutation = std::vector<ItemIndex>;

void validate_permutation(const ItemPermutation& perm, std::size_t m);

// Agents, items and a strict preference profile. Immutable once built.
class Instance {
 public:
  // Validates unique names, n >= 1, m >= 1 and that every preference order
  // covers exactly the m items.
  Instance(std::vector<std::string> items, std::vector<Agent> agents);

  std::size_t n() const { return agents_.size(); }
  std::size_t m() const { return items_.size(); }
  // Number of rounds used by the round-structured mechanisms: ceil(m / n).
  std::size_t rounds() const { return (m() + n() - 1) / n(); }

  const std::vector<std::string>& items() const { return items_; }
  const std::vector<Agent>& agents() const { return agents_; }
  const Agent& agent(AgentIndex j) const { return agents_.at(j); }
  const PreferenceOrder& prefs(AgentIndex j) const { return agents_.at(j).prefs; }
  const std::string& item_name(ItemIndex o) const { return items_.at(o); }

  ItemIndex item_index(std::string_view name) const;
  AgentIndex agent_index(std::string_view name) const;

  ItemSet all_items() const { return ItemSet(m(), true); }

  std::size_t rank(AgentIndex j, ItemIndex o) const { return prefs(j).rank(o); }
  std::size_t rank(AgentIndex j, ItemIndex o, const ItemSet& subset) const {
    return prefs(j).rank(o, subset);
  }
  ItemIndex top(AgentIndex j, const ItemSet& subset) const { return prefs(j).top(subset); }

  // The profile (order_j', order_{-j}).
  Instance with_preferences(AgentIndex j, PreferenceOrder order) const;
  // pi(R): every occurrence of item o in a preference list becomes perm[o].
  Instance relabeled(const ItemPermutation& perm) const;

  bool operator==(const Instance&) const = default;

 private:
  std::vector<std::string> items_;
  std::vector<Agent> agents_;
};

// Builds an instance from item names and each agent's ranked item names.
Instance make_instance(
    const std::vector<std::string>& items,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& agents);

// Weak stochastic dominance of p over q under `order`. Throws InputError on a
// dimension mismatch.
bool sd_dominates(const PreferenceOrder& order, std::span<const Rational> p,
                  std::span<const Rational> q);

// Strict lexicographic dominance of p over q under `order`.
bool lex_dominates(const PreferenceOrder& order, std::span<const Rational> p,
                   std::span<const Rational> q);

// Partition-like mapping of items to agents; each item has at most one holder.
class Assignment {
 public:
  static constexpr AgentIndex kUnassigned = std::numeric_limits<AgentIndex>::max();

  Assignment() = default;
  Assignment(std::size_t agents, std::size_t items);

  std::size_t n() const { return agents_; }
  std::size_t m() const { return holder_.size(); }

  AgentIndex holder(ItemIndex o) const { return holder_.at(o); }
  bool is_assigned(ItemIndex o) const { return holder_.at(o) != kUnassigned; }
  void assign(ItemIndex o, AgentIndex j);
  void unassign(ItemIndex o) { holder_.at(o) = kUnassigned; }

  std::vector<ItemIndex> bundle(AgentIndex j) const;
  ItemSet bundle_set(AgentIndex j) const;
  ShareVector row(AgentIndex j) const;
  bool is_complete() const;

  // Columns permuted: the item held as o is held as perm[o].
  Assignment permuted(const ItemPermutation& perm) const;

  const std::vector<AgentIndex>& holders() const { return holder_; }

  auto operator<=>(const Assignment&) const = default;

 private:
  std::size_t agents_ = 0;
  std::vector<AgentIndex> holder_;
};

// An n x m matrix of exact probabilistic shares.
class RandomAssignment {
 public:
  RandomAssignment() = default;
  RandomAssignment(std::size_t agents, std::size_t items);
  static RandomAssignment from(const Assignment& assignment);

  std::size_t n() const { return agents_; }
  std::size_t m() const { return items_; }

  Rational& at(AgentIndex j, ItemIndex o) { return data_.at(j * items_ + o); }
  const Rational& at(AgentIndex j, ItemIndex o) const { return data_.at(j * items_ + o); }
  std::span<const Rational> row(AgentIndex j) const {
    return std::span<const Rational>(data_).subspan(j * items_, items_);
  }

  Rational row_sum(AgentIndex j) const;
  Rational column_sum(ItemIndex o) const;
  // Every entry in [0, 1] and every column sums to exactly 1.
  bool is_fully_allocating() const;

  RandomAssignment& operator+=(const RandomAssignment& other);
  RandomAssignment permuted(const ItemPermutation& perm) const;

  bool operator==(const RandomAssignment&) const = default;

 private:
  std::size_t agents_ = 0;
  std::size_t items_ = 0;
  std::vector<Rational> data_;
};

struct LotteryAtom {
  Rational probability;
  Assignment assignment;

  bool operator==(const LotteryAtom&) const = default;
};

// A finite distribution over deterministic assignments. Atoms are merged by
// assignment and kept sorted, so equal distributions compare equal.
class Lottery {
 public:
  Lottery() = default;
  // Merges duplicate assignments; throws InvariantError if a probability is
  // not positive or the total is not exactly 1.
  static Lottery from_atoms(std::vector<LotteryAtom> atoms);

  const std::vector<LotteryAtom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  RandomAssignment expected() const;
  Lottery permuted(const ItemPermutation& perm) const;

  bool operator==(const Lottery&) const = default;

 private:
  std::vector<LotteryAtom> atoms_;
};

}  // namespace fairassign
