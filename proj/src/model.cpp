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

#include "fairassign/model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "fairassign/errors.hpp"

namespace fairassign {

ItemSet::ItemSet(std::size_t universe, bool full)
    : bits_(universe, full), count_(full ? universe : 0) {}

ItemSet ItemSet::of(std::size_t universe, std::initializer_list<ItemIndex> members) {
  return of(universe, std::span<const ItemIndex>(members.begin(), members.size()));
}

ItemSet ItemSet::of(std::size_t universe, std::span<const ItemIndex> members) {
  ItemSet set(universe);
  for (ItemIndex o : members) set.insert(o);
  return set;
}

void ItemSet::insert(ItemIndex item) {
  if (item >= bits_.size()) throw InputError("item index out of range");
  if (!bits_[item]) {
    bits_[item] = true;
    ++count_;
  }
}

void ItemSet::erase(ItemIndex item) {
  if (item < bits_.size() && bits_[item]) {
    bits_[item] = false;
    --count_;
  }
}

std::vector<ItemIndex> ItemSet::items() const {
  std::vector<ItemIndex> out;
  out.reserve(count_);
  for (ItemIndex o = 0; o < bits_.size(); ++o) {
    if (bits_[o]) out.push_back(o);
  }
  return out;
}

PreferenceOrder::PreferenceOrder(std::vector<ItemIndex> ranking)
    : ranking_(std::move(ranking)), position_(ranking_.size(), ranking_.size()) {
  for (std::size_t pos = 0; pos < ranking_.size(); ++pos) {
    const ItemIndex o = ranking_[pos];
    if (o >= ranking_.size() || position_[o] != ranking_.size()) {
      throw InputError("preference order is not a permutation of the items");
    }
    position_[o] = pos;
  }
}

std::size_t PreferenceOrder::rank(ItemIndex item) const {
  if (item >= position_.size()) throw InputError("unknown item index");
  return position_[item] + 1;
}

std::size_t PreferenceOrder::rank(ItemIndex item, const ItemSet& subset) const {
  if (subset.universe() != size()) throw InputError("subset is not over the item set");
  if (!subset.contains(item)) throw InputError("item is not in the subset");
  std::size_t r = 0;
  for (ItemIndex o : ranking_) {
    if (subset.contains(o)) ++r;
    if (o == item) break;
  }
  return r;
}

ItemIndex PreferenceOrder::at_rank(std::size_t rank) const {
  if (rank == 0 || rank > ranking_.size()) throw InputError("rank out of range");
  return ranking_[rank - 1];
}

ItemIndex PreferenceOrder::top(const ItemSet& subset) const {
  if (subset.universe() != size()) throw InputError("subset is not over the item set");
  for (ItemIndex o : ranking_) {
    if (subset.contains(o)) return o;
  }
  throw InputError("top of an empty subset");
}

ItemSet PreferenceOrder::upper_contour(ItemIndex item) const {
  const std::size_t r = rank(item);
  ItemSet set(size());
  for (std::size_t pos = 0; pos < r; ++pos) set.insert(ranking_[pos]);
  return set;
}

void validate_permutation(const ItemPermutation& perm, std::size_t m) {
  if (perm.size() != m) throw InputError("permutation has the wrong length");
  std::vector<bool> seen(m, false);
  for (ItemIndex o : perm) {
    if (o >= m || seen[o]) throw InputError("not a permutation of the items");
    seen[o] = true;
  }
}

Instance::Instance(std::vector<std::string> items, std::vector<Agent> agents)
    : items_(std::move(items)), agents_(std::move(agents)) {
  if (items_.empty()) throw InputError("instance needs at least one item");
  if (agents_.empty()) throw InputError("instance needs at least one agent");
  std::set<std::string_view> seen;
  for (const auto& name : items_) {
    if (!seen.insert(name).second) throw InputError("duplicate item '" + name + "'");
  }
  seen.clear();
  for (const auto& agent : agents_) {
    if (!seen.insert(agent.name).second) {
      throw InputError("duplicate agent '" + agent.name + "'");
    }
    if (agent.prefs.size() != items_.size()) {
      throw InputError("preferences of agent '" + agent.name +
                       "' do not rank every item exactly once");
    }
  }
}

ItemIndex Instance::item_index(std::string_view name) const {
  for (ItemIndex o = 0; o < items_.size(); ++o) {
    if (items_[o] == name) return o;
  }
  throw InputError("unknown item '" + std::string(name) + "'");
}

AgentIndex Instance::agent_index(std::string_view name) const {
  for (AgentIndex j = 0; j < agents_.size(); ++j) {
    if (agents_[j].name == name) return j;
  }
  throw InputError("unknown agent '" + std::string(name) + "'");
}

Instance Instance::with_preferences(AgentIndex j, PreferenceOrder order) const {
  if (order.size() != m()) throw InputError("preference order has the wrong length");
  auto agents = agents_;
  agents.at(j).prefs = std::move(order);
  return Instance(items_, std::move(agents));
}

Instance Instance::relabeled(const ItemPermutation& perm) const {
  validate_permutation(perm, m());
  auto agents = agents_;
  for (auto& agent : agents) {
    std::vector<ItemIndex> ranking = agent.prefs.ranking();
    for (auto& o : ranking) o = perm[o];
    agent.prefs = PreferenceOrder(std::move(ranking));
  }
  return Instance(items_, std::move(agents));
}

Instance make_instance(
    const std::vector<std::string>& items,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& agents) {
  std::vector<Agent> built;
  built.reserve(agents.size());
  for (const auto& [name, ranked] : agents) {
    if (ranked.size() != items.size()) {
      throw InputError("preferences of agent '" + name + "' do not rank every item exactly once");
    }
    std::vector<ItemIndex> ranking;
    for (const auto& item : ranked) {
      auto it = std::find(items.begin(), items.end(), item);
      if (it == items.end()) {
        throw InputError("agent '" + name + "' ranks unknown item '" + item + "'");
      }
      ranking.push_back(static_cast<ItemIndex>(it - items.begin()));
    }
    try {
      built.push_back(Agent{name, PreferenceOrder(std::move(ranking))});
    } catch (const InputError&) {
      throw InputError("preferences of agent '" + name + "' repeat an item");
    }
  }
  return Instance(items, std::move(built));
}

bool sd_dominates(const PreferenceOrder& order, std::span<const Rational> p,
                  std::span<const Rational> q) {
  if (p.size() != order.size() || q.size() != order.size()) {
    throw InputError("allocation vectors do not match the number of items");
  }
  Rational cum_p = 0;
  Rational cum_q = 0;
  for (ItemIndex o : order.ranking()) {
    cum_p += p[o];
    cum_q += q[o];
    if (cum_p < cum_q) return false;
  }
  return true;
}

bool lex_dominates(const PreferenceOrder& order, std::span<const Rational> p,
                   std::span<const Rational> q) {
  if (p.size() != order.size() || q.size() != order.size()) {
    throw InputError("allocation vectors do not match the number of items");
  }
  for (ItemIndex o : order.ranking()) {
    if (p[o] != q[o]) return p[o] > q[o];
  }
  return false;
}

Assignment::Assignment(std::size_t agents, std::size_t items)
    : agents_(agents), holder_(items, kUnassigned) {}

void Assignment::assign(ItemIndex o, AgentIndex j) {
  if (j >= agents_) throw InputError("agent index out of range");
  holder_.at(o) = j;
}

std::vector<ItemIndex> Assignment::bundle(AgentIndex j) const {
  std::vector<ItemIndex> out;
  for (ItemIndex o = 0; o < holder_.size(); ++o) {
    if (holder_[o] == j) out.push_back(o);
  }
  return out;
}

ItemSet Assignment::bundle_set(AgentIndex j) const {
  ItemSet set(m());
  for (ItemIndex o = 0; o < holder_.size(); ++o) {
    if (holder_[o] == j) set.insert(o);
  }
  return set;
}

ShareVector Assignment::row(AgentIndex j) const {
  ShareVector out(m(), Rational(0));
  for (ItemIndex o = 0; o < holder_.size(); ++o) {
    if (holder_[o] == j) out[o] = 1;
  }
  return out;
}

bool Assignment::is_complete() const {
  return std::none_of(holder_.begin(), holder_.end(),
                      [](AgentIndex j) { return j == kUnassigned; });
}

Assignment Assignment::permuted(const ItemPermutation& perm) const {
  validate_permutation(perm, m());
  Assignment out(agents_, m());
  for (ItemIndex o = 0; o < m(); ++o) out.holder_[perm[o]] = holder_[o];
  return out;
}

RandomAssignment::RandomAssignment(std::size_t agents, std::size_t items)
    : agents_(agents), items_(items), data_(agents * items, Rational(0)) {}

RandomAssignment RandomAssignment::from(const Assignment& assignment) {
  RandomAssignment out(assignment.n(), assignment.m());
  for (ItemIndex o = 0; o < assignment.m(); ++o) {
    if (assignment.is_assigned(o)) out.at(assignment.holder(o), o) = 1;
  }
  return out;
}

Rational RandomAssignment::row_sum(AgentIndex j) const { return sum(row(j)); }

Rational RandomAssignment::column_sum(ItemIndex o) const {
  Rational total = 0;
  for (AgentIndex j = 0; j < agents_; ++j) total += at(j, o);
  return total;
}

bool RandomAssignment::is_fully_allocating() const {
  for (const auto& v : data_) {
    if (v < 0 || v > 1) return false;
  }
  for (ItemIndex o = 0; o < items_; ++o) {
    if (column_sum(o) != 1) return false;
  }
  return true;
}

RandomAssignment& RandomAssignment::operator+=(const RandomAssignment& other) {
  if (other.agents_ != agents_ || other.items_ != items_) {
    throw InputError("random assignment dimensions differ");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

RandomAssignment RandomAssignment::permuted(const ItemPermutation& perm) const {
  validate_permutation(perm, items_);
  RandomAssignment out(agents_, items_);
  for (AgentIndex j = 0; j < agents_; ++j) {
    for (ItemIndex o = 0; o < items_; ++o) out.at(j, perm[o]) = at(j, o);
  }
  return out;
}

Lottery Lottery::from_atoms(std::vector<LotteryAtom> atoms) {
  std::map<Assignment, Rational> merged;
  Rational total = 0;
  for (auto& atom : atoms) {
    if (atom.probability <= 0) throw InvariantError("lottery atom with non-positive probability");
    total += atom.probability;
    merged[std::move(atom.assignment)] += atom.probability;
  }
  if (total != 1) throw InvariantError("lottery probabilities sum to " + to_string(total));
  Lottery lottery;
  lottery.atoms_.reserve(merged.size());
  for (auto& [assignment, probability] : merged) {
    lottery.atoms_.push_back(LotteryAtom{probability, assignment});
  }
  return lottery;
}

RandomAssignment Lottery::expected() const {
  if (atoms_.empty()) return {};
  const auto& first = atoms_.front().assignment;
  RandomAssignment out(first.n(), first.m());
  for (const auto& atom : atoms_) {
    for (ItemIndex o = 0; o < first.m(); ++o) {
      if (atom.assignment.is_assigned(o)) {
        out.at(atom.assignment.holder(o), o) += atom.probability;
      }
    }
  }
  return out;
}

Lottery Lottery::permuted(const ItemPermutation& perm) const {
  std::vector<LotteryAtom> atoms;
  atoms.reserve(atoms_.size());
  for (const auto& atom : atoms_) {
    atoms.push_back(LotteryAtom{atom.probability, atom.assignment.permuted(perm)});
  }
  return from_atoms(std::move(atoms));
}

}  // namespace fairassign
