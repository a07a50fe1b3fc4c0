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

#include "fairassign/mechanisms.hpp"

#include <algorithm>
#include <numeric>

#include "fairassign/errors.hpp"

namespace fairassign {

std::size_t SeededTieBreaker::pick(std::size_t choices) {
  if (choices == 0) throw InvariantError("tie-break over an empty applicant set");
  return static_cast<std::size_t>(engine_() % choices);
}

std::size_t ScriptedTieBreaker::pick(std::size_t choices) {
  if (choices == 0) throw InvariantError("tie-break over an empty applicant set");
  const std::size_t step = taken_.size();
  std::size_t choice = step < script_.size() ? script_[step] : 0;
  if (choice >= choices) throw InputError("scripted tie-break choice out of range");
  taken_.push_back(choice);
  branching_.push_back(choices);
  return choice;
}

std::string_view mechanism_name(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::kGebm: return "gebm";
    case Mechanism::kGpbm: return "gpbm";
    case Mechanism::kRsdq: return "rsdq";
  }
  return "unknown";
}

Mechanism parse_mechanism(std::string_view name) {
  if (name == "gebm") return Mechanism::kGebm;
  if (name == "gpbm") return Mechanism::kGpbm;
  if (name == "rsdq") return Mechanism::kRsdq;
  throw InputError("unknown mechanism '" + std::string(name) + "'");
}

Assignment ebm(const Instance& instance, const ItemSet& available, TieBreaker& ties) {
  if (available.universe() != instance.m()) throw InputError("item set is not over the instance");
  if (available.empty()) throw InputError("eager Boston matching over an empty item set");

  Assignment matching(instance.n(), instance.m());
  ItemSet remaining = available;
  std::vector<bool> active(instance.n(), true);
  std::size_t active_count = instance.n();

  while (active_count > 0 && !remaining.empty()) {
    std::vector<std::vector<AgentIndex>> applicants(instance.m());
    for (AgentIndex j = 0; j < instance.n(); ++j) {
      if (active[j]) applicants[instance.top(j, remaining)].push_back(j);
    }
    for (ItemIndex o = 0; o < instance.m(); ++o) {
      const auto& bidders = applicants[o];
      if (bidders.empty()) continue;
      const std::size_t winner = bidders.size() == 1 ? 0 : ties.pick(bidders.size());
      matching.assign(o, bidders[winner]);
      active[bidders[winner]] = false;
      --active_count;
      remaining.erase(o);
    }
  }
  return matching;
}

GebmOutcome gebm(const Instance& instance, TieBreaker& ties) {
  GebmOutcome outcome{Assignment(instance.n(), instance.m()), {}, {}};
  ItemSet remaining = instance.all_items();
  for (std::size_t c = 0; c < instance.rounds(); ++c) {
    outcome.remaining.push_back(remaining);
    Assignment matching = ebm(instance, remaining, ties);
    for (ItemIndex o = 0; o < instance.m(); ++o) {
      if (matching.is_assigned(o)) {
        outcome.total.assign(o, matching.holder(o));
        remaining.erase(o);
      }
    }
    outcome.rounds.push_back(std::move(matching));
  }
  if (!remaining.empty()) throw InvariantError("GEBM left items unallocated");
  return outcome;
}

GebmOutcome gebm_sample(const Instance& instance, std::uint64_t seed) {
  SeededTieBreaker ties(seed);
  return gebm(instance, ties);
}

Lottery gebm_lottery(const Instance& instance, std::uint64_t max_branches) {
  // Depth-first walk over tie-break sequences, odometer style: rerun with the
  // last incrementable decision bumped and everything after it reset.
  std::vector<LotteryAtom> leaves;
  std::vector<std::size_t> script;
  std::uint64_t count = 0;
  while (true) {
    if (++count > max_branches) {
      throw SizeError("instance too large for exact mode (more than " +
                      std::to_string(max_branches) + " tie-break branches); use sampled mode");
    }
    ScriptedTieBreaker ties(script);
    GebmOutcome outcome = gebm(instance, ties);
    Rational probability = 1;
    for (std::size_t k : ties.branching()) probability /= k;
    leaves.push_back(LotteryAtom{probability, std::move(outcome.total)});

    const auto& taken = ties.choices();
    const auto& branching = ties.branching();
    std::size_t depth = taken.size();
    while (depth > 0 && taken[depth - 1] + 1 >= branching[depth - 1]) --depth;
    if (depth == 0) break;
    script.assign(taken.begin(), taken.begin() + static_cast<std::ptrdiff_t>(depth));
    ++script.back();
  }
  return Lottery::from_atoms(std::move(leaves));
}

RandomAssignment gebm_expected(const Instance& instance, std::uint64_t max_branches) {
  return gebm_lottery(instance, max_branches).expected();
}

std::vector<Rational> waterfill(std::span<const Rational> budgets, const Rational& supply) {
  std::vector<Rational> taken(budgets.size(), Rational(0));
  std::vector<Rational> left(budgets.begin(), budgets.end());
  Rational stock = supply;
  while (stock > 0) {
    std::size_t active = 0;
    Rational smallest = 0;
    for (const auto& b : left) {
      if (b > 0 && (active++ == 0 || b < smallest)) smallest = b;
    }
    if (active == 0) break;
    Rational share = stock / active;
    Rational step = std::min(smallest, share);
    for (std::size_t i = 0; i < left.size(); ++i) {
      if (left[i] > 0) {
        left[i] -= step;
        taken[i] += step;
      }
    }
    stock -= step * active;
  }
  return taken;
}

GpbmOutcome gpbm(const Instance& instance, bool record_trace) {
  const std::size_t n = instance.n();
  const std::size_t m = instance.m();
  GpbmOutcome outcome{RandomAssignment(n, m), {}, {}};
  std::vector<Rational> supply(m, Rational(1));
  auto items_left = [&] {
    return std::any_of(supply.begin(), supply.end(), [](const Rational& s) { return s > 0; });
  };

  while (items_left()) {
    const std::size_t c = outcome.rounds.size() + 1;
    RandomAssignment shares(n, m);
    std::vector<Rational> budget(n, Rational(1));
    for (std::size_t r = 1; r <= m; ++r) {
      if (!items_left()) break;
      if (std::none_of(budget.begin(), budget.end(), [](const Rational& b) { return b > 0; })) {
        break;
      }
      // Each agent ranks exactly one item at position r, so the per-item
      // consumer sets below are disjoint and the items are independent.
      for (ItemIndex o = 0; o < m; ++o) {
        if (supply[o] <= 0) continue;
        std::vector<AgentIndex> consumers;
        std::vector<Rational> budgets;
        for (AgentIndex j = 0; j < n; ++j) {
          if (budget[j] > 0 && instance.rank(j, o) == r) {
            consumers.push_back(j);
            budgets.push_back(budget[j]);
          }
        }
        if (consumers.empty()) continue;
        std::vector<Rational> amounts = waterfill(budgets, supply[o]);
        for (std::size_t i = 0; i < consumers.size(); ++i) {
          shares.at(consumers[i], o) += amounts[i];
          budget[consumers[i]] -= amounts[i];
          supply[o] -= amounts[i];
        }
        if (record_trace) {
          outcome.trace.push_back(ConsumptionEvent{c, r, o, std::move(consumers), std::move(amounts)});
        }
      }
    }
    outcome.total += shares;
    outcome.rounds.push_back(std::move(shares));
    if (outcome.rounds.size() > instance.rounds()) {
      throw InvariantError("GPBM ran more rounds than ceil(m/n)");
    }
  }
  if (outcome.rounds.size() != instance.rounds()) {
    throw InvariantError("GPBM finished in the wrong number of rounds");
  }
  return outcome;
}

Assignment rsdq(const Instance& instance, std::span<const AgentIndex> priority, std::size_t quota) {
  if (quota == 0) throw InputError("quota must be at least 1");
  std::vector<bool> seen(instance.n(), false);
  if (priority.size() != instance.n()) throw InputError("priority order must list every agent");
  for (AgentIndex j : priority) {
    if (j >= instance.n() || seen[j]) throw InputError("priority order is not a permutation");
    seen[j] = true;
  }
  Assignment assignment(instance.n(), instance.m());
  for (AgentIndex j : priority) {
    std::size_t picked = 0;
    for (ItemIndex o : instance.prefs(j).ranking()) {
      if (picked == quota) break;
      if (assignment.is_assigned(o)) continue;
      assignment.assign(o, j);
      ++picked;
    }
  }
  return assignment;
}

Lottery rsdq_lottery(const Instance& instance, std::size_t quota, std::uint64_t max_orders) {
  std::uint64_t orders = 1;
  for (std::uint64_t k = 2; k <= instance.n(); ++k) {
    orders *= k;
    if (orders > max_orders) {
      throw SizeError("too many priority orders for exact mode; use sampled mode");
    }
  }
  std::vector<AgentIndex> priority(instance.n());
  std::iota(priority.begin(), priority.end(), AgentIndex{0});
  std::vector<LotteryAtom> atoms;
  const Rational probability(1, static_cast<unsigned long>(orders));
  do {
    atoms.push_back(LotteryAtom{probability, rsdq(instance, priority, quota)});
  } while (std::next_permutation(priority.begin(), priority.end()));
  return Lottery::from_atoms(std::move(atoms));
}

}  // namespace fairassign
