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

#include "fairassign/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "fairassign/culture.hpp"
#include "fairassign/errors.hpp"

namespace fairassign {
namespace {

std::uint64_t checked_power(std::uint64_t base, std::uint64_t exponent, std::uint64_t cap,
                            const std::string& what) {
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (total > cap / std::max<std::uint64_t>(base, 1)) {
      throw SizeError(what + " exceeds the enumeration cap of " + std::to_string(cap));
    }
    total *= base;
  }
  if (total > cap) throw SizeError(what + " exceeds the enumeration cap of " + std::to_string(cap));
  return total;
}

std::uint64_t checked_factorial(std::uint64_t k, std::uint64_t cap, const std::string& what) {
  std::uint64_t total = 1;
  for (std::uint64_t i = 2; i <= k; ++i) {
    if (total > cap / i) {
      throw SizeError(what + " exceeds the enumeration cap of " + std::to_string(cap));
    }
    total *= i;
  }
  return total;
}

std::vector<std::vector<ItemIndex>> all_orders(std::size_t m) {
  std::vector<std::vector<ItemIndex>> orders;
  std::vector<ItemIndex> order(m);
  std::iota(order.begin(), order.end(), ItemIndex{0});
  do {
    orders.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return orders;
}

}  // namespace

void for_each_assignment(const Instance& instance, bool balanced_only,
                         const std::function<bool(const Assignment&)>& visit,
                         std::uint64_t max_enum) {
  const std::size_t n = instance.n();
  const std::size_t m = instance.m();
  checked_power(n, m, max_enum, "assignment enumeration (n^m)");
  const std::size_t low = m / n;
  const std::size_t high = (m + n - 1) / n;

  Assignment current(n, m);
  for (ItemIndex o = 0; o < m; ++o) current.assign(o, 0);
  std::vector<std::size_t> sizes(n, 0);
  while (true) {
    bool keep = true;
    if (balanced_only) {
      std::fill(sizes.begin(), sizes.end(), 0);
      for (ItemIndex o = 0; o < m; ++o) ++sizes[current.holder(o)];
      keep = std::all_of(sizes.begin(), sizes.end(),
                         [&](std::size_t s) { return s == low || s == high; });
    }
    if (keep && !visit(current)) return;

    ItemIndex o = 0;
    while (o < m && current.holder(o) + 1 == n) {
      current.assign(o, 0);
      ++o;
    }
    if (o == m) return;
    current.assign(o, current.holder(o) + 1);
  }
}

std::vector<Assignment> enumerate_assignments(const Instance& instance, bool balanced_only,
                                              std::uint64_t max_enum) {
  std::vector<Assignment> out;
  for_each_assignment(
      instance, balanced_only,
      [&](const Assignment& a) {
        out.push_back(a);
        return true;
      },
      max_enum);
  return out;
}

bool pe_bruteforce(const Instance& instance, const Assignment& assignment, std::uint64_t max_enum) {
  if (!assignment.is_complete()) throw InputError("PE oracle needs a complete assignment");
  const std::size_t n = instance.n();
  std::vector<ShareVector> current(n);
  for (AgentIndex j = 0; j < n; ++j) current[j] = assignment.row(j);

  bool efficient = true;
  for_each_assignment(
      instance, false,
      [&](const Assignment& other) {
        bool changed = false;
        for (AgentIndex j = 0; j < n; ++j) {
          const ShareVector row = other.row(j);
          if (row == current[j]) continue;
          if (!lex_dominates(instance.prefs(j), row, current[j])) return true;
          changed = true;
        }
        if (changed) efficient = false;
        return efficient;
      },
      max_enum);
  return efficient;
}

std::size_t fcm_max_bruteforce(const Instance& instance, std::uint64_t max_enum) {
  std::size_t best = 0;
  for_each_assignment(
      instance, false,
      [&](const Assignment& a) {
        best = std::max(best, fcm_count(instance, a));
        return true;
      },
      max_enum);
  return best;
}

RandomAssignment exact_outcome(Mechanism mechanism, const Instance& instance,
                               const OracleLimits& limits) {
  switch (mechanism) {
    case Mechanism::kGebm: return gebm_expected(instance, limits.max_branches);
    case Mechanism::kGpbm: return gpbm(instance).total;
    case Mechanism::kRsdq:
      return rsdq_lottery(instance, instance.rounds(), limits.max_branches).expected();
  }
  throw InputError("unknown mechanism");
}

std::vector<DominanceStep> dominance_trace(const SpWitness& witness) {
  std::vector<DominanceStep> steps;
  Rational truthful = 0;
  Rational manipulated = 0;
  for (ItemIndex o : witness.true_profile.prefs(witness.agent).ranking()) {
    truthful += witness.truthful[o];
    manipulated += witness.manipulated[o];
    steps.push_back(DominanceStep{o, truthful, manipulated});
  }
  return steps;
}

namespace {

std::optional<SpWitness> compare_rows(Mechanism mechanism, const Instance& instance,
                                      AgentIndex agent, const PreferenceOrder& misreport,
                                      const RandomAssignment& truthful_outcome,
                                      const OracleLimits& limits) {
  const Instance reported = instance.with_preferences(agent, misreport);
  const RandomAssignment manipulated_outcome = exact_outcome(mechanism, reported, limits);
  ShareVector truthful(truthful_outcome.row(agent).begin(), truthful_outcome.row(agent).end());
  ShareVector manipulated(manipulated_outcome.row(agent).begin(),
                          manipulated_outcome.row(agent).end());
  if (manipulated == truthful) return std::nullopt;
  if (!sd_dominates(instance.prefs(agent), manipulated, truthful)) return std::nullopt;
  return SpWitness{mechanism, instance, agent, misreport, std::move(truthful), std::move(manipulated)};
}

}  // namespace

std::optional<SpWitness> check_misreport(Mechanism mechanism, const Instance& instance,
                                         AgentIndex agent, const PreferenceOrder& misreport,
                                         const OracleLimits& limits) {
  if (agent >= instance.n()) throw InputError("agent index out of range");
  return compare_rows(mechanism, instance, agent, misreport,
                      exact_outcome(mechanism, instance, limits), limits);
}

std::optional<SpWitness> sd_wsp_audit(Mechanism mechanism, const Instance& instance,
                                      const OracleLimits& limits) {
  if (instance.m() > limits.max_misreport_items) {
    throw SizeError("too many items to enumerate every misreport (m = " +
                    std::to_string(instance.m()) + ")");
  }
  const RandomAssignment truthful = exact_outcome(mechanism, instance, limits);
  const auto orders = all_orders(instance.m());
  for (AgentIndex j = 0; j < instance.n(); ++j) {
    for (const auto& ranking : orders) {
      if (ranking == instance.prefs(j).ranking()) continue;
      if (auto witness =
              compare_rows(mechanism, instance, j, PreferenceOrder(ranking), truthful, limits)) {
        return witness;
      }
    }
  }
  return std::nullopt;
}

bool replay_sp_witness(const SpWitness& witness, const OracleLimits& limits) {
  const auto truthful = exact_outcome(witness.mechanism, witness.true_profile, limits);
  const auto manipulated = exact_outcome(witness.mechanism, witness.misreport_profile(), limits);
  const auto truth_row = truthful.row(witness.agent);
  const auto manip_row = manipulated.row(witness.agent);
  if (!std::equal(truth_row.begin(), truth_row.end(), witness.truthful.begin(),
                  witness.truthful.end()) ||
      !std::equal(manip_row.begin(), manip_row.end(), witness.manipulated.begin(),
                  witness.manipulated.end())) {
    return false;
  }
  return witness.truthful != witness.manipulated &&
         sd_dominates(witness.true_profile.prefs(witness.agent), witness.manipulated,
                      witness.truthful);
}

PropertyReport neutrality_audit(Mechanism mechanism, const Instance& instance,
                                const ItemPermutation& perm, const OracleLimits& limits) {
  validate_permutation(perm, instance.m());
  const Instance relabeled = instance.relabeled(perm);
  bool equal = false;
  switch (mechanism) {
    case Mechanism::kGebm:
      equal = gebm_lottery(relabeled, limits.max_branches) ==
              gebm_lottery(instance, limits.max_branches).permuted(perm);
      break;
    case Mechanism::kRsdq:
      equal = rsdq_lottery(relabeled, relabeled.rounds(), limits.max_branches) ==
              rsdq_lottery(instance, instance.rounds(), limits.max_branches).permuted(perm);
      break;
    case Mechanism::kGpbm: {
      const GpbmOutcome lhs = gpbm(relabeled);
      const GpbmOutcome rhs = gpbm(instance);
      equal = lhs.total == rhs.total.permuted(perm) && lhs.rounds.size() == rhs.rounds.size();
      for (std::size_t c = 0; equal && c < lhs.rounds.size(); ++c) {
        equal = lhs.rounds[c] == rhs.rounds[c].permuted(perm);
      }
      break;
    }
  }
  PropertyReport report{"neutrality", equal, std::nullopt};
  if (!equal) {
    report.witness = Witness{{}, perm, std::nullopt, "f(pi(R)) differs from pi(f(R))"};
  }
  return report;
}

PropertyReport neutrality_audit_all(Mechanism mechanism, const Instance& instance,
                                    const OracleLimits& limits) {
  checked_factorial(instance.m(), limits.max_enum, "item permutation enumeration (m!)");
  for (const auto& perm : all_orders(instance.m())) {
    auto report = neutrality_audit(mechanism, instance, perm, limits);
    if (!report.verdict) return report;
  }
  return PropertyReport{"neutrality", true, std::nullopt};
}

std::optional<Remark1Witness> remark1_search(std::size_t bound_n, std::size_t bound_m,
                                             std::span<const Property> properties,
                                             const OracleLimits& limits) {
  for (Property p : properties) {
    if (p != Property::kSde && p != Property::kSdEf) {
      throw InputError("remark1 search only audits sde and sdef");
    }
  }
  for (std::size_t n = 1; n <= bound_n; ++n) {
    for (std::size_t m = 1; m <= bound_m; ++m) {
      const std::uint64_t per_agent = checked_factorial(m, limits.max_enum, "profile enumeration");
      checked_power(per_agent, n, limits.max_enum, "profile enumeration ((m!)^n)");
      const auto orders = all_orders(m);
      const auto items = default_item_names(m);
      const auto names = default_agent_names(n);
      std::vector<std::size_t> choice(n, 0);
      while (true) {
        std::vector<Agent> agents;
        for (std::size_t j = 0; j < n; ++j) {
          agents.push_back(Agent{names[j], PreferenceOrder(orders[choice[j]])});
        }
        Instance profile(items, std::move(agents));
        const RandomAssignment expected = gebm_expected(profile, limits.max_branches);
        for (Property p : properties) {
          const auto report = p == Property::kSde ? check_sde_acyclic(profile, expected)
                                                  : check_sd_ef(profile, expected);
          if (!report.verdict) return Remark1Witness{profile, report.property};
        }
        std::size_t j = 0;
        while (j < n && choice[j] + 1 == orders.size()) choice[j++] = 0;
        if (j == n) break;
        ++choice[j];
      }
    }
  }
  return std::nullopt;
}

std::optional<Remark1Witness> remark1_search(std::size_t bound_n, std::size_t bound_m,
                                             const OracleLimits& limits) {
  const Property both[] = {Property::kSde, Property::kSdEf};
  return remark1_search(bound_n, bound_m, both, limits);
}

}  // namespace fairassign
