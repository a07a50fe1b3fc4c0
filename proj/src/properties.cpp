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

#include "fairassign/properties.hpp"

#include <algorithm>

#include "fairassign/errors.hpp"

namespace fairassign {
namespace {

using Digraph = std::vector<std::vector<bool>>;

bool find_cycle_from(const Digraph& graph, std::size_t node, std::vector<int>& color,
                     std::vector<std::size_t>& path, std::vector<std::size_t>& cycle) {
  color[node] = 1;
  path.push_back(node);
  for (std::size_t next = 0; next < graph.size(); ++next) {
    if (!graph[node][next]) continue;
    if (color[next] == 1) {
      auto start = std::find(path.begin(), path.end(), next);
      cycle.assign(start, path.end());
      return true;
    }
    if (color[next] == 0 && find_cycle_from(graph, next, color, path, cycle)) return true;
  }
  path.pop_back();
  color[node] = 2;
  return false;
}

// First cycle found by a depth-first search in increasing vertex order.
std::vector<std::size_t> find_cycle(const Digraph& graph) {
  std::vector<int> color(graph.size(), 0);
  std::vector<std::size_t> path;
  std::vector<std::size_t> cycle;
  for (std::size_t start = 0; start < graph.size(); ++start) {
    if (color[start] == 0 && find_cycle_from(graph, start, color, path, cycle)) return cycle;
  }
  return {};
}

PropertyReport acyclicity_report(std::string name, const Digraph& graph) {
  PropertyReport report{std::move(name), true, std::nullopt};
  auto cycle = find_cycle(graph);
  if (!cycle.empty()) {
    report.verdict = false;
    report.witness = Witness{{}, std::move(cycle), std::nullopt, "preference cycle"};
  }
  return report;
}

PropertyReport failure(std::string name, Witness witness) {
  return PropertyReport{std::move(name), false, std::move(witness)};
}

void require_shape(const Instance& instance, std::size_t n, std::size_t m) {
  if (n != instance.n() || m != instance.m()) {
    throw InputError("assignment shape does not match the instance");
  }
}

}  // namespace

std::string_view property_name(Property property) {
  switch (property) {
    case Property::kPe: return "pe";
    case Property::kSde: return "sde";
    case Property::kFcm: return "fcm";
    case Property::kEf1: return "ef1";
    case Property::kSdWef: return "sdwef";
    case Property::kSdEf: return "sdef";
    case Property::kFhr: return "fhr";
    case Property::kFeri: return "feri";
  }
  return "unknown";
}

Property parse_property(std::string_view name) {
  for (Property p : {Property::kPe, Property::kSde, Property::kFcm, Property::kEf1,
                     Property::kSdWef, Property::kSdEf, Property::kFhr, Property::kFeri}) {
    if (property_name(p) == name) return p;
  }
  throw InputError("unknown property '" + std::string(name) + "'");
}

PropertyReport check_pe_acyclic(const Instance& instance, const Assignment& assignment) {
  require_shape(instance, assignment.n(), assignment.m());
  if (!assignment.is_complete()) throw InputError("PE check needs a complete assignment");
  const std::size_t m = instance.m();
  Digraph graph(m, std::vector<bool>(m, false));
  for (ItemIndex o = 0; o < m; ++o) {
    const auto& order = instance.prefs(assignment.holder(o));
    for (std::size_t r = 1; r < order.rank(o); ++r) graph[o][order.at_rank(r)] = true;
  }
  return acyclicity_report("pe", graph);
}

PropertyReport check_sde_acyclic(const Instance& instance, const RandomAssignment& shares) {
  require_shape(instance, shares.n(), shares.m());
  if (!shares.is_fully_allocating()) {
    throw InputError("sd-E check needs a fully allocating random assignment");
  }
  const std::size_t m = instance.m();
  Digraph graph(m, std::vector<bool>(m, false));
  for (AgentIndex j = 0; j < instance.n(); ++j) {
    const auto& order = instance.prefs(j);
    for (ItemIndex o = 0; o < m; ++o) {
      if (shares.at(j, o) <= 0) continue;
      for (std::size_t r = 1; r < order.rank(o); ++r) graph[o][order.at_rank(r)] = true;
    }
  }
  return acyclicity_report("sde", graph);
}

PropertyReport check_fcm(const Instance& instance, const Assignment& assignment) {
  require_shape(instance, assignment.n(), assignment.m());
  for (AgentIndex j = 0; j < instance.n(); ++j) {
    const ItemIndex first = instance.prefs(j).at_rank(1);
    if (!assignment.is_assigned(first)) {
      return failure("fcm", Witness{{j}, {first}, std::nullopt, "first choice left unallocated"});
    }
    const AgentIndex holder = assignment.holder(first);
    if (instance.rank(holder, first) != 1) {
      return failure("fcm", Witness{{j, holder}, {first}, std::nullopt,
                                    "first choice held by an agent not ranking it first"});
    }
  }
  return PropertyReport{"fcm", true, std::nullopt};
}

std::size_t fcm_count(const Instance& instance, const Assignment& assignment) {
  std::size_t count = 0;
  for (AgentIndex j = 0; j < instance.n(); ++j) {
    const ItemIndex first = instance.prefs(j).at_rank(1);
    if (assignment.is_assigned(first) && assignment.holder(first) == j) ++count;
  }
  return count;
}

std::size_t fcm_max(const Instance& instance) {
  ItemSet firsts(instance.m());
  for (AgentIndex j = 0; j < instance.n(); ++j) firsts.insert(instance.prefs(j).at_rank(1));
  return firsts.size();
}

bool ef1_pair(const Instance& instance, const Assignment& assignment, AgentIndex judge,
              AgentIndex envied) {
  const auto bundle = assignment.bundle(envied);
  if (bundle.empty()) return true;
  const ShareVector own = assignment.row(judge);
  ShareVector other = assignment.row(envied);
  for (ItemIndex removed : bundle) {
    other[removed] = 0;
    if (sd_dominates(instance.prefs(judge), own, other)) return true;
    other[removed] = 1;
  }
  return false;
}

PropertyReport check_ef1(const Instance& instance, const Assignment& assignment) {
  require_shape(instance, assignment.n(), assignment.m());
  for (AgentIndex j = 0; j < instance.n(); ++j) {
    for (AgentIndex k = 0; k < instance.n(); ++k) {
      if (j != k && !ef1_pair(instance, assignment, j, k)) {
        return failure("ef1", Witness{{j, k}, assignment.bundle(k), std::nullopt,
                                      "envy survives every single-item removal"});
      }
    }
  }
  return PropertyReport{"ef1", true, std::nullopt};
}

PropertyReport check_sd_wef(const Instance& instance, const RandomAssignment& shares) {
  require_shape(instance, shares.n(), shares.m());
  for (AgentIndex j = 0; j < instance.n(); ++j) {
    for (AgentIndex k = 0; k < instance.n(); ++k) {
      if (j == k) continue;
      if (sd_dominates(instance.prefs(j), shares.row(k), shares.row(j)) &&
          !std::equal(shares.row(k).begin(), shares.row(k).end(), shares.row(j).begin())) {
        return failure("sdwef", Witness{{j, k}, {}, std::nullopt,
                                        "envied row sd-dominates and differs"});
      }
    }
  }
  return PropertyReport{"sdwef", true, std::nullopt};
}

PropertyReport check_sd_ef(const Instance& instance, const RandomAssignment& shares) {
  require_shape(instance, shares.n(), shares.m());
  for (AgentIndex j = 0; j < instance.n(); ++j) {
    for (AgentIndex k = 0; k < instance.n(); ++k) {
      if (j != k && !sd_dominates(instance.prefs(j), shares.row(j), shares.row(k))) {
        return failure("sdef", Witness{{j, k}, {}, std::nullopt,
                                       "own row does not sd-dominate the envied row"});
      }
    }
  }
  return PropertyReport{"sdef", true, std::nullopt};
}

PropertyReport check_fhr(const Instance& instance, const Assignment& assignment,
                         const ItemSet& domain) {
  require_shape(instance, assignment.n(), assignment.m());
  if (domain.universe() != instance.m()) throw InputError("ranking domain is not over the items");
  for (ItemIndex o = 0; o < assignment.m(); ++o) {
    if (assignment.is_assigned(o) && !domain.contains(o)) {
      throw InputError("allocated item '" + instance.item_name(o) + "' lies outside the ranking domain");
    }
  }
  std::vector<std::vector<ItemIndex>> bundles(instance.n());
  for (AgentIndex j = 0; j < instance.n(); ++j) bundles[j] = assignment.bundle(j);
  for (AgentIndex j = 0; j < instance.n(); ++j) {
    for (AgentIndex k = 0; k < instance.n(); ++k) {
      for (ItemIndex oj : bundles[j]) {
        const std::size_t own_rank = instance.rank(j, oj, domain);
        const std::size_t rival_rank = instance.rank(k, oj, domain);
        if (own_rank <= rival_rank) continue;
        for (ItemIndex ok : bundles[k]) {
          if (instance.rank(k, ok, domain) >= rival_rank) {
            return failure("fhr", Witness{{j, k}, {oj, ok}, std::nullopt,
                                          "item held by an agent ranking it lower"});
          }
        }
      }
    }
  }
  return PropertyReport{"fhr", true, std::nullopt};
}

PropertyReport check_fhr(const Instance& instance, const Assignment& assignment) {
  return check_fhr(instance, assignment, instance.all_items());
}

PropertyReport check_feri(const Instance& instance, const Assignment& matching,
                          const ItemSet& domain) {
  require_shape(instance, matching.n(), matching.m());
  if (domain.universe() != instance.m()) throw InputError("item domain is not over the items");
  std::vector<std::size_t> held(instance.n(), 0);
  for (ItemIndex o = 0; o < matching.m(); ++o) {
    if (!matching.is_assigned(o)) continue;
    if (!domain.contains(o)) throw InputError("matching allocates an item outside the domain");
    if (++held[matching.holder(o)] > 1) throw InputError("FERI needs a one-to-one matching");
  }

  ItemSet remaining = domain;
  std::vector<bool> served(instance.n(), false);
  while (!remaining.empty()) {
    ItemSet tier(instance.m());
    for (AgentIndex j = 0; j < instance.n(); ++j) {
      if (!served[j]) tier.insert(instance.top(j, remaining));
    }
    if (tier.empty()) break;
    for (ItemIndex o : tier.items()) {
      if (!matching.is_assigned(o)) {
        return failure("feri", Witness{{}, {o}, std::nullopt, "tier item left unallocated"});
      }
      const AgentIndex holder = matching.holder(o);
      if (instance.top(holder, remaining) != o) {
        return failure("feri", Witness{{holder}, {o}, std::nullopt,
                                       "tier item held by an agent for whom it is not top"});
      }
    }
    for (ItemIndex o : tier.items()) {
      remaining.erase(o);
      served[matching.holder(o)] = true;
    }
  }
  return PropertyReport{"feri", true, std::nullopt};
}

PropertyReport check_round_ordering(const Instance& instance, std::span<const Assignment> rounds) {
  for (std::size_t c = 0; c + 1 < rounds.size(); ++c) {
    const auto& now = rounds[c];
    const auto& next = rounds[c + 1];
    for (ItemIndex o = 0; o < now.m(); ++o) {
      if (!now.is_assigned(o)) continue;
      const AgentIndex j = now.holder(o);
      for (ItemIndex later = 0; later < next.m(); ++later) {
        if (next.is_assigned(later) && !instance.prefs(j).prefers(o, later)) {
          return failure("round-ordering",
                         Witness{{j, next.holder(later)}, {o, later}, std::nullopt,
                                 "round " + std::to_string(c + 1) +
                                     " item not preferred to a later-round item"});
        }
      }
    }
  }
  return PropertyReport{"round-ordering", true, std::nullopt};
}

PropertyReport check_deterministic(const Instance& instance, const Assignment& assignment,
                                   Property property) {
  switch (property) {
    case Property::kPe: return check_pe_acyclic(instance, assignment);
    case Property::kFcm: return check_fcm(instance, assignment);
    case Property::kEf1: return check_ef1(instance, assignment);
    case Property::kFhr: return check_fhr(instance, assignment);
    default:
      throw InputError("property '" + std::string(property_name(property)) +
                       "' is not a deterministic-assignment property");
  }
}

std::vector<PropertyReport> check_lottery_expost(const Instance& instance, const Lottery& lottery,
                                                 std::span<const Property> properties) {
  std::vector<PropertyReport> reports;
  for (Property property : properties) {
    PropertyReport report{"expost-" + std::string(property_name(property)), true, std::nullopt};
    for (std::size_t a = 0; a < lottery.size(); ++a) {
      auto inner = check_deterministic(instance, lottery.atoms()[a].assignment, property);
      if (!inner.verdict) {
        report.verdict = false;
        report.witness = std::move(inner.witness);
        report.witness->atom = a;
        break;
      }
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace fairassign
