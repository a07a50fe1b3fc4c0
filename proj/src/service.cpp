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

#include "fairassign/service.hpp"

#include <numeric>
#include <random>
#include <sstream>

#include "fairassign/culture.hpp"
#include "fairassign/decomposition.hpp"
#include "fairassign/errors.hpp"

namespace fairassign {
namespace {

std::vector<AgentIndex> priority_from(const Instance& instance, const RunOptions& options) {
  std::vector<AgentIndex> priority;
  if (!options.priority.empty()) {
    for (const auto& name : options.priority) priority.push_back(instance.agent_index(name));
    return priority;
  }
  priority.resize(instance.n());
  std::iota(priority.begin(), priority.end(), AgentIndex{0});
  std::mt19937_64 engine(options.seed);
  for (std::size_t i = priority.size(); i-- > 1;) {
    std::swap(priority[i], priority[static_cast<std::size_t>(engine() % (i + 1))]);
  }
  return priority;
}

Json rounds_to_json(const Instance& instance, const std::vector<Assignment>& rounds,
                    const std::vector<ItemSet>& remaining) {
  Json out = Json::array();
  for (std::size_t c = 0; c < rounds.size(); ++c) {
    out.push_back(Json{{"round", c + 1},
                       {"remaining", item_set_to_json(instance, remaining.at(c))},
                       {"assignment", assignment_to_json(instance, rounds[c])}});
  }
  return out;
}

Json trace_to_json(const Instance& instance, const std::vector<ConsumptionEvent>& trace) {
  Json out = Json::array();
  for (const auto& event : trace) {
    Json consumers = Json::array();
    Json amounts = Json::array();
    for (std::size_t i = 0; i < event.consumers.size(); ++i) {
      consumers.push_back(instance.agent(event.consumers[i]).name);
      amounts.push_back(to_string(event.amounts[i]));
    }
    out.push_back(Json{{"round", event.round},
                       {"consumption_round", event.consumption_round},
                       {"item", instance.item_name(event.item)},
                       {"consumers", std::move(consumers)},
                       {"amounts", std::move(amounts)}});
  }
  return out;
}

Json header(const RunOptions& options, const std::string& kind, const std::string& mode) {
  return Json{{"kind", kind},
              {"mechanism", std::string(mechanism_name(options.mechanism))},
              {"mode", mode}};
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, sep)) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

}  // namespace

Json run_mechanism(const Instance& instance, const RunOptions& options) {
  const std::size_t quota = options.quota == 0 ? instance.rounds() : options.quota;
  switch (options.mechanism) {
    case Mechanism::kGebm: {
      const std::string mode = options.mode.empty() ? "sample" : options.mode;
      if (mode == "sample") {
        const GebmOutcome outcome = gebm_sample(instance, options.seed);
        Json doc = header(options, "deterministic", mode);
        doc["seed"] = options.seed;
        doc["assignment"] = assignment_to_json(instance, outcome.total);
        doc["rounds"] = rounds_to_json(instance, outcome.rounds, outcome.remaining);
        return doc;
      }
      if (mode == "expected") {
        Json doc = header(options, "random", mode);
        doc["matrix"] = matrix_to_json(gebm_expected(instance, options.max_branches));
        return doc;
      }
      if (mode == "lottery") {
        const Lottery lottery = gebm_lottery(instance, options.max_branches);
        Json doc = header(options, "lottery", mode);
        doc["atoms"] = lottery_to_json(instance, lottery);
        doc["expected"] = matrix_to_json(lottery.expected());
        return doc;
      }
      break;
    }
    case Mechanism::kGpbm: {
      const std::string mode = options.mode.empty() ? "fractional" : options.mode;
      if (mode == "fractional") {
        const GpbmOutcome outcome = gpbm(instance, options.trace);
        Json doc = header(options, "random", mode);
        doc["matrix"] = matrix_to_json(outcome.total);
        Json rounds = Json::array();
        for (std::size_t c = 0; c < outcome.rounds.size(); ++c) {
          rounds.push_back(Json{{"round", c + 1}, {"matrix", matrix_to_json(outcome.rounds[c])}});
        }
        doc["rounds"] = std::move(rounds);
        if (options.trace) doc["trace"] = trace_to_json(instance, outcome.trace);
        return doc;
      }
      if (mode == "lottery") {
        const GpbmLottery result = gpbm_lottery(instance);
        Json doc = header(options, "lottery", mode);
        doc["atoms"] = decomposed_to_json(instance, result.decomposed);
        doc["expected"] = matrix_to_json(result.outcome.total);
        return doc;
      }
      break;
    }
    case Mechanism::kRsdq: {
      const std::string mode = options.mode.empty() ? "sample" : options.mode;
      if (mode == "sample") {
        const auto priority = priority_from(instance, options);
        Json doc = header(options, "deterministic", mode);
        Json order = Json::array();
        for (AgentIndex j : priority) order.push_back(instance.agent(j).name);
        doc["priority"] = std::move(order);
        doc["quota"] = quota;
        doc["assignment"] = assignment_to_json(instance, rsdq(instance, priority, quota));
        return doc;
      }
      if (mode == "expected" || mode == "lottery") {
        const Lottery lottery = rsdq_lottery(instance, quota, options.max_branches);
        Json doc = header(options, mode == "lottery" ? "lottery" : "random", mode);
        doc["quota"] = quota;
        if (mode == "lottery") {
          doc["atoms"] = lottery_to_json(instance, lottery);
          doc["expected"] = matrix_to_json(lottery.expected());
        } else {
          doc["matrix"] = matrix_to_json(lottery.expected());
        }
        return doc;
      }
      break;
    }
  }
  throw InputError("mode '" + options.mode + "' is not available for mechanism " +
                   std::string(mechanism_name(options.mechanism)));
}

CheckResult check_outcome(const Instance& instance, const Json& outcome,
                          const std::vector<std::string>& properties) {
  using Kind = OutcomeDocument::Kind;
  const OutcomeDocument doc = outcome_from_json(instance, outcome);
  const char* kind_name = doc.kind == Kind::kDeterministic ? "deterministic"
                          : doc.kind == Kind::kRandom      ? "random"
                                                           : "lottery";
  auto mismatch = [&](const std::string& property) {
    return InputError("property '" + property + "' does not apply to a " + kind_name +
                      " outcome");
  };

  CheckResult result{Json{{"reports", Json::array()}}, true};
  for (const auto& name : properties) {
    PropertyReport report;
    if (name.rfind("expost-", 0) == 0) {
      const Property inner = parse_property(name.substr(7));
      if (inner != Property::kPe && inner != Property::kFcm && inner != Property::kEf1) {
        throw InputError("unknown property '" + name + "'");
      }
      Lottery lottery;
      if (doc.kind == Kind::kLottery) {
        lottery = *doc.lottery;
      } else if (doc.kind == Kind::kDeterministic) {
        lottery = Lottery::from_atoms({LotteryAtom{Rational(1), *doc.assignment}});
      } else {
        throw mismatch(name);
      }
      const Property only[] = {inner};
      report = check_lottery_expost(instance, lottery, only).front();
    } else {
      const Property property = parse_property(name);
      const bool matrix_property = property == Property::kSde || property == Property::kSdWef ||
                                   property == Property::kSdEf;
      if (doc.kind == Kind::kLottery) throw mismatch(name);
      if (doc.kind == Kind::kRandom && !matrix_property) throw mismatch(name);
      if (matrix_property) {
        const RandomAssignment shares =
            doc.matrix ? *doc.matrix : RandomAssignment::from(*doc.assignment);
        report = property == Property::kSde     ? check_sde_acyclic(instance, shares)
                 : property == Property::kSdWef ? check_sd_wef(instance, shares)
                                                : check_sd_ef(instance, shares);
      } else if (property == Property::kFeri) {
        if (doc.rounds.empty()) {
          report = check_feri(instance, *doc.assignment, instance.all_items());
        } else {
          report = PropertyReport{"feri", true, std::nullopt};
          ItemSet available = instance.all_items();
          for (std::size_t c = 0; c < doc.rounds.size(); ++c) {
            const ItemSet& domain = c < doc.remaining.size() ? doc.remaining[c] : available;
            auto round_report = check_feri(instance, doc.rounds[c], domain);
            if (!round_report.verdict) {
              report = std::move(round_report);
              report.witness->detail += " (round " + std::to_string(c + 1) + ")";
              break;
            }
            for (ItemIndex o = 0; o < instance.m(); ++o) {
              if (doc.rounds[c].is_assigned(o)) available.erase(o);
            }
          }
        }
      } else {
        report = check_deterministic(instance, *doc.assignment, property);
      }
    }
    result.all_pass = result.all_pass && report.verdict;
    result.document["reports"].push_back(report_to_json(instance, report));
  }
  result.document["all_pass"] = result.all_pass;
  return result;
}

Json decompose_document(const Instance& instance, std::optional<std::uint64_t> seed) {
  const GpbmLottery result = gpbm_lottery(instance);
  Json rounds = Json::array();
  for (std::size_t c = 0; c < result.outcome.rounds.size(); ++c) {
    rounds.push_back(Json{{"round", c + 1}, {"matrix", matrix_to_json(result.outcome.rounds[c])}});
  }
  Json subagents = Json::array();
  const auto& matrix = result.subagents;
  for (AgentIndex j = 0; j < matrix.agents(); ++j) {
    for (std::size_t c = 0; c < matrix.rounds(); ++c) {
      Json row = Json::object();
      for (ItemIndex o = 0; o < matrix.items(); ++o) {
        row[instance.item_name(o)] = to_string(matrix.at(matrix.row_of(j, c), o));
      }
      row["nil"] = to_string(matrix.at(matrix.row_of(j, c), matrix.nil_column()));
      subagents.push_back(Json{{"agent", instance.agent(j).name}, {"round", c + 1}, {"shares", row}});
    }
  }
  Json doc{{"kind", "lottery"},
           {"mechanism", "gpbm"},
           {"mode", "decompose"},
           {"rounds_matrices", std::move(rounds)},
           {"subagents", std::move(subagents)},
           {"atoms", decomposed_to_json(instance, result.decomposed)}};
  if (seed) {
    const std::size_t atom = sample_atom(result.decomposed, *seed);
    const Realization realization = result.decomposed.realize(atom);
    doc["sample"] = Json{{"seed", *seed},
                         {"atom", atom},
                         {"assignment", assignment_to_json(instance, realization.total)},
                         {"rounds", rounds_to_json(instance, realization.rounds, realization.remaining)}};
  }
  return doc;
}

ItemPermutation parse_permutation(const Instance& instance, const std::string& text) {
  ItemPermutation perm(instance.m());
  std::iota(perm.begin(), perm.end(), ItemIndex{0});
  for (const auto& pair : split(text, ',')) {
    const auto colon = pair.find(':');
    if (colon == std::string::npos) throw InputError("permutation entries look like 'c:d'");
    perm[instance.item_index(pair.substr(0, colon))] = instance.item_index(pair.substr(colon + 1));
  }
  validate_permutation(perm, instance.m());
  return perm;
}

AuditResult audit_sp(const Instance& instance, const AuditOptions& options) {
  std::optional<SpWitness> witness;
  if (options.agent || options.misreport) {
    if (!options.agent || !options.misreport) {
      throw InputError("a single-misreport audit needs both an agent and a misreport");
    }
    std::vector<ItemIndex> ranking;
    for (const auto& name : *options.misreport) ranking.push_back(instance.item_index(name));
    if (ranking.size() != instance.m()) throw InputError("misreport must rank every item");
    witness = check_misreport(options.mechanism, instance, instance.agent_index(*options.agent),
                              PreferenceOrder(std::move(ranking)), options.limits);
  } else {
    witness = sd_wsp_audit(options.mechanism, instance, options.limits);
  }
  AuditResult result;
  result.found = witness.has_value();
  result.document = Json{{"audit", "sp"},
                         {"mechanism", std::string(mechanism_name(options.mechanism))},
                         {"found", result.found}};
  if (witness) {
    result.replayed = replay_sp_witness(*witness, options.limits);
    result.document["witness"] = sp_witness_to_json(*witness);
  } else {
    result.document["witness"] = nullptr;
  }
  result.document["replayed"] = result.replayed;
  return result;
}

AuditResult audit_neutrality(const Instance& instance, const AuditOptions& options) {
  PropertyReport report =
      options.permutation
          ? neutrality_audit(options.mechanism, instance,
                             parse_permutation(instance, *options.permutation), options.limits)
          : neutrality_audit_all(options.mechanism, instance, options.limits);
  AuditResult result;
  result.found = report.verdict;
  result.document = Json{{"audit", "neutrality"},
                         {"mechanism", std::string(mechanism_name(options.mechanism))},
                         {"result", report.verdict ? "equal" : "differs"},
                         {"report", report_to_json(instance, report)}};
  return result;
}

AuditResult audit_remark1(const AuditOptions& options) {
  const auto witness = remark1_search(options.max_size, options.max_size, options.limits);
  AuditResult result;
  result.found = witness.has_value();
  result.document = Json{{"audit", "remark1"},
                         {"mechanism", "gebm"},
                         {"max", options.max_size},
                         {"found", result.found}};
  if (witness) {
    const RandomAssignment expected = gebm_expected(witness->profile, options.limits.max_branches);
    const PropertyReport again = witness->property == "sde"
                                     ? check_sde_acyclic(witness->profile, expected)
                                     : check_sd_ef(witness->profile, expected);
    result.replayed = !again.verdict;
    result.document["property"] = witness->property;
    result.document["profile"] = instance_to_json(witness->profile);
    result.document["expected"] = matrix_to_json(expected);
    result.document["report"] = report_to_json(witness->profile, again);
  }
  result.document["replayed"] = result.replayed;
  return result;
}

}  // namespace fairassign
