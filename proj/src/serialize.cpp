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

#include "fairassign/serialize.hpp"

#include "fairassign/errors.hpp"

namespace fairassign {
namespace {

const Json& require(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw InputError(std::string("missing field '") + key + "'");
  }
  return doc.at(key);
}

std::string require_string(const Json& value, const char* what) {
  if (!value.is_string()) throw InputError(std::string(what) + " must be a string");
  return value.get<std::string>();
}

Rational rational_from(const Json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.get<long>());
  throw InputError("rationals must be written as \"p/q\" strings");
}

Json items_to_json(const Instance& instance, std::span<const ItemIndex> items) {
  Json out = Json::array();
  for (ItemIndex o : items) out.push_back(instance.item_name(o));
  return out;
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Json instance_to_json(const Instance& instance) {
  Json agents = Json::array();
  for (const auto& agent : instance.agents()) {
    agents.push_back(Json{{"name", agent.name},
                          {"prefs", items_to_json(instance, agent.prefs.ranking())}});
  }
  return Json{{"items", instance.items()}, {"agents", std::move(agents)}};
}

Instance instance_from_json(const Json& doc) {
  const Json& items_doc = require(doc, "items");
  const Json& agents_doc = require(doc, "agents");
  if (!items_doc.is_array() || !agents_doc.is_array()) {
    throw InputError("'items' and 'agents' must be arrays");
  }
  std::vector<std::string> items;
  for (const auto& item : items_doc) items.push_back(require_string(item, "item identifier"));
  std::vector<std::pair<std::string, std::vector<std::string>>> agents;
  for (const auto& agent : agents_doc) {
    std::string name = require_string(require(agent, "name"), "agent name");
    const Json& prefs = require(agent, "prefs");
    if (!prefs.is_array()) throw InputError("prefs of agent '" + name + "' must be an array");
    std::vector<std::string> ranked;
    for (const auto& item : prefs) ranked.push_back(require_string(item, "preference entry"));
    agents.emplace_back(std::move(name), std::move(ranked));
  }
  return make_instance(items, agents);
}

std::string serialize_instance(const Instance& instance) {
  return instance_to_json(instance).dump(2) + "\n";
}

Instance parse_instance(std::string_view text) { return instance_from_json(parse_json(text)); }

Json assignment_to_json(const Instance& instance, const Assignment& assignment) {
  Json out = Json::object();
  for (AgentIndex j = 0; j < instance.n(); ++j) {
    out[instance.agent(j).name] = items_to_json(instance, assignment.bundle(j));
  }
  return out;
}

Assignment assignment_from_json(const Instance& instance, const Json& doc) {
  if (!doc.is_object()) throw InputError("a deterministic assignment must be an object");
  Assignment assignment(instance.n(), instance.m());
  for (const auto& [name, bundle] : doc.items()) {
    const AgentIndex j = instance.agent_index(name);
    if (!bundle.is_array()) throw InputError("bundle of agent '" + name + "' must be an array");
    for (const auto& item : bundle) {
      const ItemIndex o = instance.item_index(require_string(item, "item identifier"));
      if (assignment.is_assigned(o)) {
        throw InputError("item '" + instance.item_name(o) + "' is assigned twice");
      }
      assignment.assign(o, j);
    }
  }
  return assignment;
}

Json matrix_to_json(const RandomAssignment& shares) {
  Json rows = Json::array();
  for (AgentIndex j = 0; j < shares.n(); ++j) {
    Json row = Json::array();
    for (const auto& v : shares.row(j)) row.push_back(to_string(v));
    rows.push_back(std::move(row));
  }
  return rows;
}

RandomAssignment matrix_from_json(const Instance& instance, const Json& doc) {
  if (!doc.is_array() || doc.size() != instance.n()) {
    throw InputError("matrix must have one row per agent");
  }
  RandomAssignment shares(instance.n(), instance.m());
  for (AgentIndex j = 0; j < instance.n(); ++j) {
    const Json& row = doc[j];
    if (!row.is_array() || row.size() != instance.m()) {
      throw InputError("matrix rows must have one entry per item");
    }
    for (ItemIndex o = 0; o < instance.m(); ++o) {
      Rational v = rational_from(row[o]);
      if (v < 0 || v > 1) throw InputError("matrix entries must lie in [0, 1]");
      shares.at(j, o) = v;
    }
  }
  return shares;
}

Json row_to_json(const Instance& instance, std::span<const Rational> row) {
  Json out = Json::object();
  for (ItemIndex o = 0; o < row.size(); ++o) out[instance.item_name(o)] = to_string(row[o]);
  return out;
}

ShareVector row_from_json(const Instance& instance, const Json& doc) {
  if (!doc.is_object()) throw InputError("an allocation row must be an object");
  ShareVector row(instance.m(), Rational(0));
  for (const auto& [name, value] : doc.items()) row[instance.item_index(name)] = rational_from(value);
  return row;
}

Json lottery_to_json(const Instance& instance, const Lottery& lottery) {
  Json atoms = Json::array();
  for (const auto& atom : lottery.atoms()) {
    atoms.push_back(Json{{"prob", to_string(atom.probability)},
                         {"assignment", assignment_to_json(instance, atom.assignment)}});
  }
  return atoms;
}

Lottery lottery_from_json(const Instance& instance, const Json& doc) {
  if (!doc.is_array()) throw InputError("a lottery must be an array of atoms");
  std::vector<LotteryAtom> atoms;
  for (const auto& atom : doc) {
    atoms.push_back(LotteryAtom{rational_from(require(atom, "prob")),
                                assignment_from_json(instance, require(atom, "assignment"))});
  }
  try {
    return Lottery::from_atoms(std::move(atoms));
  } catch (const InvariantError& e) {
    throw InputError(e.what());
  }
}

Json decomposed_to_json(const Instance& instance, const DecomposedLottery& lottery) {
  Json atoms = Json::array();
  for (std::size_t a = 0; a < lottery.atoms.size(); ++a) {
    const Realization realization = lottery.realize(a);
    Json rounds = Json::array();
    for (const auto& matching : realization.rounds) {
      rounds.push_back(assignment_to_json(instance, matching));
    }
    atoms.push_back(Json{{"prob", to_string(lottery.atoms[a].coefficient)},
                         {"assignment", assignment_to_json(instance, realization.total)},
                         {"rounds", std::move(rounds)}});
  }
  return atoms;
}

Json item_set_to_json(const Instance& instance, const ItemSet& set) {
  return items_to_json(instance, set.items());
}

Json report_to_json(const Instance& instance, const PropertyReport& report) {
  Json witness = nullptr;
  if (report.witness) {
    Json agents = Json::array();
    for (AgentIndex j : report.witness->agents) agents.push_back(instance.agent(j).name);
    witness = Json{{"agents", std::move(agents)},
                   {"items", items_to_json(instance, report.witness->items)},
                   {"atom", report.witness->atom ? Json(*report.witness->atom) : Json(nullptr)},
                   {"detail", report.witness->detail}};
  }
  return Json{{"property", report.property}, {"verdict", report.verdict}, {"witness", witness}};
}

PropertyReport report_from_json(const Instance& instance, const Json& doc) {
  PropertyReport report;
  report.property = require_string(require(doc, "property"), "property");
  if (!require(doc, "verdict").is_boolean()) throw InputError("verdict must be a boolean");
  report.verdict = doc.at("verdict").get<bool>();
  const Json& witness = require(doc, "witness");
  if (!witness.is_null()) {
    Witness w;
    for (const auto& name : require(witness, "agents")) {
      w.agents.push_back(instance.agent_index(require_string(name, "agent name")));
    }
    for (const auto& name : require(witness, "items")) {
      w.items.push_back(instance.item_index(require_string(name, "item identifier")));
    }
    if (witness.contains("atom") && !witness.at("atom").is_null()) {
      w.atom = witness.at("atom").get<std::size_t>();
    }
    if (witness.contains("detail")) w.detail = require_string(witness.at("detail"), "detail");
    report.witness = std::move(w);
  }
  return report;
}

Json sp_witness_to_json(const SpWitness& witness) {
  const Instance& profile = witness.true_profile;
  Json trace = Json::array();
  for (const auto& step : dominance_trace(witness)) {
    trace.push_back(Json{{"item", profile.item_name(step.item)},
                         {"truthful", to_string(step.truthful_cumulative)},
                         {"manipulated", to_string(step.manipulated_cumulative)}});
  }
  return Json{{"mechanism", std::string(mechanism_name(witness.mechanism))},
              {"agent", profile.agent(witness.agent).name},
              {"true_profile", instance_to_json(profile)},
              {"misreport_profile", instance_to_json(witness.misreport_profile())},
              {"misreport", items_to_json(profile, witness.misreport.ranking())},
              {"truthful_row", row_to_json(profile, witness.truthful)},
              {"manipulated_row", row_to_json(profile, witness.manipulated)},
              {"trace", std::move(trace)},
              {"dominates", sd_dominates(profile.prefs(witness.agent), witness.manipulated,
                                         witness.truthful)}};
}

SpWitness sp_witness_from_json(const Json& doc) {
  Instance profile = instance_from_json(require(doc, "true_profile"));
  const Mechanism mechanism = parse_mechanism(require_string(require(doc, "mechanism"), "mechanism"));
  const AgentIndex agent = profile.agent_index(require_string(require(doc, "agent"), "agent"));
  std::vector<ItemIndex> ranking;
  for (const auto& item : require(doc, "misreport")) {
    ranking.push_back(profile.item_index(require_string(item, "item identifier")));
  }
  PreferenceOrder misreport(std::move(ranking));
  ShareVector truthful = row_from_json(profile, require(doc, "truthful_row"));
  ShareVector manipulated = row_from_json(profile, require(doc, "manipulated_row"));
  return SpWitness{mechanism, std::move(profile), agent, std::move(misreport),
                   std::move(truthful), std::move(manipulated)};
}

OutcomeDocument outcome_from_json(const Instance& instance, const Json& doc) {
  const std::string kind = require_string(require(doc, "kind"), "kind");
  OutcomeDocument out{};
  if (kind == "deterministic") {
    out.kind = OutcomeDocument::Kind::kDeterministic;
    out.assignment = assignment_from_json(instance, require(doc, "assignment"));
    if (doc.contains("rounds")) {
      for (const auto& round : doc.at("rounds")) {
        out.rounds.push_back(assignment_from_json(instance, require(round, "assignment")));
        if (round.contains("remaining")) {
          std::vector<ItemIndex> members;
          for (const auto& item : round.at("remaining")) {
            members.push_back(instance.item_index(require_string(item, "item identifier")));
          }
          out.remaining.push_back(ItemSet::of(instance.m(), members));
        }
      }
    }
  } else if (kind == "random") {
    out.kind = OutcomeDocument::Kind::kRandom;
    out.matrix = matrix_from_json(instance, require(doc, "matrix"));
  } else if (kind == "lottery") {
    out.kind = OutcomeDocument::Kind::kLottery;
    out.lottery = lottery_from_json(instance, require(doc, "atoms"));
  } else {
    throw InputError("unknown outcome kind '" + kind + "'");
  }
  return out;
}

}  // namespace fairassign
