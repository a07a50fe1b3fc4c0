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

#include "fairassign/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "fairassign/culture.hpp"
#include "fairassign/decomposition.hpp"
#include "fairassign/errors.hpp"

namespace fairassign {
namespace {

constexpr std::size_t kMaxSide = 64;

struct CellTotals {
  std::uint64_t first_choice = 0;
  std::vector<std::uint64_t> rank_counts;
  std::uint64_t fcm_violations = 0;
  std::uint64_t pe_violations = 0;
  std::uint64_t ef1_violations = 0;
  double total_ms = 0;
  double max_ms = 0;

  void merge(const CellTotals& other) {
    first_choice += other.first_choice;
    for (std::size_t r = 0; r < rank_counts.size(); ++r) rank_counts[r] += other.rank_counts[r];
    fcm_violations += other.fcm_violations;
    pe_violations += other.pe_violations;
    ef1_violations += other.ef1_violations;
    total_ms += other.total_ms;
    max_ms = std::max(max_ms, other.max_ms);
  }
};

Assignment realize(Mechanism mechanism, const Instance& instance, std::uint64_t seed) {
  switch (mechanism) {
    case Mechanism::kGebm: return gebm_sample(instance, seed).total;
    case Mechanism::kGpbm: return sample_realization(gpbm_lottery(instance).decomposed, seed).total;
    case Mechanism::kRsdq: {
      std::vector<AgentIndex> priority(instance.n());
      std::iota(priority.begin(), priority.end(), AgentIndex{0});
      std::mt19937_64 engine(seed);
      for (std::size_t i = priority.size(); i-- > 1;) {
        std::swap(priority[i], priority[static_cast<std::size_t>(engine() % (i + 1))]);
      }
      return rsdq(instance, priority, instance.rounds());
    }
  }
  throw InputError("unknown mechanism");
}

bool audits(const ExperimentConfig& config, Property property) {
  return std::find(config.properties.begin(), config.properties.end(), property) !=
         config.properties.end();
}

CellTotals run_trials(const ExperimentConfig& config, std::size_t mechanism_index,
                      std::size_t cell_index, std::size_t first, std::size_t last) {
  const Mechanism mechanism = config.mechanisms[mechanism_index];
  const auto [n, m] = config.sizes[cell_index];
  CellTotals totals;
  totals.rank_counts.assign(m, 0);
  for (std::size_t trial = first; trial < last; ++trial) {
    const std::uint64_t instance_seed =
        mix_seed(config.seed ^ mix_seed((cell_index + 1) * 0x9E3779B97F4A7C15ULL + trial));
    const Instance instance = impartial_culture(n, m, instance_seed);
    const auto start = std::chrono::steady_clock::now();
    const Assignment assignment = realize(mechanism, instance, mix_seed(instance_seed + mechanism_index + 1));
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    totals.total_ms += ms;
    totals.max_ms = std::max(totals.max_ms, ms);

    totals.first_choice += fcm_count(instance, assignment);
    for (ItemIndex o = 0; o < m; ++o) ++totals.rank_counts[instance.rank(assignment.holder(o), o) - 1];
    if (audits(config, Property::kFcm) && !check_fcm(instance, assignment).verdict) {
      ++totals.fcm_violations;
    }
    if (audits(config, Property::kPe) && !check_pe_acyclic(instance, assignment).verdict) {
      ++totals.pe_violations;
    }
    if (audits(config, Property::kEf1) && !check_ef1(instance, assignment).verdict) {
      ++totals.ef1_violations;
    }
  }
  return totals;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t value) {
  value += 0x9E3779B97F4A7C15ULL;
  value = (value ^ (value >> 30)) * 0xBF58476D1CE4E5B9ULL;
  value = (value ^ (value >> 27)) * 0x94D049BB133111EBULL;
  return value ^ (value >> 31);
}

void validate(const ExperimentConfig& config) {
  if (config.mechanisms.empty()) throw InputError("experiment needs at least one mechanism");
  if (config.sizes.empty()) throw InputError("experiment needs at least one size");
  for (const auto& [n, m] : config.sizes) {
    if (n < 1 || m < 1) throw InputError("agents and items must be at least 1");
    if (n > kMaxSide || m > kMaxSide) throw InputError("experiment sizes are capped at 64");
  }
  if (config.trials < 1) throw InputError("trials must be at least 1");
  if (config.culture != "impartial") {
    throw InputError("unknown culture '" + config.culture + "' (only 'impartial' is built in)");
  }
  for (Property p : config.properties) {
    if (p != Property::kFcm && p != Property::kPe && p != Property::kEf1) {
      throw InputError("experiments audit only fcm, pe and ef1");
    }
  }
}

ExperimentConfig experiment_config_from_json(const Json& doc) {
  if (!doc.is_object()) throw InputError("experiment config must be a JSON object");
  ExperimentConfig config;
  try {
    if (doc.contains("mechanisms")) {
      config.mechanisms.clear();
      for (const auto& name : doc.at("mechanisms")) {
        config.mechanisms.push_back(parse_mechanism(name.get<std::string>()));
      }
    }
    if (doc.contains("sizes")) {
      config.sizes.clear();
      for (const auto& pair : doc.at("sizes")) {
        if (!pair.is_array() || pair.size() != 2) throw InputError("sizes entries are [agents, items]");
        config.sizes.emplace_back(pair[0].get<std::size_t>(), pair[1].get<std::size_t>());
      }
    } else if (doc.contains("agents") || doc.contains("items")) {
      if (!doc.contains("agents") || !doc.contains("items")) {
        throw InputError("a size grid needs both 'agents' and 'items'");
      }
      config.sizes.clear();
      for (const auto& n : doc.at("agents")) {
        for (const auto& m : doc.at("items")) {
          if (n.get<long long>() < 1 || m.get<long long>() < 1) {
            throw InputError("agents and items must be at least 1");
          }
          config.sizes.emplace_back(n.get<std::size_t>(), m.get<std::size_t>());
        }
      }
    }
    if (doc.contains("culture")) config.culture = doc.at("culture").get<std::string>();
    if (doc.contains("trials")) {
      if (doc.at("trials").get<long long>() < 1) throw InputError("trials must be at least 1");
      config.trials = doc.at("trials").get<std::size_t>();
    }
    if (doc.contains("seed")) config.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("properties")) {
      config.properties.clear();
      for (const auto& name : doc.at("properties")) {
        config.properties.push_back(parse_property(name.get<std::string>()));
      }
    }
    if (doc.contains("timing")) config.timing = doc.at("timing").get<bool>();
    if (doc.contains("threads")) config.threads = doc.at("threads").get<std::size_t>();
    if (doc.contains("out")) config.out = doc.at("out").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid experiment config: ") + e.what());
  }
  validate(config);
  return config;
}

std::string run_experiment(const ExperimentConfig& config) {
  validate(config);
  std::size_t workers = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
  workers = std::clamp<std::size_t>(workers, 1, config.trials);

  std::ostringstream csv;
  csv << kExperimentCsvHeader << "\n";
  for (std::size_t mi = 0; mi < config.mechanisms.size(); ++mi) {
    for (std::size_t ci = 0; ci < config.sizes.size(); ++ci) {
      const auto [n, m] = config.sizes[ci];
      std::vector<CellTotals> partial(workers);
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t first = config.trials * w / workers;
        const std::size_t last = config.trials * (w + 1) / workers;
        pool.emplace_back([&, w, first, last] { partial[w] = run_trials(config, mi, ci, first, last); });
      }
      for (auto& t : pool) t.join();
      CellTotals totals = partial.front();
      for (std::size_t w = 1; w < workers; ++w) totals.merge(partial[w]);

      Rational share(static_cast<long>(totals.first_choice), static_cast<long>(n * config.trials));
      share.canonicalize();
      std::string histogram;
      for (std::size_t r = 0; r < totals.rank_counts.size(); ++r) {
        if (r > 0) histogram += ';';
        histogram += std::to_string(totals.rank_counts[r]);
      }
      auto count_or_na = [&](Property p, std::uint64_t count) {
        return audits(config, p) ? std::to_string(count) : std::string("NA");
      };
      csv << mechanism_name(config.mechanisms[mi]) << ',' << n << ',' << m << ','
          << config.culture << ',' << config.trials << ',' << to_string(share) << ','
          << std::setprecision(6) << share.get_d() << ',' << histogram << ','
          << count_or_na(Property::kFcm, totals.fcm_violations) << ','
          << count_or_na(Property::kPe, totals.pe_violations) << ','
          << count_or_na(Property::kEf1, totals.ef1_violations) << ',';
      if (config.timing) {
        csv << std::fixed << std::setprecision(4) << totals.total_ms / config.trials << ','
            << totals.max_ms << std::defaultfloat;
      } else {
        csv << "NA,NA";
      }
      csv << "\n";
    }
  }
  return csv.str();
}

}  // namespace fairassign
